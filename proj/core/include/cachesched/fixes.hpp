#ifndef CACHESCHED_FIXES_HPP
#define CACHESCHED_FIXES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cachesched/errors.hpp"

namespace cachesched {

// Partial assignment of the caching variables accumulated by rounding.
// Fixes are monotone: once a (slot, content) pair is set it never changes.
class FixSet {
public:
    FixSet() = default;
    FixSet(int num_slots, int num_contents)
        : num_slots_(num_slots), num_contents_(num_contents),
          state_(static_cast<std::size_t>(num_slots) * num_contents, kUnset) {}

    int num_slots() const { return num_slots_; }
    int num_contents() const { return num_contents_; }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool is_fixed(int slot0, int content0) const { return at(slot0, content0) != kUnset; }
    // Valid only when is_fixed.
    bool value(int slot0, int content0) const { return at(slot0, content0) == 1; }

    // Idempotent for an equal re-fix; conflicting re-fixes throw.
    void set(int slot0, int content0, bool val) {
        std::int8_t& s = state_[index(slot0, content0)];
        const std::int8_t v = val ? 1 : 0;
        if (s == v) return;
        if (s != kUnset)
            throw ParameterError("fix conflicts with an earlier decision at slot " +
                                 std::to_string(slot0 + 1) + ", content " +
                                 std::to_string(content0 + 1));
        s = v;
        ++count_;
    }

    bool compatible(int content0, const std::vector<std::uint8_t>& sequence) const {
        for (int t = 0; t < num_slots_; ++t) {
            const std::int8_t s = at(t, content0);
            if (s != kUnset && s != static_cast<std::int8_t>(sequence[static_cast<std::size_t>(t)]))
                return false;
        }
        return true;
    }

private:
    static constexpr std::int8_t kUnset = -1;

    std::size_t index(int slot0, int content0) const {
        return static_cast<std::size_t>(slot0) * num_contents_ + content0;
    }
    std::int8_t at(int slot0, int content0) const { return state_[index(slot0, content0)]; }

    int num_slots_ = 0;
    int num_contents_ = 0;
    std::vector<std::int8_t> state_;
    int count_ = 0;
};

} // namespace cachesched

#endif
