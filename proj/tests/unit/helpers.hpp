#ifndef CACHESCHED_TESTS_HELPERS_HPP
#define CACHESCHED_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "cachesched/instance.hpp"
#include "cachesched/rng.hpp"

namespace cachesched::testing {

// Two slots, two contents, hand-checkable by enumerating all 16 plans.
// Optimal cost 12, reached only by caching content 1 in slot 2 plus
// optionally content 2 in slot 1.
inline Instance make_tiny() {
    Instance inst;
    inst.num_slots = 2;
    inst.num_contents = 2;
    inst.num_users = 2;
    inst.sizes = {2, 3};
    inst.capacity = 3;
    inst.cost_server = 2;
    inst.cost_cache = 1;
    inst.requests = {
        {1, 1, 1, 1, 2},
        {2, 1, 2, 1, 1},
        {2, 2, 1, 2, 2},
    };
    inst.validate();
    return inst;
}

// Random valid instance small enough for the exhaustive solver. The caller
// bounds F * T; capacity spans the whole range from useless to ample.
inline Instance random_small(Rng& rng, int max_ft = 12) {
    Instance inst;
    inst.num_slots = uniform_int(rng, 1, 4);
    int max_f = std::max(1, max_ft / inst.num_slots);
    inst.num_contents = uniform_int(rng, 1, max_f);
    inst.num_users = uniform_int(rng, 1, 3);
    inst.sizes.resize(static_cast<std::size_t>(inst.num_contents));
    for (auto& l : inst.sizes) l = uniform_int(rng, 1, 4);
    inst.capacity = uniform_int(rng, 0, static_cast<int>(inst.total_size()));
    inst.cost_server = uniform_int(rng, 2, 8);
    inst.cost_cache = uniform_int(rng, 0, static_cast<int>(inst.cost_server) - 1);
    int per_user = uniform_int(rng, 0, 3);
    for (int u = 1; u <= inst.num_users; ++u) {
        for (int i = 1; i <= per_user; ++i) {
            Request r;
            r.user = u;
            r.index = i;
            r.content = uniform_int(rng, 1, inst.num_contents);
            r.origin = uniform_int(rng, 1, inst.num_slots);
            r.deadline = uniform_int(rng, r.origin, inst.num_slots);
            inst.requests.push_back(r);
        }
    }
    inst.validate();
    return inst;
}

// Message of the E thrown by fn, or a marker when nothing / something else
// is thrown. Lets tests check substrings without depending on exact text.
template <typename E, typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const E& e) {
        return e.what();
    } catch (...) {
        return "<different exception type>";
    }
    return "<no exception>";
}

inline bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

} // namespace cachesched::testing

#endif
