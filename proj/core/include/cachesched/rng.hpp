#ifndef CACHESCHED_RNG_HPP
#define CACHESCHED_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cachesched/errors.hpp"

namespace cachesched {

// Deterministic sampling helpers. The std:: distributions are
// implementation-defined, so every draw that must reproduce across
// platforms goes through these instead.

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ParameterError("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle_in_place(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j =
            static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

// Draws ranks 1..n with P(k) = k^-gamma / sum_i i^-gamma.
class ZipfSampler {
public:
    ZipfSampler(int n, double gamma) {
        if (n < 1) throw ParameterError("ZipfSampler: n must be positive");
        if (gamma < 0.0) throw ParameterError("ZipfSampler: gamma must be >= 0");
        cumulative_.resize(static_cast<std::size_t>(n));
        double total = 0.0;
        for (int k = 1; k <= n; ++k) {
            total += std::pow(static_cast<double>(k), -gamma);
            cumulative_[static_cast<std::size_t>(k - 1)] = total;
        }
        for (double& c : cumulative_) c /= total;
        cumulative_.back() = 1.0;
    }

    // Rank in 1..n.
    int sample(Rng& rng) const {
        const double u = uniform_real01(rng);
        std::size_t lo = 0, hi = cumulative_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cumulative_[mid]) hi = mid; else lo = mid + 1;
        }
        return static_cast<int>(lo) + 1;
    }

    double probability(int rank) const {
        const std::size_t i = static_cast<std::size_t>(rank - 1);
        return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
    }

private:
    std::vector<double> cumulative_;
};

// Random permutation of the remaining items, each next pick drawn with
// probability proportional to its weight. Ties in cumulative walk resolve
// to the lowest index. Weights must be positive.
std::vector<int> weighted_permutation(Rng& rng, const std::vector<double>& weights);

} // namespace cachesched

#endif
