#ifndef CACHESCHED_GREEDY_HPP
#define CACHESCHED_GREEDY_HPP

#include <cstdint>
#include <vector>

#include "cachesched/cost.hpp"
#include "cachesched/instance.hpp"

namespace cachesched {

// P[t][f]: number of requests for content f whose deadline is slot t+1.
std::vector<std::vector<int>> popularity(const Instance& instance);

struct GreedyResult {
    CachePlan plan;
    Cost cost = 0;
};

// Slot-by-slot greedy. Contents are visited in deadline-popularity order
// (descending, ties to the smaller id). A content already cached is kept when
// it fits; a newcomer is admitted when its popularity is at least the
// popularity of the least-popular later-ordered cached contents it would
// crowd out, except that a zero-demand newcomer is never admitted.
GreedyResult run_pbc(const Instance& instance);

// Same admission rule with each slot's order drawn randomly without
// replacement, weighted by popularity; deterministic per seed.
GreedyResult run_rbc(const Instance& instance, std::uint64_t seed);

} // namespace cachesched

#endif
