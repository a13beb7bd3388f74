#ifndef CACHESCHED_COST_HPP
#define CACHESCHED_COST_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cachesched/instance.hpp"

namespace cachesched {

// Binary caching matrix x over (slot, content), row-major by slot, plus the
// derived update matrix a: a_tf = 1 iff the content enters the cache at t
// (slot 0 is treated as an empty cache).
struct CachePlan {
    int num_slots = 0;
    int num_contents = 0;
    std::vector<std::uint8_t> x; // num_slots * num_contents entries
    std::vector<std::uint8_t> a; // same shape, derived

    static CachePlan empty(const Instance& instance);
    // Builds the plan from x and derives a. Throws on shape mismatch.
    static CachePlan from_x(std::vector<std::uint8_t> x, const Instance& instance);

    bool cached(int slot0, int content0) const {
        return x[static_cast<std::size_t>(slot0) * num_contents + content0] != 0;
    }
    bool added(int slot0, int content0) const {
        return a[static_cast<std::size_t>(slot0) * num_contents + content0] != 0;
    }
};

// Recomputes the update matrix for a caching matrix of shape T x F.
std::vector<std::uint8_t> derive_updates(const std::vector<std::uint8_t>& x,
                                         const Instance& instance);

// Where each request is served: the slot it downloads from the cache, or
// nullopt for the server. Aligned with instance.requests.
struct DownloadAssignment {
    std::vector<std::optional<int>> cache_slot; // 1-based slot when served from cache
};

// Serves every request at the earliest slot in [origin, deadline] where its
// content is cached, falling back to the server.
DownloadAssignment assign_downloads(const CachePlan& plan, const Instance& instance);

Cost download_cost(const CachePlan& plan, const Instance& instance);
Cost update_cost(const CachePlan& plan, const Instance& instance);
Cost total_cost(const CachePlan& plan, const Instance& instance);

// Capacity check result: feasible, or the first violating slot with its load.
struct CapacityCheck {
    bool feasible = true;
    int slot = 0; // 1-based, meaningful when infeasible
    Cost load = 0;

    explicit operator bool() const { return feasible; }
};

CapacityCheck check_capacity(const CachePlan& plan, const Instance& instance);

// Cost of one content's caching sequence over the horizon: downloads of the
// requests for that content (earliest-slot service) plus its update cost.
// Summing over contents reproduces total_cost of the assembled plan.
Cost column_cost(int content0, const std::vector<std::uint8_t>& sequence,
                 const Instance& instance);

} // namespace cachesched

#endif
