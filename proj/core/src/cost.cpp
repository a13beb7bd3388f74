#include "cachesched/cost.hpp"

#include <string>

namespace cachesched {

namespace {

void check_shape(std::size_t got, const Instance& inst, const char* what) {
    const std::size_t want =
        static_cast<std::size_t>(inst.num_slots) * static_cast<std::size_t>(inst.num_contents);
    if (got != want)
        throw ParameterError(std::string(what) + ": expected " + std::to_string(want) +
                             " entries, got " + std::to_string(got));
}

} // namespace

CachePlan CachePlan::empty(const Instance& instance) {
    CachePlan plan;
    plan.num_slots = instance.num_slots;
    plan.num_contents = instance.num_contents;
    plan.x.assign(static_cast<std::size_t>(instance.num_slots) * instance.num_contents, 0);
    plan.a = plan.x;
    return plan;
}

CachePlan CachePlan::from_x(std::vector<std::uint8_t> x, const Instance& instance) {
    CachePlan plan;
    plan.num_slots = instance.num_slots;
    plan.num_contents = instance.num_contents;
    plan.a = derive_updates(x, instance);
    plan.x = std::move(x);
    return plan;
}

std::vector<std::uint8_t> derive_updates(const std::vector<std::uint8_t>& x,
                                         const Instance& instance) {
    check_shape(x.size(), instance, "derive_updates");
    const int T = instance.num_slots, F = instance.num_contents;
    std::vector<std::uint8_t> a(x.size(), 0);
    for (int f = 0; f < F; ++f) {
        std::uint8_t prev = 0;
        for (int t = 0; t < T; ++t) {
            const std::size_t i = static_cast<std::size_t>(t) * F + f;
            a[i] = static_cast<std::uint8_t>(x[i] && !prev);
            prev = x[i];
        }
    }
    return a;
}

DownloadAssignment assign_downloads(const CachePlan& plan, const Instance& instance) {
    check_shape(plan.x.size(), instance, "assign_downloads");
    DownloadAssignment out;
    out.cache_slot.reserve(instance.requests.size());
    for (const Request& r : instance.requests) {
        std::optional<int> slot;
        for (int t = r.origin; t <= r.deadline; ++t) {
            if (plan.cached(t - 1, r.content - 1)) { slot = t; break; }
        }
        out.cache_slot.push_back(slot);
    }
    return out;
}

Cost download_cost(const CachePlan& plan, const Instance& instance) {
    const DownloadAssignment assignment = assign_downloads(plan, instance);
    Cost total = 0;
    for (std::size_t i = 0; i < instance.requests.size(); ++i) {
        const Request& r = instance.requests[i];
        const Cost l = instance.size_of(r.content - 1);
        total += l * (assignment.cache_slot[i] ? instance.cost_cache : instance.cost_server);
    }
    return total;
}

Cost update_cost(const CachePlan& plan, const Instance& instance) {
    check_shape(plan.a.size(), instance, "update_cost");
    const Cost delta = instance.cost_server - instance.cost_cache;
    Cost total = 0;
    for (int t = 0; t < instance.num_slots; ++t)
        for (int f = 0; f < instance.num_contents; ++f)
            if (plan.added(t, f)) total += instance.size_of(f) * delta;
    return total;
}

Cost total_cost(const CachePlan& plan, const Instance& instance) {
    return download_cost(plan, instance) + update_cost(plan, instance);
}

CapacityCheck check_capacity(const CachePlan& plan, const Instance& instance) {
    check_shape(plan.x.size(), instance, "check_capacity");
    for (int t = 0; t < instance.num_slots; ++t) {
        Cost load = 0;
        for (int f = 0; f < instance.num_contents; ++f)
            if (plan.cached(t, f)) load += instance.size_of(f);
        if (load > instance.capacity) return {false, t + 1, load};
    }
    return {};
}

Cost column_cost(int content0, const std::vector<std::uint8_t>& sequence,
                 const Instance& instance) {
    if (static_cast<int>(sequence.size()) != instance.num_slots)
        throw ParameterError("column_cost: sequence length must equal the horizon");
    const Cost l = instance.size_of(content0);
    const Cost delta = instance.cost_server - instance.cost_cache;

    Cost total = 0;
    std::uint8_t prev = 0;
    for (const std::uint8_t cached : sequence) {
        if (cached && !prev) total += l * delta;
        prev = cached;
    }
    for (const Request& r : instance.requests) {
        if (r.content - 1 != content0) continue;
        bool served = false;
        for (int t = r.origin; t <= r.deadline; ++t) {
            if (sequence[static_cast<std::size_t>(t - 1)]) { served = true; break; }
        }
        total += l * (served ? instance.cost_cache : instance.cost_server);
    }
    return total;
}

} // namespace cachesched
