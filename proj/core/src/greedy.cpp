#include "cachesched/greedy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cachesched/rng.hpp"

namespace cachesched {

std::vector<std::vector<int>> popularity(const Instance& instance) {
    instance.validate();
    std::vector<std::vector<int>> p(static_cast<std::size_t>(instance.num_slots),
                                    std::vector<int>(static_cast<std::size_t>(instance.num_contents), 0));
    for (const Request& r : instance.requests)
        ++p[static_cast<std::size_t>(r.deadline) - 1][static_cast<std::size_t>(r.content) - 1];
    return p;
}

namespace {

GreedyResult greedy_run(const Instance& inst,
                        const std::function<std::vector<int>(int, const std::vector<int>&)>& order_slot) {
    const int T = inst.num_slots;
    const int F = inst.num_contents;
    const std::vector<std::vector<int>> pop = popularity(inst);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(T) * F, 0);
    for (int t = 0; t < T; ++t) {
        Cost room = inst.capacity;
        const std::vector<int>& p = pop[static_cast<std::size_t>(t)];
        const std::vector<int> order = order_slot(t, p);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const int f = order[pos];
            const Cost l = inst.size_of(f);
            if (l > room) continue;
            const bool kept = t > 0 && x[static_cast<std::size_t>(t - 1) * F + f] != 0;
            if (kept) {
                x[static_cast<std::size_t>(t) * F + f] = 1;
                room -= l;
                continue;
            }
            // Popularity that admitting f would crowd out: evict the least
            // popular later-ordered contents cached last slot until their
            // total size exceeds l.
            std::vector<int> psi;
            if (t > 0)
                for (std::size_t j = pos + 1; j < order.size(); ++j)
                    if (x[static_cast<std::size_t>(t - 1) * F + order[j]] != 0)
                        psi.push_back(order[j]);
            long long lost = 0;
            Cost freed = 0;
            while (freed <= l && !psi.empty()) {
                std::size_t pick = 0;
                for (std::size_t j = 1; j < psi.size(); ++j) {
                    const int a = psi[j], b = psi[pick];
                    if (p[static_cast<std::size_t>(a)] < p[static_cast<std::size_t>(b)] ||
                        (p[static_cast<std::size_t>(a)] == p[static_cast<std::size_t>(b)] && a < b))
                        pick = j;
                }
                lost += p[static_cast<std::size_t>(psi[pick])];
                freed += inst.size_of(psi[pick]);
                psi.erase(psi.begin() + static_cast<std::ptrdiff_t>(pick));
            }
            const int mine = p[static_cast<std::size_t>(f)];
            if (mine >= lost && !(mine == 0 && lost == 0)) {
                x[static_cast<std::size_t>(t) * F + f] = 1;
                room -= l;
            }
        }
    }
    GreedyResult res;
    res.plan = CachePlan::from_x(std::move(x), inst);
    const CapacityCheck cap = check_capacity(res.plan, inst);
    if (!cap)
        throw SolverError("greedy: plan overflows slot " + std::to_string(cap.slot));
    res.cost = total_cost(res.plan, inst);
    return res;
}

} // namespace

GreedyResult run_pbc(const Instance& instance) {
    return greedy_run(instance, [](int, const std::vector<int>& p) {
        std::vector<int> order(p.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&p](int a, int b) {
            return p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)];
        });
        return order;
    });
}

GreedyResult run_rbc(const Instance& instance, std::uint64_t seed) {
    Rng rng(seed);
    return greedy_run(instance, [&rng](int, const std::vector<int>& p) {
        std::vector<double> weights(p.size());
        for (std::size_t f = 0; f < p.size(); ++f)
            weights[f] = static_cast<double>(p[f]) + 1e-9;
        return weighted_permutation(rng, weights);
    });
}

} // namespace cachesched
