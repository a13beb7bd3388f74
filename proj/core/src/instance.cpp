#include "cachesched/instance.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cachesched/rng.hpp"

namespace cachesched {

std::vector<int> weighted_permutation(Rng& rng, const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    std::vector<int> order;
    order.reserve(n);
    std::vector<bool> taken(n, false);
    double remaining = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (std::size_t step = 0; step < n; ++step) {
        const double target = uniform_real01(rng) * remaining;
        double acc = 0.0;
        int picked = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            acc += weights[i];
            if (target < acc) { picked = static_cast<int>(i); break; }
        }
        if (picked < 0) { // target == remaining up to roundoff: take the last free slot
            for (std::size_t i = n; i-- > 0;) {
                if (!taken[i]) { picked = static_cast<int>(i); break; }
            }
        }
        taken[static_cast<std::size_t>(picked)] = true;
        remaining -= weights[static_cast<std::size_t>(picked)];
        order.push_back(picked);
    }
    return order;
}

Cost Instance::total_size() const {
    return std::accumulate(sizes.begin(), sizes.end(), Cost{0});
}

void Instance::validate() const {
    if (num_slots < 1) throw ParameterError("instance: T must be >= 1");
    if (num_contents < 1) throw ParameterError("instance: F must be >= 1");
    if (num_users < 0) throw ParameterError("instance: U must be >= 0");
    if (static_cast<int>(sizes.size()) != num_contents)
        throw ParameterError("instance: sizes must have one entry per content");
    for (std::size_t f = 0; f < sizes.size(); ++f) {
        if (sizes[f] <= 0)
            throw ParameterError("instance: sizes[" + std::to_string(f + 1) + "] must be > 0");
    }
    if (capacity < 0) throw ParameterError("instance: capacity must be >= 0");
    if (cost_cache < 0) throw ParameterError("instance: cost_cache must be >= 0");
    if (cost_server <= cost_cache)
        throw ParameterError("instance: cost_server must exceed cost_cache");
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const Request& r = requests[i];
        const std::string where = "instance: requests[" + std::to_string(i + 1) + "]";
        if (r.user < 1 || r.user > num_users)
            throw ParameterError(where + ".user out of range");
        if (r.index < 1) throw ParameterError(where + ".index must be >= 1");
        if (r.content < 1 || r.content > num_contents)
            throw ParameterError(where + ".content out of range");
        if (r.origin < 1) throw ParameterError(where + ".origin must be >= 1");
        if (r.deadline < r.origin)
            throw ParameterError(where + ".deadline precedes origin");
        if (r.deadline > num_slots)
            throw ParameterError(where + ".deadline exceeds horizon");
    }
}

void GenParams::validate() const {
    if (num_slots < 1) throw ParameterError("gen: T must be >= 1");
    if (num_users < 1) throw ParameterError("gen: U must be >= 1");
    if (num_contents < 1) throw ParameterError("gen: F must be >= 1");
    if (size_range.first < 1 || size_range.second < size_range.first)
        throw ParameterError("gen: size_range must be a non-empty positive range");
    if (rho < 0.0 || rho > 1.0) throw ParameterError("gen: rho must be in [0, 1]");
    if (gamma < 0.0) throw ParameterError("gen: gamma must be >= 0");
    if (alpha < 0.0 || alpha > 1.0) throw ParameterError("gen: alpha must be in [0, 1]");
    if (requests_per_user_range.first < 0 ||
        requests_per_user_range.second < requests_per_user_range.first)
        throw ParameterError("gen: requests_per_user_range must be non-empty");
    if (cost_cache < 0) throw ParameterError("gen: cost_cache must be >= 0");
    if (cost_server <= cost_cache)
        throw ParameterError("gen: cost_server must exceed cost_cache");
}

Instance generate_instance(const GenParams& params) {
    params.validate();
    Rng rng(params.seed);

    Instance inst;
    inst.num_slots = params.num_slots;
    inst.num_contents = params.num_contents;
    inst.num_users = params.num_users;
    inst.cost_server = params.cost_server;
    inst.cost_cache = params.cost_cache;

    inst.sizes.resize(static_cast<std::size_t>(params.num_contents));
    for (auto& l : inst.sizes)
        l = uniform_int(rng, params.size_range.first, params.size_range.second);
    inst.capacity = static_cast<Cost>(
        std::llround(params.rho * static_cast<double>(inst.total_size())));

    // Popularity varies over time: each slot gets its own permutation of the
    // content ranks, and the ZipF law acts on the permuted ranks of the
    // request's origin slot. perm[t][k-1] is the content holding rank k.
    std::vector<std::vector<int>> rank_to_content(
        static_cast<std::size_t>(params.num_slots));
    for (auto& perm : rank_to_content) {
        perm.resize(static_cast<std::size_t>(params.num_contents));
        for (int f = 0; f < params.num_contents; ++f)
            perm[static_cast<std::size_t>(f)] = f + 1;
        shuffle_in_place(rng, perm);
    }

    const ZipfSampler zipf(params.num_contents, params.gamma);
    const int T = params.num_slots;
    for (int u = 1; u <= params.num_users; ++u) {
        const int count = static_cast<int>(uniform_int(
            rng, params.requests_per_user_range.first, params.requests_per_user_range.second));
        for (int r = 1; r <= count; ++r) {
            Request req;
            req.user = u;
            req.index = r;
            req.origin = static_cast<int>(uniform_int(rng, 1, T));
            const int rank = zipf.sample(rng);
            req.content =
                rank_to_content[static_cast<std::size_t>(req.origin - 1)]
                               [static_cast<std::size_t>(rank - 1)];
            const double slack_u01 = uniform_real01(rng);
            const long long slack =
                std::llround(params.alpha * static_cast<double>(T - req.origin) * slack_u01);
            req.deadline = static_cast<int>(std::min<long long>(T, req.origin + slack));
            inst.requests.push_back(req);
        }
    }
    inst.validate();
    return inst;
}

Instance build_partition_instance(const std::vector<Cost>& integers) {
    if (integers.empty())
        throw ParameterError("partition: integer list must be non-empty");
    for (std::size_t i = 0; i < integers.size(); ++i) {
        if (integers[i] <= 0)
            throw ParameterError("partition: integers[" + std::to_string(i + 1) +
                                 "] must be positive");
    }
    const int n = static_cast<int>(integers.size());
    Instance inst;
    inst.num_slots = 1;
    inst.num_contents = n;
    inst.num_users = 2 * n;
    inst.sizes = integers;
    inst.capacity = inst.total_size() / 2; // odd totals floor, keeping the answer "no"
    inst.cost_server = 2;
    inst.cost_cache = 1;
    for (int f = 1; f <= n; ++f) {
        for (int which = 0; which < 2; ++which) {
            Request req;
            req.user = 2 * (f - 1) + which + 1; // users 2f-1 and 2f request content f
            req.index = 1;
            req.content = f;
            req.origin = 1;
            req.deadline = 1;
            inst.requests.push_back(req);
        }
    }
    inst.validate();
    return inst;
}

bool partition_answer_from_cost(const std::vector<Cost>& integers, Cost optimal_cost) {
    const Cost total = std::accumulate(integers.begin(), integers.end(), Cost{0});
    // All-server cost is 2 * total * c_s = 4 * total; caching content f gains l_f.
    const Cost gain = 4 * total - optimal_cost;
    return 2 * gain == total;
}

} // namespace cachesched
