#ifndef CACHESCHED_INSTANCE_HPP
#define CACHESCHED_INSTANCE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cachesched/errors.hpp"

namespace cachesched {

using Cost = std::int64_t;

// One content request. Fields keep the 1-based ids of the document format;
// everything else in the library (matrices, content/slot indices) is 0-based.
struct Request {
    int user = 0;     // 1..U
    int index = 0;    // request number within the user, 1-based
    int content = 0;  // 1..F
    int origin = 0;   // slot the request is made, 1..T
    int deadline = 0; // latest slot the content may be delivered, origin..T

    bool operator==(const Request&) const = default;
};

// A full problem instance: horizon, catalog, cache, costs, and requests.
// Sizes and cost coefficients are integers so plan costs compare exactly.
struct Instance {
    int num_slots = 0;    // T
    int num_contents = 0; // F
    int num_users = 0;    // U
    std::vector<Cost> sizes; // l_f, one per content, > 0
    Cost capacity = 0;       // S
    Cost cost_server = 0;    // c_s per data unit
    Cost cost_cache = 0;     // c_b per data unit, c_s > c_b >= 0
    std::vector<Request> requests;

    Cost size_of(int content0) const { return sizes[static_cast<std::size_t>(content0)]; }
    Cost total_size() const;
    // Throws ParameterError on the first violated invariant.
    void validate() const;

    bool operator==(const Instance&) const = default;
};

// Parameters of the stochastic instance generator.
struct GenParams {
    int num_slots = 24;    // T
    int num_users = 600;   // U
    int num_contents = 200; // F
    std::pair<Cost, Cost> size_range{1, 10};
    double rho = 0.5;   // cache capacity as a fraction of the total content size
    double gamma = 0.56; // ZipF shape
    double alpha = 1.0;  // deadline tightness
    std::pair<int, int> requests_per_user_range{1, 10};
    Cost cost_server = 10;
    Cost cost_cache = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

// Draws an instance: uniform integer sizes, S = round(rho * total size),
// per-user request counts uniform in range, content by ZipF(gamma) applied
// to a per-slot random permutation of ranks, origin uniform in 1..T, and
// deadline = min(T, origin + round(alpha * (T - origin) * U01)).
// Deterministic for a fixed seed.
Instance generate_instance(const GenParams& params);

// Instance family used by the number-partitioning oracle tests:
// F = N contents of size n_f, S = floor(sum/2), T = 1, two requests per
// content (users 2f-1 and 2f) all with origin = deadline = 1, c_s = 2, c_b = 1.
Instance build_partition_instance(const std::vector<Cost>& integers);

// Decodes the partitioning answer from the optimal cost of the instance
// built above: yes iff the cache gain reaches half the total size.
bool partition_answer_from_cost(const std::vector<Cost>& integers, Cost optimal_cost);

} // namespace cachesched

#endif
