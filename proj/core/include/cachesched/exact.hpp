#ifndef CACHESCHED_EXACT_HPP
#define CACHESCHED_EXACT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cachesched/cost.hpp"
#include "cachesched/fixes.hpp"
#include "cachesched/instance.hpp"

namespace cachesched {

struct ExactResult {
    CachePlan plan;
    Cost cost = 0;
};

inline constexpr std::uint64_t kDefaultExactLimit = std::uint64_t{1} << 24;

// Globally optimal capacity-feasible plan by exhaustive search over the
// caching matrix, skipping capacity-infeasible slot rows. Ties break to the
// lexicographically smallest matrix (row-major by slot). Requires
// 2^(F*T) <= limit and throws SizeError otherwise.
ExactResult solve_exact(const Instance& instance,
                        std::uint64_t limit = kDefaultExactLimit);

struct SubproblemResult {
    std::vector<std::uint8_t> sequence;
    double objective = 0.0;
};

// Reference pricing: enumerates every caching sequence of one content that
// is consistent with the fixes and minimizes
//   column_cost(f, x) - sum_t l_f * pi_t * x_t.
// Ties break to fewer cached slots, then lexicographically. Requires T <= 24.
SubproblemResult solve_subproblem_bruteforce(int content0,
                                             const std::vector<double>& pi,
                                             const Instance& instance,
                                             const FixSet& fixes = {});

// Writes the full integer program in LP text format: minimized download plus
// update cost, per-slot capacity rows, update-linking rows, service rows, and
// binary declarations. Variables are named x_t_f, a_t_f, and y_u_r_t.
void export_lp(const Instance& instance, std::ostream& sink);
void export_lp_file(const Instance& instance, const std::string& path);

} // namespace cachesched

#endif
