#ifndef CACHESCHED_LP_HPP
#define CACHESCHED_LP_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "cachesched/errors.hpp"

namespace cachesched {

// Linear programs of the restricted-master shape:
//
//   min  sum_j cost_j w_j
//   s.t. sum_j entry(r, j) w_j <= capacity_rhs[r]   for each capacity row r
//        sum_{j in group g} w_j = 1                 for each group g
//        w >= 0
//
// Every column must name exactly one group; its coefficient there is 1.
struct LpColumn {
    double cost = 0.0;
    int group = -1;
    std::vector<std::pair<int, double>> entries; // (capacity row, coefficient)
};

struct LpProblem {
    std::vector<double> capacity_rhs;
    int num_groups = 0;
    std::vector<LpColumn> columns;
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> w;    // per column
    std::vector<double> pi;   // capacity duals, clamped to <= 0
    std::vector<double> beta; // group duals
};

// Two-phase primal revised simplex over the structure above. Columns may be
// appended between solves; the optimal basis stays feasible, so re-solves
// warm-start from it. Deterministic: identical call sequences give bitwise
// identical results.
class SimplexSolver {
public:
    SimplexSolver(std::vector<double> capacity_rhs, int num_groups);
    ~SimplexSolver();
    SimplexSolver(SimplexSolver&&) noexcept;
    SimplexSolver& operator=(SimplexSolver&&) noexcept;

    int add_column(LpColumn column);
    int num_columns() const;
    const LpColumn& column(int index) const;

    int num_capacity_rows() const;
    int num_groups() const;

    // Total simplex pivots across all solve() calls.
    std::int64_t pivots() const;

    LpSolution solve();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

LpSolution solve_lp(const LpProblem& problem);

} // namespace cachesched

#endif
