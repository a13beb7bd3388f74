#include "cachesched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cachesched {

namespace {

constexpr double kEnterTol = 1e-9;   // reduced cost threshold for entering
constexpr double kPivotTol = 1e-9;   // minimum usable pivot magnitude
constexpr double kFeasTol = 1e-7;
constexpr double kDualityTol = 1e-6;
constexpr double kDropTol = 1e-11;
constexpr int kRefactorEvery = 128;
constexpr int kBlandAfter = 64;

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

struct SimplexSolver::Impl {
    // Row layout: capacity rows [0, mcap), one convexity row per group after.
    // Variable ids: [0, m) are the unit columns e_id (slack on capacity rows,
    // artificial on convexity rows); id m + j is structural column j.
    int mcap = 0;
    int mconv = 0;
    int m = 0;
    std::vector<double> rhs; // size m: capacity limits then ones

    std::vector<LpColumn> cols;

    bool started = false;
    bool artificials_active = false;
    std::vector<int> basis;    // basis position -> variable id
    std::vector<int> var_pos;  // variable id -> basis position or -1
    std::vector<double> binv;  // column-major m*m
    std::vector<double> xb;    // basic variable values
    std::int64_t total_pivots = 0;
    int pivots_since_refactor = 0;

    std::vector<double> y, d, acol;
    std::vector<double> ge_scratch;

    bool is_artificial(int id) const { return id >= mcap && id < m; }
    bool is_structural(int id) const { return id >= m; }

    double cost_of(int id, int phase) const {
        if (is_structural(id)) return phase == 1 ? 0.0 : cols[static_cast<std::size_t>(id - m)].cost;
        if (is_artificial(id)) return phase == 1 ? 1.0 : 0.0;
        return 0.0;
    }

    void start() {
        basis.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            basis[static_cast<std::size_t>(i)] = i;
            var_pos[static_cast<std::size_t>(i)] = i;
        }
        binv.assign(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) binv[static_cast<std::size_t>(i) * m + i] = 1.0;
        xb.assign(rhs.begin(), rhs.end());
        artificials_active = mconv > 0;
        started = true;
    }

    // d = B^{-1} a_id
    void ftran(int id) {
        d.assign(static_cast<std::size_t>(m), 0.0);
        if (!is_structural(id)) {
            const double* col = &binv[static_cast<std::size_t>(id) * m];
            std::copy(col, col + m, d.begin());
        } else {
            const LpColumn& c = cols[static_cast<std::size_t>(id - m)];
            for (const auto& [row, v] : c.entries) {
                const double* col = &binv[static_cast<std::size_t>(row) * m];
                for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] += v * col[i];
            }
            const int grow = mcap + c.group;
            const double* col = &binv[static_cast<std::size_t>(grow) * m];
            for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] += col[i];
        }
        for (int i = 0; i < m; ++i)
            if (std::abs(d[static_cast<std::size_t>(i)]) < kDropTol) d[static_cast<std::size_t>(i)] = 0.0;
    }

    void compute_duals(int phase) {
        y.assign(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) {
            const double cb = cost_of(basis[static_cast<std::size_t>(i)], phase);
            if (cb == 0.0) continue;
            for (int c = 0; c < m; ++c)
                y[static_cast<std::size_t>(c)] += cb * binv[static_cast<std::size_t>(c) * m + i];
        }
    }

    double reduced_cost(int id, int phase) const {
        double rc = cost_of(id, phase);
        if (is_structural(id)) {
            const LpColumn& c = cols[static_cast<std::size_t>(id - m)];
            for (const auto& [row, v] : c.entries) rc -= v * y[static_cast<std::size_t>(row)];
            rc -= y[static_cast<std::size_t>(mcap + c.group)];
        } else {
            rc -= y[static_cast<std::size_t>(id)];
        }
        return rc;
    }

    // Most negative reduced cost, ties to the lowest id; Bland mode takes the
    // first qualifying id. Artificials never re-enter.
    int price(int phase, bool bland) const {
        int best = -1;
        double best_rc = -kEnterTol;
        for (int id = 0; id < m + static_cast<int>(cols.size()); ++id) {
            if (is_artificial(id)) continue;
            if (var_pos[static_cast<std::size_t>(id)] >= 0) continue;
            const double rc = reduced_cost(id, phase);
            if (rc < best_rc) {
                if (bland) return id;
                best_rc = rc;
                best = id;
            }
        }
        return best;
    }

    int ratio_test(bool bland, double& theta_out) const {
        double theta = kInf;
        for (int i = 0; i < m; ++i) {
            const double di = d[static_cast<std::size_t>(i)];
            if (di > kPivotTol) {
                const double r = std::max(xb[static_cast<std::size_t>(i)], 0.0) / di;
                if (r < theta) theta = r;
            }
        }
        if (theta == kInf) return -1;
        const double cut = theta + kDropTol * (1.0 + theta);
        int best = -1;
        bool best_art = false;
        double best_d = 0.0;
        for (int i = 0; i < m; ++i) {
            const double di = d[static_cast<std::size_t>(i)];
            if (di <= kPivotTol) continue;
            const double r = std::max(xb[static_cast<std::size_t>(i)], 0.0) / di;
            if (r > cut) continue;
            if (bland) {
                if (best < 0 || basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(best)])
                    best = i;
                continue;
            }
            const bool art = is_artificial(basis[static_cast<std::size_t>(i)]);
            const bool better = best < 0 || (art && !best_art) ||
                                (art == best_art && di > best_d);
            if (better) {
                best = i;
                best_art = art;
                best_d = di;
            }
        }
        theta_out = theta;
        return best;
    }

    // Basis change with a product-form inverse update.
    void pivot(int enter, int p, double theta) {
        const double dp = d[static_cast<std::size_t>(p)];
        for (int i = 0; i < m; ++i) {
            double v = xb[static_cast<std::size_t>(i)] - theta * d[static_cast<std::size_t>(i)];
            if (v < 0.0 && v > -kDropTol) v = 0.0;
            xb[static_cast<std::size_t>(i)] = v;
        }
        xb[static_cast<std::size_t>(p)] = theta;
        for (int c = 0; c < m; ++c) {
            double* col = &binv[static_cast<std::size_t>(c) * m];
            const double bp = col[p];
            if (bp == 0.0) continue;
            const double t = bp / dp;
            for (int i = 0; i < m; ++i) col[i] -= d[static_cast<std::size_t>(i)] * t;
            col[p] = t;
        }
        const int leave = basis[static_cast<std::size_t>(p)];
        var_pos[static_cast<std::size_t>(leave)] = -1;
        basis[static_cast<std::size_t>(p)] = enter;
        var_pos[static_cast<std::size_t>(enter)] = p;
        ++total_pivots;
        ++pivots_since_refactor;
    }

    // Rebuilds B^{-1} by Gauss-Jordan elimination and refreshes xb.
    void refactor() {
        const std::size_t mm = static_cast<std::size_t>(m);
        std::vector<double>& a = ge_scratch;
        a.assign(mm * mm, 0.0);
        for (int i = 0; i < m; ++i) {
            const int id = basis[static_cast<std::size_t>(i)];
            if (!is_structural(id)) {
                a[static_cast<std::size_t>(i) * m + id] = 1.0;
            } else {
                const LpColumn& c = cols[static_cast<std::size_t>(id - m)];
                for (const auto& [row, v] : c.entries) a[static_cast<std::size_t>(i) * m + row] = v;
                a[static_cast<std::size_t>(i) * m + (mcap + c.group)] = 1.0;
            }
        }
        binv.assign(mm * mm, 0.0);
        for (int i = 0; i < m; ++i) binv[static_cast<std::size_t>(i) * m + i] = 1.0;
        // a is column-major: element (r, c) = a[c*m + r].
        for (int k = 0; k < m; ++k) {
            int pr = -1;
            double pv = 0.0;
            for (int r = k; r < m; ++r) {
                const double v = std::abs(a[static_cast<std::size_t>(k) * m + r]);
                if (v > pv) {
                    pv = v;
                    pr = r;
                }
            }
            if (pr < 0 || pv < 1e-12)
                throw SolverError("simplex: singular basis during refactorization");
            if (pr != k) {
                for (int c = 0; c < m; ++c) {
                    std::swap(a[static_cast<std::size_t>(c) * m + k], a[static_cast<std::size_t>(c) * m + pr]);
                    std::swap(binv[static_cast<std::size_t>(c) * m + k],
                              binv[static_cast<std::size_t>(c) * m + pr]);
                }
            }
            const double inv = 1.0 / a[static_cast<std::size_t>(k) * m + k];
            for (int c = 0; c < m; ++c) {
                a[static_cast<std::size_t>(c) * m + k] *= inv;
                binv[static_cast<std::size_t>(c) * m + k] *= inv;
            }
            for (int r = 0; r < m; ++r) {
                if (r == k) continue;
                const double f = a[static_cast<std::size_t>(k) * m + r];
                if (f == 0.0) continue;
                for (int c = 0; c < m; ++c) {
                    a[static_cast<std::size_t>(c) * m + r] -= f * a[static_cast<std::size_t>(c) * m + k];
                    binv[static_cast<std::size_t>(c) * m + r] -=
                        f * binv[static_cast<std::size_t>(c) * m + k];
                }
            }
        }
        for (int i = 0; i < m; ++i) {
            double v = 0.0;
            for (int c = 0; c < m; ++c)
                v += binv[static_cast<std::size_t>(c) * m + i] * rhs[static_cast<std::size_t>(c)];
            if (v < 0.0 && v > -kDropTol) v = 0.0;
            xb[static_cast<std::size_t>(i)] = v;
        }
        pivots_since_refactor = 0;
    }

    void run_phase(int phase, std::int64_t pivot_limit) {
        int degen_streak = 0;
        bool bland = false;
        std::int64_t used = 0;
        while (true) {
            compute_duals(phase);
            const int enter = price(phase, bland);
            if (enter < 0) return;
            ftran(enter);
            double theta = 0.0;
            const int p = ratio_test(bland, theta);
            if (p < 0)
                throw SolverError("simplex: unbounded direction in phase " + std::to_string(phase) +
                                  " (m=" + std::to_string(m) +
                                  ", n=" + std::to_string(cols.size()) + ")");
            pivot(enter, p, theta);
            if (++used > pivot_limit)
                throw SolverError("simplex: pivot limit " + std::to_string(pivot_limit) +
                                  " exceeded in phase " + std::to_string(phase) +
                                  " (m=" + std::to_string(m) +
                                  ", n=" + std::to_string(cols.size()) + ")");
            if (theta <= 1e-12) {
                if (++degen_streak >= kBlandAfter) bland = true;
            } else {
                degen_streak = 0;
                bland = false;
            }
            if (pivots_since_refactor >= kRefactorEvery) refactor();
        }
    }

    // Degenerate pivots that remove zero-valued artificials from the basis.
    void expel_artificials() {
        for (int p = 0; p < m; ++p) {
            if (!is_artificial(basis[static_cast<std::size_t>(p)])) continue;
            xb[static_cast<std::size_t>(p)] = 0.0;
            int enter = -1;
            for (int id = 0; id < m + static_cast<int>(cols.size()); ++id) {
                if (is_artificial(id)) continue;
                if (var_pos[static_cast<std::size_t>(id)] >= 0) continue;
                // Row p of B^{-1} a_id decides whether id can replace the
                // artificial in this row.
                double rp = 0.0;
                if (!is_structural(id)) {
                    rp = binv[static_cast<std::size_t>(id) * m + p];
                } else {
                    const LpColumn& c = cols[static_cast<std::size_t>(id - m)];
                    for (const auto& [row, v] : c.entries)
                        rp += v * binv[static_cast<std::size_t>(row) * m + p];
                    rp += binv[static_cast<std::size_t>(mcap + c.group) * m + p];
                }
                if (std::abs(rp) > kFeasTol) {
                    enter = id;
                    break;
                }
            }
            if (enter < 0)
                throw SolverError("simplex: dependent equality row " + std::to_string(p - mcap));
            ftran(enter);
            pivot(enter, p, 0.0);
        }
        artificials_active = false;
    }

    LpSolution extract(int phase) {
        compute_duals(phase);
        LpSolution sol;
        sol.status = LpStatus::Optimal;
        sol.w.assign(cols.size(), 0.0);
        for (int i = 0; i < m; ++i) {
            const int id = basis[static_cast<std::size_t>(i)];
            const double v = xb[static_cast<std::size_t>(i)];
            if (v < -kFeasTol)
                throw SolverError("simplex: basic value " + std::to_string(v) +
                                  " below zero after solve");
            if (is_structural(id)) sol.w[static_cast<std::size_t>(id - m)] = std::max(v, 0.0);
        }
        sol.pi.assign(static_cast<std::size_t>(mcap), 0.0);
        for (int r = 0; r < mcap; ++r)
            sol.pi[static_cast<std::size_t>(r)] = std::min(y[static_cast<std::size_t>(r)], 0.0);
        sol.beta.assign(static_cast<std::size_t>(mconv), 0.0);
        for (int g = 0; g < mconv; ++g)
            sol.beta[static_cast<std::size_t>(g)] = y[static_cast<std::size_t>(mcap + g)];
        double obj = 0.0;
        for (std::size_t j = 0; j < cols.size(); ++j) obj += cols[j].cost * sol.w[j];
        sol.objective = obj;
        double dual_obj = 0.0;
        for (int r = 0; r < m; ++r)
            dual_obj += y[static_cast<std::size_t>(r)] * rhs[static_cast<std::size_t>(r)];
        if (std::abs(obj - dual_obj) > kDualityTol * (1.0 + std::abs(obj)))
            throw SolverError("simplex: duality gap " + std::to_string(obj - dual_obj) +
                              " exceeds tolerance");
        return sol;
    }

    LpSolution solve() {
        const std::int64_t pivot_limit =
            50000 + 100 * (static_cast<std::int64_t>(m) + static_cast<std::int64_t>(cols.size()));
        if (!started) start();
        if (artificials_active) {
            run_phase(1, pivot_limit);
            double infeas = 0.0;
            for (int i = 0; i < m; ++i)
                if (is_artificial(basis[static_cast<std::size_t>(i)]))
                    infeas += std::max(xb[static_cast<std::size_t>(i)], 0.0);
            if (infeas > kFeasTol) {
                LpSolution sol;
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            expel_artificials();
        }
        // Re-price after each refactorization round until clean.
        for (int round = 0; round < 5; ++round) {
            run_phase(2, pivot_limit);
            refactor();
            compute_duals(2);
            if (price(2, false) < 0) return extract(2);
        }
        throw SolverError("simplex: failed to converge after repeated refactorization");
    }
};

SimplexSolver::SimplexSolver(std::vector<double> capacity_rhs, int num_groups)
    : impl_(std::make_unique<Impl>()) {
    if (num_groups < 0) throw ParameterError("simplex: num_groups must be nonnegative");
    for (double v : capacity_rhs)
        if (!std::isfinite(v) || v < 0.0)
            throw ParameterError("simplex: capacity limits must be finite and nonnegative");
    impl_->mcap = static_cast<int>(capacity_rhs.size());
    impl_->mconv = num_groups;
    impl_->m = impl_->mcap + impl_->mconv;
    if (impl_->m == 0) throw ParameterError("simplex: problem has no rows");
    impl_->rhs = std::move(capacity_rhs);
    impl_->rhs.resize(static_cast<std::size_t>(impl_->m), 1.0);
    impl_->var_pos.assign(static_cast<std::size_t>(impl_->m), -1);
}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

int SimplexSolver::add_column(LpColumn column) {
    Impl& im = *impl_;
    if (column.group < 0 || column.group >= im.mconv)
        throw ParameterError("simplex: column group out of range");
    if (!std::isfinite(column.cost)) throw ParameterError("simplex: column cost must be finite");
    std::sort(column.entries.begin(), column.entries.end());
    int prev = -1;
    for (const auto& [row, v] : column.entries) {
        if (row < 0 || row >= im.mcap)
            throw ParameterError("simplex: column entry row out of range");
        if (row == prev) throw ParameterError("simplex: duplicate row in column");
        if (!std::isfinite(v)) throw ParameterError("simplex: column entry must be finite");
        prev = row;
    }
    im.cols.push_back(std::move(column));
    im.var_pos.push_back(-1);
    return static_cast<int>(im.cols.size()) - 1;
}

int SimplexSolver::num_columns() const { return static_cast<int>(impl_->cols.size()); }

const LpColumn& SimplexSolver::column(int index) const {
    if (index < 0 || index >= num_columns())
        throw ParameterError("simplex: column index out of range");
    return impl_->cols[static_cast<std::size_t>(index)];
}

int SimplexSolver::num_capacity_rows() const { return impl_->mcap; }
int SimplexSolver::num_groups() const { return impl_->mconv; }
std::int64_t SimplexSolver::pivots() const { return impl_->total_pivots; }

LpSolution SimplexSolver::solve() { return impl_->solve(); }

LpSolution solve_lp(const LpProblem& problem) {
    SimplexSolver solver(problem.capacity_rhs, problem.num_groups);
    for (const LpColumn& c : problem.columns) solver.add_column(c);
    return solver.solve();
}

} // namespace cachesched
