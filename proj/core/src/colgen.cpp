#include "cachesched/colgen.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace cachesched {

Column make_column(int content0, std::vector<std::uint8_t> sequence,
                   const Instance& instance) {
    Column c;
    c.content = content0;
    c.cost = column_cost(content0, sequence, instance);
    c.sequence = std::move(sequence);
    return c;
}

ColumnPool::ColumnPool(const Instance& instance) {
    instance.validate();
    for (int f = 0; f < instance.num_contents; ++f)
        add(make_column(f, std::vector<std::uint8_t>(static_cast<std::size_t>(instance.num_slots), 0),
                        instance));
}

int ColumnPool::add(Column column) {
    auto key = std::make_pair(column.content, column.sequence);
    const auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(cols_.size());
    index_.emplace(std::move(key), id);
    cols_.push_back(std::move(column));
    return id;
}

bool ColumnPool::contains(int content0, const std::vector<std::uint8_t>& sequence) const {
    return index_.find(std::make_pair(content0, sequence)) != index_.end();
}

void ColumnPool::discard_incompatible(const FixSet& fixes) {
    if (fixes.num_slots() == 0) return;
    bool all_kept = true;
    for (const Column& c : cols_) {
        if (!fixes.compatible(c.content, c.sequence)) {
            all_kept = false;
            break;
        }
    }
    if (all_kept) return;
    std::vector<Column> kept;
    kept.reserve(cols_.size());
    for (Column& c : cols_)
        if (fixes.compatible(c.content, c.sequence)) kept.push_back(std::move(c));
    cols_.swap(kept);
    index_.clear();
    for (int i = 0; i < static_cast<int>(cols_.size()); ++i)
        index_.emplace(std::make_pair(cols_[static_cast<std::size_t>(i)].content,
                                      cols_[static_cast<std::size_t>(i)].sequence),
                       i);
}

SpGraph build_sp_graph(int content0, const std::vector<double>& pi,
                       const Instance& instance, const FixSet& fixes) {
    const int T = instance.num_slots;
    const int F = instance.num_contents;
    if (content0 < 0 || content0 >= F)
        throw ParameterError("pricing: content id out of range");
    if (static_cast<int>(pi.size()) != T)
        throw ParameterError("pricing: pi must have one entry per slot");
    const bool have_fixes = fixes.num_slots() > 0;
    if (have_fixes && (fixes.num_slots() != T || fixes.num_contents() != F))
        throw ParameterError("pricing: fixes shape does not match the instance");

    const Cost l = instance.size_of(content0);
    const Cost delta = instance.cost_server - instance.cost_cache;
    const double q = static_cast<double>(l * delta);

    // ge[i][d] after the suffix pass: requests for this content with
    // origin i and deadline >= d (slots 1-based).
    std::vector<std::vector<Cost>> ge(static_cast<std::size_t>(T) + 1,
                                      std::vector<Cost>(static_cast<std::size_t>(T) + 2, 0));
    Cost all_server = 0;
    for (const Request& r : instance.requests) {
        if (r.content - 1 != content0) continue;
        ++ge[static_cast<std::size_t>(r.origin)][static_cast<std::size_t>(r.deadline)];
        all_server += l * instance.cost_server;
    }
    for (int i = 1; i <= T; ++i)
        for (int d = T; d >= 1; --d)
            ge[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] +=
                ge[static_cast<std::size_t>(i)][static_cast<std::size_t>(d) + 1];
    const auto g = [&](int i, int d) {
        return static_cast<double>(l * delta * ge[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)]);
    };
    const auto p = [&](int t) { return -static_cast<double>(l) * pi[static_cast<std::size_t>(t) - 1]; };

    const auto fixed_at = [&](int t0) -> int {
        if (!have_fixes || !fixes.is_fixed(t0, content0)) return -1;
        return fixes.value(t0, content0) ? 1 : 0;
    };
    // Largest slot at or before t fixed to caching; idle labels below it die.
    std::vector<int> one_before(static_cast<std::size_t>(T) + 1, 0);
    for (int t = 1; t <= T; ++t) {
        one_before[static_cast<std::size_t>(t)] = one_before[static_cast<std::size_t>(t) - 1];
        if (fixed_at(t - 1) == 1) one_before[static_cast<std::size_t>(t)] = t;
    }

    SpGraph gr;
    gr.cached.assign(static_cast<std::size_t>(T), -1);
    gr.idle.assign(static_cast<std::size_t>(T), {});
    int next = 0;
    gr.source = next++;
    gr.root = next++;
    for (int t0 = 0; t0 < T; ++t0) {
        if (fixed_at(t0) != 0) gr.cached[static_cast<std::size_t>(t0)] = next++;
        gr.idle[static_cast<std::size_t>(t0)].assign(static_cast<std::size_t>(t0) + 1, -1);
        for (int k = 0; k <= t0; ++k)
            if (k >= one_before[static_cast<std::size_t>(t0) + 1])
                gr.idle[static_cast<std::size_t>(t0)][static_cast<std::size_t>(k)] = next++;
    }
    gr.sink = next++;
    gr.num_vertices = next;
    gr.out.assign(static_cast<std::size_t>(next), {});
    gr.bit.assign(static_cast<std::size_t>(next), 0);
    for (int t0 = 0; t0 < T; ++t0)
        if (gr.cached[static_cast<std::size_t>(t0)] >= 0)
            gr.bit[static_cast<std::size_t>(gr.cached[static_cast<std::size_t>(t0)])] = 1;

    const auto arc = [&](int from, int to, double weight) {
        if (from >= 0 && to >= 0)
            gr.out[static_cast<std::size_t>(from)].push_back({to, weight});
    };

    arc(gr.source, gr.root, static_cast<double>(all_server));
    arc(gr.root, gr.cached[0], q + p(1) - g(1, 1));
    arc(gr.root, gr.idle[0][0], 0.0);
    for (int t = 2; t <= T; ++t) {
        const std::size_t t0 = static_cast<std::size_t>(t) - 1;
        arc(gr.cached[t0 - 1], gr.cached[t0], p(t) - g(t, t));
        double gain = g(t, t); // sum of g(i, t) for i in (k, t]
        for (int k = t - 2; k >= 0; --k) {
            gain += g(k + 1, t);
            arc(gr.idle[t0 - 1][static_cast<std::size_t>(k)], gr.cached[t0], q + p(t) - gain);
            arc(gr.idle[t0 - 1][static_cast<std::size_t>(k)],
                gr.idle[t0][static_cast<std::size_t>(k)], 0.0);
        }
        arc(gr.cached[t0 - 1], gr.idle[t0][static_cast<std::size_t>(t) - 1], 0.0);
    }
    arc(gr.cached[static_cast<std::size_t>(T) - 1], gr.sink, 0.0);
    for (int k = 0; k < T; ++k)
        arc(gr.idle[static_cast<std::size_t>(T) - 1][static_cast<std::size_t>(k)], gr.sink, 0.0);
    return gr;
}

double arc_weight(const SpGraph& graph, int from, int to) {
    if (from < 0 || from >= graph.num_vertices)
        throw ParameterError("pricing: arc origin out of range");
    for (const SpGraph::Arc& a : graph.out[static_cast<std::size_t>(from)])
        if (a.to == to) return a.weight;
    throw ParameterError("pricing: no arc between the given vertices");
}

SubproblemResult shortest_path(const SpGraph& graph) {
    const int n = graph.num_vertices;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(n), inf);
    std::vector<int> ones(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<std::uint8_t>> prefix(static_cast<std::size_t>(n));
    dist[static_cast<std::size_t>(graph.source)] = 0.0;
    // Vertex ids are assigned layer by layer, so id order is topological.
    for (int v = 0; v < n; ++v) {
        if (dist[static_cast<std::size_t>(v)] == inf) continue;
        for (const SpGraph::Arc& a : graph.out[static_cast<std::size_t>(v)]) {
            const std::size_t u = static_cast<std::size_t>(a.to);
            const double nd = dist[static_cast<std::size_t>(v)] + a.weight;
            const int nc = ones[static_cast<std::size_t>(v)] + graph.bit[u];
            std::vector<std::uint8_t> cand = prefix[static_cast<std::size_t>(v)];
            // Only slot-layer vertices contribute a decision bit.
            if (a.to != graph.sink && a.to != graph.root) cand.push_back(graph.bit[u]);
            bool better = nd < dist[u];
            if (!better && nd == dist[u]) {
                if (nc < ones[u]) better = true;
                else if (nc == ones[u] &&
                         std::lexicographical_compare(cand.begin(), cand.end(),
                                                      prefix[u].begin(), prefix[u].end()))
                    better = true;
            }
            if (better) {
                dist[u] = nd;
                ones[u] = nc;
                prefix[u] = std::move(cand);
            }
        }
    }
    if (dist[static_cast<std::size_t>(graph.sink)] == inf)
        throw SolverError("pricing: no path to the sink; fixes are over-constrained");
    SubproblemResult r;
    r.sequence = prefix[static_cast<std::size_t>(graph.sink)];
    r.objective = dist[static_cast<std::size_t>(graph.sink)];
    return r;
}

SubproblemResult solve_subproblem_graph(int content0, const std::vector<double>& pi,
                                        const Instance& instance, const FixSet& fixes) {
    return shortest_path(build_sp_graph(content0, pi, instance, fixes));
}

namespace {

LpColumn to_lp_column(const Column& c, const Instance& instance) {
    LpColumn lc;
    lc.cost = static_cast<double>(c.cost);
    lc.group = c.content;
    const double l = static_cast<double>(instance.size_of(c.content));
    for (int t = 0; t < static_cast<int>(c.sequence.size()); ++t)
        if (c.sequence[static_cast<std::size_t>(t)]) lc.entries.emplace_back(t, l);
    return lc;
}

void check_pool_column(const Column& c, const Instance& instance, const FixSet& fixes,
                       bool have_fixes) {
    if (c.content < 0 || c.content >= instance.num_contents ||
        static_cast<int>(c.sequence.size()) != instance.num_slots)
        throw ParameterError("master: column shape does not match the instance");
    if (have_fixes && !fixes.compatible(c.content, c.sequence))
        throw ParameterError("master: pool holds a column contradicting the fixes");
}

void require_all_groups(const std::vector<int>& per_group) {
    for (int f = 0; f < static_cast<int>(per_group.size()); ++f)
        if (per_group[static_cast<std::size_t>(f)] == 0)
            throw ParameterError("master: content " + std::to_string(f + 1) +
                                 " has no pooled column");
}

} // namespace

LpSolution solve_rmp(const ColumnPool& pool, const Instance& instance, const FixSet& fixes) {
    instance.validate();
    const bool have_fixes = fixes.num_slots() > 0;
    if (have_fixes && (fixes.num_slots() != instance.num_slots ||
                       fixes.num_contents() != instance.num_contents))
        throw ParameterError("master: fixes shape does not match the instance");
    SimplexSolver solver(
        std::vector<double>(static_cast<std::size_t>(instance.num_slots),
                            static_cast<double>(instance.capacity)),
        instance.num_contents);
    std::vector<int> per_group(static_cast<std::size_t>(instance.num_contents), 0);
    for (const Column& c : pool.columns()) {
        check_pool_column(c, instance, fixes, have_fixes);
        solver.add_column(to_lp_column(c, instance));
        ++per_group[static_cast<std::size_t>(c.content)];
    }
    require_all_groups(per_group);
    LpSolution sol = solver.solve();
    if (sol.status != LpStatus::Optimal)
        throw SolverError("master: restricted problem is infeasible");
    return sol;
}

CgaResult run_cga(const Instance& instance, ColumnPool& pool, const FixSet& fixes,
                  const CgaOptions& options) {
    instance.validate();
    const int T = instance.num_slots;
    const int F = instance.num_contents;
    const bool have_fixes = fixes.num_slots() > 0;
    if (have_fixes && (fixes.num_slots() != T || fixes.num_contents() != F))
        throw ParameterError("cga: fixes shape does not match the instance");
    const int cap = options.max_rmp_solves > 0 ? options.max_rmp_solves : 10 * F * T;
    const int threads = std::max(1, options.threads);

    SimplexSolver solver(std::vector<double>(static_cast<std::size_t>(T),
                                             static_cast<double>(instance.capacity)),
                         F);
    std::vector<int> per_group(static_cast<std::size_t>(F), 0);
    for (const Column& c : pool.columns()) {
        check_pool_column(c, instance, fixes, have_fixes);
        solver.add_column(to_lp_column(c, instance));
        ++per_group[static_cast<std::size_t>(c.content)];
    }
    require_all_groups(per_group);

    CgaResult res;
    std::vector<SubproblemResult> sp(static_cast<std::size_t>(F));
    double last_objective = std::numeric_limits<double>::quiet_NaN();
    while (true) {
        if (res.rmp_solves >= cap) {
            std::ostringstream os;
            os << "cga: RMP solve cap " << cap << " exceeded; best objective so far "
               << last_objective;
            throw SolverError(os.str());
        }
        LpSolution sol = solver.solve();
        ++res.rmp_solves;
        if (sol.status != LpStatus::Optimal)
            throw SolverError("cga: restricted master is infeasible");
        last_objective = sol.objective;

        if (threads <= 1 || F < 2) {
            for (int f = 0; f < F; ++f)
                sp[static_cast<std::size_t>(f)] =
                    solve_subproblem_graph(f, sol.pi, instance, fixes);
        } else {
            const int workers = std::min(threads, F);
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
            std::vector<std::thread> crew;
            crew.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) {
                crew.emplace_back([&, w]() {
                    try {
                        for (int f = w; f < F; f += workers)
                            sp[static_cast<std::size_t>(f)] =
                                solve_subproblem_graph(f, sol.pi, instance, fixes);
                    } catch (...) {
                        errors[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                });
            }
            for (std::thread& th : crew) th.join();
            for (const std::exception_ptr& e : errors)
                if (e) std::rethrow_exception(e);
        }

        double min_rc = std::numeric_limits<double>::infinity();
        int added = 0;
        for (int f = 0; f < F; ++f) {
            const SubproblemResult& r = sp[static_cast<std::size_t>(f)];
            const double rc = r.objective - sol.beta[static_cast<std::size_t>(f)];
            min_rc = std::min(min_rc, rc);
            if (rc < -1e-6 && !pool.contains(f, r.sequence)) {
                Column c = make_column(f, r.sequence, instance);
                solver.add_column(to_lp_column(c, instance));
                pool.add(std::move(c));
                ++added;
            }
        }
        res.min_reduced_cost = min_rc;
        if (options.log) {
            std::ostringstream os;
            os << "iteration " << res.rmp_solves << " objective " << sol.objective
               << " columns added " << added << " min reduced cost " << min_rc;
            options.log(os.str());
        }
        res.lp = std::move(sol);
        if (added == 0) break;
    }
    return res;
}

double lower_bound(const Instance& instance, const CgaOptions& options) {
    ColumnPool pool(instance);
    return run_cga(instance, pool, {}, options).lp.objective;
}

} // namespace cachesched
