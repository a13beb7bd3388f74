#ifndef CACHESCHED_COLGEN_HPP
#define CACHESCHED_COLGEN_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cachesched/cost.hpp"
#include "cachesched/exact.hpp"
#include "cachesched/fixes.hpp"
#include "cachesched/instance.hpp"
#include "cachesched/lp.hpp"

namespace cachesched {

// One caching sequence for one content, priced at its standalone cost.
struct Column {
    int content = -1; // 0-based
    std::vector<std::uint8_t> sequence;
    Cost cost = 0;

    bool operator==(const Column&) const = default;
};

Column make_column(int content0, std::vector<std::uint8_t> sequence,
                   const Instance& instance);

// Column set with one group per content, deduplicated by (content, sequence).
class ColumnPool {
public:
    ColumnPool() = default;
    // Seeds the all-zero sequence for every content so each group is nonempty.
    explicit ColumnPool(const Instance& instance);

    std::size_t size() const { return cols_.size(); }
    const Column& operator[](std::size_t i) const { return cols_[i]; }
    const std::vector<Column>& columns() const { return cols_; }

    // Index of the column, inserting it when new.
    int add(Column column);
    bool contains(int content0, const std::vector<std::uint8_t>& sequence) const;

    // Drops every column whose sequence contradicts the fixes; survivors keep
    // their relative order.
    void discard_incompatible(const FixSet& fixes);

private:
    std::vector<Column> cols_;
    std::map<std::pair<int, std::vector<std::uint8_t>>, int> index_;
};

// Layered pricing graph for one content. Layer t holds one "cached" vertex
// and one "idle since k" vertex per last-cached slot k (0 = never cached).
// Arc weights are set so a source-to-sink path costs exactly
// column_cost(f, x) - sum_t l_f pi_t x_t for the sequence x it encodes.
struct SpGraph {
    struct Arc {
        int to = -1;
        double weight = 0.0;
    };

    int num_vertices = 0;
    int source = -1;
    int root = -1; // empty-prefix vertex
    int sink = -1;
    std::vector<int> cached;            // per slot: vertex id, -1 if pruned
    std::vector<std::vector<int>> idle; // per slot t0: ids for k in [0, t0]
    std::vector<std::vector<Arc>> out;  // adjacency by vertex id
    std::vector<std::uint8_t> bit;      // per vertex: 1 for cached vertices
};

SpGraph build_sp_graph(int content0, const std::vector<double>& pi,
                       const Instance& instance, const FixSet& fixes = {});

// Weight of the arc from one vertex to another; throws when absent.
double arc_weight(const SpGraph& graph, int from, int to);

// Topological-order relaxation. Ties break to fewer cached slots, then to the
// lexicographically smallest sequence. Throws SolverError when the sink is
// unreachable, which a conflict-free fix set never produces.
SubproblemResult shortest_path(const SpGraph& graph);

// build_sp_graph + shortest_path.
SubproblemResult solve_subproblem_graph(int content0, const std::vector<double>& pi,
                                        const Instance& instance,
                                        const FixSet& fixes = {});

// Restricted master over the pooled columns: one capacity row per slot, one
// convexity row per content. Every pooled column must be fix-compatible.
LpSolution solve_rmp(const ColumnPool& pool, const Instance& instance,
                     const FixSet& fixes = {});

struct CgaOptions {
    // RMP solve cap; 0 means the default 10 * F * T.
    int max_rmp_solves = 0;
    int threads = 1;
    // Optional per-iteration log line: iteration, objective, columns added.
    std::function<void(const std::string&)> log;
};

struct CgaResult {
    LpSolution lp; // w aligned with the pool's column order
    int rmp_solves = 0;
    // Over contents at the final iteration; >= -1e-6 at clean convergence.
    double min_reduced_cost = 0.0;
};

// Column generation: alternates RMP solves with per-content pricing, adding
// at most one column per content and iteration, until no content prices a
// column with reduced cost below -1e-6.
CgaResult run_cga(const Instance& instance, ColumnPool& pool, const FixSet& fixes = {},
                  const CgaOptions& options = {});

// Converged first-pass CGA objective with no fixes: a valid lower bound on
// the optimal plan cost.
double lower_bound(const Instance& instance, const CgaOptions& options = {});

} // namespace cachesched

#endif
