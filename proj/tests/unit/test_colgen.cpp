#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "cachesched/colgen.hpp"
#include "cachesched/exact.hpp"
#include "helpers.hpp"

using namespace cachesched;
using namespace cachesched::testing;

TEST_CASE("columns carry their standalone cost") {
    Instance inst = make_tiny();
    Column c = make_column(0, {0, 1}, inst);
    CHECK(c.content == 0);
    CHECK(c.cost == 6);
    CHECK(c.cost == column_cost(0, {0, 1}, inst));
    CHECK_THROWS_AS(make_column(0, {0, 1, 0}, inst), ParameterError);
}

TEST_CASE("pool seeds, deduplicates, and filters") {
    Instance inst = make_tiny();
    ColumnPool pool(inst);
    REQUIRE(pool.size() == 2); // all-zero sequence per content
    CHECK(pool[0].content == 0);
    CHECK(pool[0].sequence == std::vector<std::uint8_t>{0, 0});
    CHECK(pool[1].content == 1);
    CHECK(pool.contains(0, {0, 0}));
    CHECK_FALSE(pool.contains(0, {0, 1}));

    const int idx = pool.add(make_column(0, {0, 1}, inst));
    CHECK(idx == 2);
    CHECK(pool.add(make_column(0, {0, 1}, inst)) == 2); // dedup keeps the index
    CHECK(pool.size() == 3);

    pool.add(make_column(1, {1, 0}, inst));
    pool.add(make_column(0, {1, 1}, inst));
    REQUIRE(pool.size() == 5);

    FixSet fixes(2, 2);
    fixes.set(0, 0, false); // content 1 must stay out of slot 1
    pool.discard_incompatible(fixes);
    REQUIRE(pool.size() == 4);
    // Survivors keep their order: (0,{0,0}), (1,{0,0}), (0,{0,1}), (1,{1,0}).
    CHECK(pool[0].sequence == std::vector<std::uint8_t>{0, 0});
    CHECK(pool[2].content == 0);
    CHECK(pool[2].sequence == std::vector<std::uint8_t>{0, 1});
    CHECK(pool[3].content == 1);
    CHECK(pool[3].sequence == std::vector<std::uint8_t>{1, 0});
    CHECK_FALSE(pool.contains(0, {1, 1}));
}

TEST_CASE("pricing graph structure on the tiny instance") {
    Instance inst = make_tiny();
    SpGraph g = build_sp_graph(0, {0.0, 0.0}, inst);

    // Source, root, sink, T cached vertices, T(T+1)/2 idle vertices.
    CHECK(g.num_vertices == 3 + 2 + 3);
    CHECK(g.cached.size() == 2);
    CHECK(g.idle.size() == 2);
    CHECK(g.idle[0].size() == 1); // k = 0
    CHECK(g.idle[1].size() == 2); // k in {0, 1}

    for (int t = 0; t < 2; ++t) {
        CHECK(g.bit[static_cast<std::size_t>(g.cached[static_cast<std::size_t>(t)])] == 1);
        for (int v : g.idle[static_cast<std::size_t>(t)])
            CHECK(g.bit[static_cast<std::size_t>(v)] == 0);
    }

    // Source->root carries the all-server fallback of the content: requests
    // 1 and 3 at size 2, server price 2 each.
    CHECK(arc_weight(g, g.source, g.root) == 8.0);
    // Entering the cache at slot 1 pays the update and saves request 1.
    CHECK(arc_weight(g, g.root, g.cached[0]) == 0.0);
    // Staying cached into slot 2 saves request 3: -l * delta = -2.
    CHECK(arc_weight(g, g.cached[0], g.cached[1]) == -2.0);
    CHECK_THROWS_AS(arc_weight(g, g.sink, g.source), ParameterError);
}

TEST_CASE("vertex count follows the closed form") {
    for (int T : {1, 2, 3, 5, 8, 13, 21, 50}) {
        Instance inst;
        inst.num_slots = T;
        inst.num_contents = 1;
        inst.num_users = 0;
        inst.sizes = {1};
        inst.capacity = 1;
        inst.cost_server = 2;
        inst.cost_cache = 1;
        inst.validate();
        SpGraph g = build_sp_graph(0, std::vector<double>(static_cast<std::size_t>(T), 0.0), inst);
        CHECK(g.num_vertices == 3 + T + T * (T + 1) / 2);
    }
}

TEST_CASE("fixing a slot prunes its other layer vertex") {
    Instance inst = make_tiny();
    FixSet fixes(2, 2);
    fixes.set(0, 0, true);
    SpGraph g = build_sp_graph(0, {0.0, 0.0}, inst, fixes);
    CHECK(g.cached[0] != -1);
    // Slot 1 fixed to caching kills the never-cached label of layer 1 and
    // every layer-2 label older than slot 1.
    CHECK(g.idle[0][0] == -1);
    CHECK(g.idle[1][0] == -1);
    CHECK(g.idle[1][1] != -1);

    FixSet off(2, 2);
    off.set(0, 0, false);
    SpGraph g2 = build_sp_graph(0, {0.0, 0.0}, inst, off);
    CHECK(g2.cached[0] == -1);
    CHECK(g2.idle[0][0] != -1);
}

TEST_CASE("graph pricing matches the enumerated table") {
    Instance inst = make_tiny();

    SubproblemResult res = solve_subproblem_graph(0, {0.0, 0.0}, inst);
    CHECK(res.objective == 6.0);
    CHECK(res.sequence == std::vector<std::uint8_t>{0, 1});

    res = solve_subproblem_graph(0, {0.0, -3.0}, inst);
    CHECK(res.objective == 8.0);
    CHECK(res.sequence == std::vector<std::uint8_t>{0, 0});

    res = solve_subproblem_graph(1, {0.0, 0.0}, inst);
    CHECK(res.objective == 6.0);
    CHECK(res.sequence == std::vector<std::uint8_t>{0, 0});

    FixSet fixes(2, 2);
    fixes.set(0, 0, true);
    fixes.set(1, 0, false);
    res = solve_subproblem_graph(0, {0.0, 0.0}, inst, fixes);
    CHECK(res.objective == 8.0);
    CHECK(res.sequence == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("graph and brute-force pricing agree everywhere") {
    Rng rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        Instance inst = random_small(rng, 10);
        const int T = inst.num_slots;
        // Duals are dyadic rationals, so both formulations evaluate every
        // path weight exactly and even ties must match.
        std::vector<double> pi(static_cast<std::size_t>(T));
        for (double& p : pi) p = -static_cast<double>(uniform_int(rng, 0, 512)) / 256.0;

        FixSet fixes(T, inst.num_contents);
        for (int f = 0; f < inst.num_contents; ++f)
            for (int t = 0; t < T; ++t)
                if (uniform_int(rng, 0, 5) == 0) fixes.set(t, f, uniform_int(rng, 0, 1) == 1);

        for (int f = 0; f < inst.num_contents; ++f) {
            SubproblemResult brute = solve_subproblem_bruteforce(f, pi, inst, fixes);
            SubproblemResult graph = solve_subproblem_graph(f, pi, inst, fixes);
            REQUIRE(brute.objective == graph.objective);
            REQUIRE(brute.sequence == graph.sequence);
        }
    }
}

TEST_CASE("restricted master over the seeded pool prices the fallback") {
    Instance inst = make_tiny();
    ColumnPool pool(inst);
    LpSolution sol = solve_rmp(pool, inst);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == 14.0); // both all-zero columns at weight 1
    CHECK(sol.pi == std::vector<double>{0.0, 0.0});
    CHECK(sol.beta == std::vector<double>{8.0, 6.0});
}

TEST_CASE("restricted master over the full column set reaches the optimum") {
    Instance inst = make_tiny();
    ColumnPool pool(inst);
    for (int f = 0; f < 2; ++f)
        for (std::uint8_t b1 : {0, 1})
            for (std::uint8_t b2 : {0, 1})
                pool.add(make_column(f, {b1, b2}, inst));
    REQUIRE(pool.size() == 8);
    LpSolution sol = solve_rmp(pool, inst);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(std::abs(sol.objective - 12.0) < 1e-9);
    // The integral optimum is a nondegenerate vertex here; duals are unique.
    CHECK(std::abs(sol.pi[0] - 0.0) < 1e-9);
    CHECK(std::abs(sol.pi[1] - 0.0) < 1e-9);
    CHECK(std::abs(sol.beta[0] - 6.0) < 1e-9);
    CHECK(std::abs(sol.beta[1] - 6.0) < 1e-9);
}

TEST_CASE("column generation solves the tiny relaxation") {
    Instance inst = make_tiny();
    ColumnPool pool(inst);
    std::vector<std::string> log;
    CgaOptions options;
    options.log = [&](const std::string& line) { log.push_back(line); };
    CgaResult res = run_cga(inst, pool, {}, options);
    REQUIRE(res.lp.status == LpStatus::Optimal);
    CHECK(std::abs(res.lp.objective - 12.0) < 1e-9);
    CHECK(res.min_reduced_cost >= -1e-6);
    CHECK(res.rmp_solves >= 2);
    REQUIRE(!log.empty());
    CHECK(contains(log[0], "iteration 1"));
    CHECK(contains(log[0], "objective 14"));

    // Objectives logged per iteration never increase.
    double prev = std::numeric_limits<double>::infinity();
    for (const std::string& line : log) {
        const std::size_t at = line.find("objective ");
        REQUIRE(at != std::string::npos);
        const double obj = std::stod(line.substr(at + 10));
        CHECK(obj <= prev + 1e-9);
        prev = obj;
    }
}

TEST_CASE("column generation without requests stops immediately") {
    Instance inst = make_tiny();
    inst.requests.clear();
    ColumnPool pool(inst);
    CgaResult res = run_cga(inst, pool);
    CHECK(res.lp.objective == 0.0);
    CHECK(res.rmp_solves == 1);
    CHECK(pool.size() == 2); // nothing worth adding
}

TEST_CASE("iteration cap raises a solver error") {
    Instance inst = make_tiny();
    ColumnPool pool(inst);
    CgaOptions options;
    options.max_rmp_solves = 1;
    CHECK_THROWS_AS(run_cga(inst, pool, {}, options), SolverError);
}

TEST_CASE("threaded pricing matches single-threaded results") {
    GenParams params;
    params.num_slots = 8;
    params.num_users = 30;
    params.num_contents = 12;
    params.seed = 17;
    Instance inst = generate_instance(params);

    ColumnPool serial(inst);
    CgaResult a = run_cga(inst, serial);

    ColumnPool threaded(inst);
    CgaOptions options;
    options.threads = 2;
    CgaResult b = run_cga(inst, threaded, {}, options);

    CHECK(a.lp.objective == b.lp.objective); // same iterates, bitwise equal
    CHECK(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == threaded[i]);
}

TEST_CASE("lower bound is sandwiched by zero and the integer optimum") {
    Instance tiny = make_tiny();
    CHECK(std::abs(lower_bound(tiny) - 12.0) < 1e-9);

    Instance quiet = tiny;
    quiet.requests.clear();
    CHECK(lower_bound(quiet) == 0.0);

    Instance part = build_partition_instance({1, 2, 3});
    CHECK(lower_bound(part) <= 21.0 + 1e-9);

    Rng rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_small(rng);
        const double lb = lower_bound(inst);
        const Cost best = solve_exact(inst).cost;
        CHECK(lb <= static_cast<double>(best) + 1e-6);
        CHECK(lb >= -1e-9);
    }
}
