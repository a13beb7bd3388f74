#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cachesched/experiments.hpp"
#include "helpers.hpp"

using namespace cachesched;
using namespace cachesched::testing;

TEST_CASE("relative gap handles degenerate bounds") {
    CHECK(gap(112.0, 100.0) == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(gap(100.0, 100.0) == 0.0);
    CHECK(gap(0.0, 0.0) == 0.0);
    CHECK(std::isinf(gap(5.0, 0.0)));
    CHECK(gap(90.0, 100.0) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("tag names round trip") {
    for (SweepParam p : {SweepParam::Alpha, SweepParam::T, SweepParam::U, SweepParam::F,
                         SweepParam::Rho, SweepParam::Gamma})
        CHECK(sweep_param_from_string(to_string(p)) == p);
    CHECK(contains(thrown_message<ParameterError>([] { sweep_param_from_string("beta"); }),
                   "one of alpha, T, U, F, rho, gamma"));

    CHECK(to_string(Algo::Lb) == "lb");
    CHECK(to_string(Algo::Rcga) == "rcga");
    CHECK(to_string(Algo::Pbc) == "pbc");
    CHECK(to_string(Algo::Rbc) == "rbc");
}

TEST_CASE("applying a swept value touches only its parameter") {
    GenParams base;
    base.seed = 77;

    GenParams p = apply_sweep_value(base, SweepParam::Alpha, 0.25);
    CHECK(p.alpha == 0.25);
    CHECK(p.seed == 77);
    CHECK(p.num_slots == base.num_slots);

    CHECK(apply_sweep_value(base, SweepParam::T, 3.6).num_slots == 4);
    CHECK(apply_sweep_value(base, SweepParam::U, 100.0).num_users == 100);
    CHECK(apply_sweep_value(base, SweepParam::F, 12.0).num_contents == 12);
    CHECK(apply_sweep_value(base, SweepParam::Rho, 0.7).rho == 0.7);
    CHECK(apply_sweep_value(base, SweepParam::Gamma, 1.1).gamma == 1.1);

    CHECK_THROWS_AS(apply_sweep_value(base, SweepParam::T, 0.4), ParameterError);
    CHECK_THROWS_AS(apply_sweep_value(base, SweepParam::U,
                                      std::numeric_limits<double>::infinity()),
                    ParameterError);
}

namespace {

SweepSpec tiny_spec() {
    SweepSpec spec;
    spec.base.num_slots = 3;
    spec.base.num_users = 6;
    spec.base.num_contents = 4;
    spec.base.requests_per_user_range = {1, 3};
    spec.param = SweepParam::Alpha;
    spec.values = {1.0, 0.0};
    spec.replications = 2;
    spec.base_seed = 5;
    return spec;
}

} // namespace

TEST_CASE("sweeps run every algorithm per replication in a fixed order") {
    SweepResult res = run_sweep(tiny_spec());
    REQUIRE(res.records.size() == 2 * 2 * 4);

    // Sorted by value then replication, algos in declaration order inside.
    std::size_t i = 0;
    for (double value : {0.0, 1.0}) {
        for (int rep = 0; rep < 2; ++rep) {
            double lb = -1.0;
            for (Algo algo : kAlgoOrder) {
                const SweepRecord& r = res.records[i++];
                CHECK(r.value == value);
                CHECK(r.replication == rep);
                CHECK(r.seed == 5 + static_cast<std::uint64_t>(rep));
                CHECK(r.algo == algo);
                CHECK_FALSE(r.failed);
                CHECK(r.millis == 0); // wall time suppressed by default
                if (algo == Algo::Lb) {
                    CHECK(r.gap == 0.0);
                    lb = r.cost;
                } else {
                    CHECK(r.cost >= lb - 1e-6);
                    CHECK(r.gap == doctest::Approx(gap(r.cost, lb)).epsilon(1e-12));
                }
            }
        }
    }

    // Aggregate rows: one per distinct value, means over replications.
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[0].value == 0.0);
    CHECK(res.rows[1].value == 1.0);
    for (std::size_t ai = 0; ai < kAlgoOrder.size(); ++ai) {
        double sum = 0.0;
        int n = 0;
        for (const SweepRecord& r : res.records)
            if (r.value == 1.0 && r.algo == kAlgoOrder[ai]) {
                sum += r.cost;
                ++n;
            }
        REQUIRE(n == 2);
        CHECK(res.rows[1].stats[ai].mean_cost == doctest::Approx(sum / 2).epsilon(1e-12));
        CHECK(res.rows[1].stats[ai].failures == 0);
    }

    CHECK_THROWS_AS(run_sweep(SweepSpec{}), ParameterError); // empty value list
}

TEST_CASE("sweep output is reproducible byte for byte") {
    std::ostringstream a, b;
    write_csv(run_sweep(tiny_spec()).records, SweepParam::Alpha, a);
    write_csv(run_sweep(tiny_spec()).records, SweepParam::Alpha, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("param,value,replication,seed,algo,cost,gap,millis\n", 0) == 0);
    CHECK(contains(a.str(), "alpha,0,0,5,lb,"));
    CHECK(contains(a.str(), "alpha,1,1,6,rbc,"));
}

TEST_CASE("csv renders integers bare and special values as words") {
    SweepRecord ok;
    ok.value = 0.25;
    ok.replication = 3;
    ok.seed = 11;
    ok.algo = Algo::Rcga;
    ok.cost = 12.0;
    ok.gap = 0.03125;
    ok.millis = 0;

    SweepRecord failed;
    failed.value = 0.25;
    failed.replication = 4;
    failed.seed = 12;
    failed.algo = Algo::Pbc;
    failed.cost = std::numeric_limits<double>::quiet_NaN();
    failed.gap = std::numeric_limits<double>::infinity();
    failed.millis = 17;
    failed.failed = true;

    std::ostringstream out;
    write_csv({ok, failed}, SweepParam::Rho, out);
    CHECK(out.str() ==
          "param,value,replication,seed,algo,cost,gap,millis\n"
          "rho,0.25,3,11,rcga,12,0.03125,0\n"
          "rho,0.25,4,12,pbc,nan,inf,17\n");
}

TEST_CASE("sweep specs load from json with layered defaults") {
    std::istringstream full(R"({
        "param": "rho",
        "values": [0.2, 0.8],
        "replications": 3,
        "base_seed": 99,
        "include_millis": true,
        "threads": 2,
        "base": {"T": 4, "U": 10, "F": 5, "size_min": 2, "size_max": 6,
                 "rho": 0.4, "gamma": 1.0, "alpha": 0.5,
                 "requests_min": 2, "requests_max": 4,
                 "cost_server": 8, "cost_cache": 2}
    })");
    SweepSpec spec = load_sweep_spec(full);
    CHECK(spec.param == SweepParam::Rho);
    CHECK(spec.values == std::vector<double>{0.2, 0.8});
    CHECK(spec.replications == 3);
    CHECK(spec.base_seed == 99);
    CHECK(spec.include_millis);
    CHECK(spec.threads == 2);
    CHECK(spec.base.num_slots == 4);
    CHECK(spec.base.num_users == 10);
    CHECK(spec.base.num_contents == 5);
    CHECK(spec.base.size_range == std::pair<Cost, Cost>{2, 6});
    CHECK(spec.base.rho == 0.4);
    CHECK(spec.base.gamma == 1.0);
    CHECK(spec.base.alpha == 0.5);
    CHECK(spec.base.requests_per_user_range == std::pair<int, int>{2, 4});
    CHECK(spec.base.cost_server == 8);
    CHECK(spec.base.cost_cache == 2);

    std::istringstream minimal(R"({"param": "alpha", "values": [1]})");
    SweepSpec defaults = load_sweep_spec(minimal);
    CHECK(defaults.replications == 5);
    CHECK(defaults.base_seed == 0);
    CHECK_FALSE(defaults.include_millis);
    CHECK(defaults.threads == 1);
    CHECK(defaults.base.num_slots == 24); // generator defaults untouched

    auto load = [](const std::string& text) {
        std::istringstream in(text);
        return load_sweep_spec(in);
    };
    CHECK(contains(thrown_message<ParseError>([&] { load("{\"values\": [1]}"); }),
                   "missing field \"param\""));
    CHECK(contains(thrown_message<ParseError>([&] { load("{\"param\": \"beta\", \"values\": [1]}"); }),
                   "one of alpha"));
    CHECK(contains(thrown_message<ParseError>([&] { load("{\"param\": \"alpha\", \"values\": []}"); }),
                   "nonempty array"));
    CHECK(contains(
        thrown_message<ParseError>([&] {
            load("{\"param\": \"alpha\", \"values\": [1], \"replications\": 0}");
        }),
        "at least 1"));
    CHECK(contains(thrown_message<ParseError>([&] {
                       load("{\"param\": \"alpha\", \"values\": [1], "
                            "\"base\": {\"rho\": 2.0}}");
                   }),
                   "rho"));
    CHECK(contains(thrown_message<ParseError>([&] { load("nope"); }), "invalid sweep document"));
}
