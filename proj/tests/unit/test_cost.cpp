#include <doctest.h>

#include <numeric>

#include "cachesched/cost.hpp"
#include "helpers.hpp"

using namespace cachesched;
using namespace cachesched::testing;

namespace {

// Plan caching content 2 in slot 1 and content 1 in slot 2; optimal for the
// tiny instance.
CachePlan tiny_best(const Instance& inst) {
    return CachePlan::from_x({0, 1, 1, 0}, inst);
}

} // namespace

TEST_CASE("update matrix marks entries into the cache") {
    Instance inst = make_tiny();

    // Content stays cached across both slots: one update at entry.
    CHECK(derive_updates({1, 0, 1, 0}, inst) == std::vector<std::uint8_t>{1, 0, 0, 0});
    // Content enters only in slot 2.
    CHECK(derive_updates({0, 0, 1, 0}, inst) == std::vector<std::uint8_t>{0, 0, 1, 0});
    // Leave and re-enter over three slots.
    Instance three = inst;
    three.num_slots = 3;
    three.requests.clear();
    three.num_contents = 1;
    three.sizes = {2};
    three.num_users = 0;
    three.validate();
    CHECK(derive_updates({1, 0, 1}, three) == std::vector<std::uint8_t>{1, 0, 1});

    CHECK_THROWS_AS(derive_updates({1, 0, 1}, inst), ParameterError);
}

TEST_CASE("plans derive their update matrix on construction") {
    Instance inst = make_tiny();
    CachePlan plan = tiny_best(inst);
    CHECK(plan.num_slots == 2);
    CHECK(plan.num_contents == 2);
    CHECK(plan.cached(0, 1));
    CHECK(plan.cached(1, 0));
    CHECK_FALSE(plan.cached(0, 0));
    CHECK(plan.added(0, 1));
    CHECK(plan.added(1, 0));

    CachePlan none = CachePlan::empty(inst);
    CHECK(none.x == std::vector<std::uint8_t>(4, 0));
    CHECK(none.a == std::vector<std::uint8_t>(4, 0));

    CHECK_THROWS_AS(CachePlan::from_x({1, 0}, inst), ParameterError);
}

TEST_CASE("downloads pick the earliest cached slot within the window") {
    Instance inst = make_tiny();

    DownloadAssignment best = assign_downloads(tiny_best(inst), inst);
    REQUIRE(best.cache_slot.size() == 3);
    CHECK(best.cache_slot[0] == 2); // content 1 window [1,2], cached at 2
    CHECK(best.cache_slot[1] == 1); // content 2 window [1,1], cached at 1
    CHECK(best.cache_slot[2] == 2); // content 1 window [2,2], cached at 2

    DownloadAssignment none = assign_downloads(CachePlan::empty(inst), inst);
    for (const auto& slot : none.cache_slot) CHECK_FALSE(slot.has_value());

    // Cached in both window slots: the earlier one serves.
    DownloadAssignment both = assign_downloads(CachePlan::from_x({1, 0, 1, 0}, inst), inst);
    CHECK(both.cache_slot[0] == 1);
    CHECK_FALSE(both.cache_slot[1].has_value());
    CHECK(both.cache_slot[2] == 2);
}

TEST_CASE("costs of hand-checked plans") {
    Instance inst = make_tiny();

    CachePlan best = tiny_best(inst);
    CHECK(download_cost(best, inst) == 7);  // 2*1 + 3*1 + 2*1
    CHECK(update_cost(best, inst) == 5);    // 3*1 + 2*1
    CHECK(total_cost(best, inst) == 12);

    CachePlan none = CachePlan::empty(inst);
    CHECK(download_cost(none, inst) == 14); // (2 + 3 + 2) * 2
    CHECK(update_cost(none, inst) == 0);
    CHECK(total_cost(none, inst) == 14);

    // Caching content 1 across both slots: requests 1 and 3 hit the cache.
    CachePlan keep = CachePlan::from_x({1, 0, 1, 0}, inst);
    CHECK(download_cost(keep, inst) == 10); // 2*1 + 3*2 + 2*1
    CHECK(update_cost(keep, inst) == 2);    // one entry of content 1
    CHECK(total_cost(keep, inst) == 12);
}

TEST_CASE("capacity check reports the first violating slot") {
    Instance inst = make_tiny();

    CapacityCheck bad = check_capacity(CachePlan::from_x({1, 1, 0, 0}, inst), inst);
    CHECK_FALSE(bad.feasible);
    CHECK_FALSE(static_cast<bool>(bad));
    CHECK(bad.slot == 1);
    CHECK(bad.load == 5);

    CapacityCheck good = check_capacity(tiny_best(inst), inst);
    CHECK(good.feasible);
    CHECK(static_cast<bool>(good));

    CHECK(check_capacity(CachePlan::empty(inst), inst).feasible);
}

TEST_CASE("per-content sequence costs match the enumerated table") {
    Instance inst = make_tiny();

    CHECK(column_cost(0, {0, 0}, inst) == 8);
    CHECK(column_cost(0, {0, 1}, inst) == 6);
    CHECK(column_cost(0, {1, 0}, inst) == 8);
    CHECK(column_cost(0, {1, 1}, inst) == 6);
    CHECK(column_cost(1, {0, 0}, inst) == 6);
    CHECK(column_cost(1, {0, 1}, inst) == 9);
    CHECK(column_cost(1, {1, 0}, inst) == 6);
    CHECK(column_cost(1, {1, 1}, inst) == 6);

    CHECK_THROWS_AS(column_cost(0, {0}, inst), ParameterError);
}

TEST_CASE("total cost decomposes into per-content column costs") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst = random_small(rng);
        std::vector<std::uint8_t> x(
            static_cast<std::size_t>(inst.num_slots) * inst.num_contents);
        for (auto& bit : x) bit = static_cast<std::uint8_t>(uniform_int(rng, 0, 1));
        CachePlan plan = CachePlan::from_x(x, inst);

        Cost sum = 0;
        for (int f = 0; f < inst.num_contents; ++f) {
            std::vector<std::uint8_t> sequence(static_cast<std::size_t>(inst.num_slots));
            for (int t = 0; t < inst.num_slots; ++t)
                sequence[static_cast<std::size_t>(t)] =
                    plan.cached(t, f) ? std::uint8_t{1} : std::uint8_t{0};
            sum += column_cost(f, sequence, inst);
        }
        CHECK(sum == total_cost(plan, inst));
        CHECK(total_cost(plan, inst) ==
              download_cost(plan, inst) + update_cost(plan, inst));
    }
}
