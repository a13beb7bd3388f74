#include <doctest.h>

#include <sstream>

#include "cachesched/instance_io.hpp"
#include "helpers.hpp"

using namespace cachesched;
using namespace cachesched::testing;

TEST_CASE("instance documents round trip") {
    Instance tiny = make_tiny();
    CHECK(instance_from_string(instance_to_string(tiny)) == tiny);

    GenParams params;
    params.num_slots = 6;
    params.num_users = 15;
    params.num_contents = 9;
    params.seed = 3;
    Instance generated = generate_instance(params);
    CHECK(instance_from_string(instance_to_string(generated)) == generated);

    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_small(rng);
        CHECK(instance_from_string(instance_to_string(inst)) == inst);
    }
}

TEST_CASE("stream overloads match the string helpers") {
    Instance tiny = make_tiny();
    std::ostringstream out;
    save_instance(tiny, out);
    CHECK(out.str() == instance_to_string(tiny));
    std::istringstream in(out.str());
    CHECK(load_instance(in) == tiny);
}

TEST_CASE("parse errors name the first offending field") {
    const std::string good = instance_to_string(make_tiny());

    auto load = [](const std::string& text) { return instance_from_string(text); };

    CHECK(contains(thrown_message<ParseError>([&] { load("{\"T\": 2}"); }), "missing field \"F\""));

    std::string no_capacity = good;
    no_capacity.replace(no_capacity.find("\"capacity\""), 10, "\"capaxity\"");
    CHECK(contains(thrown_message<ParseError>([&] { load(no_capacity); }),
                   "missing field \"capacity\""));

    CHECK(contains(thrown_message<ParseError>([&] {
                       load("{\"T\": \"two\", \"F\": 1, \"U\": 0, \"capacity\": 1, "
                            "\"cost_server\": 2, \"cost_cache\": 1, \"sizes\": [1], "
                            "\"requests\": []}");
                   }),
                   "field \"T\" must be an integer"));

    CHECK(contains(thrown_message<ParseError>([&] {
                       load("{\"T\": 1, \"F\": 2, \"U\": 0, \"capacity\": 1, "
                            "\"cost_server\": 2, \"cost_cache\": 1, \"sizes\": [1, 2.5], "
                            "\"requests\": []}");
                   }),
                   "field \"sizes[2]\" must be an integer"));

    CHECK(contains(thrown_message<ParseError>([&] {
                       load("{\"T\": 1, \"F\": 1, \"U\": 1, \"capacity\": 1, "
                            "\"cost_server\": 2, \"cost_cache\": 1, \"sizes\": [1], "
                            "\"requests\": [{\"user\": 1, \"index\": 1, \"content\": 1, "
                            "\"origin\": 1}]}");
                   }),
                   "missing field \"requests[1].deadline\""));

    // Semantic violations surface as parse errors too.
    CHECK(contains(thrown_message<ParseError>([&] {
                       load("{\"T\": 2, \"F\": 1, \"U\": 1, \"capacity\": 1, "
                            "\"cost_server\": 2, \"cost_cache\": 1, \"sizes\": [1], "
                            "\"requests\": [{\"user\": 1, \"index\": 1, \"content\": 1, "
                            "\"origin\": 2, \"deadline\": 1}]}");
                   }),
                   "deadline precedes origin"));

    CHECK(contains(thrown_message<ParseError>([&] { load("not json"); }), "invalid document"));
    CHECK(contains(thrown_message<ParseError>([&] { load("[1, 2]"); }), "root must be an object"));
}

TEST_CASE("file helpers report unopenable paths") {
    CHECK_THROWS_AS(load_instance_file("/nonexistent/dir/instance.json"), IoError);
    CHECK_THROWS_AS(save_instance(make_tiny(), "/nonexistent/dir/instance.json"), IoError);
}

TEST_CASE("saving an invalid instance is rejected before serialization") {
    Instance inst = make_tiny();
    inst.cost_server = 0;
    CHECK_THROWS_AS(instance_to_string(inst), ParameterError);
}
