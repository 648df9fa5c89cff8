#include <catch2/catch_amalgamated.hpp>

#include "adopt/scenario.hpp"

using Catch::Approx;
using namespace adopt;

TEST_CASE("the default configuration is the urban street preset") {
    ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.street_width == 12.8);
    CHECK(cfg.v_max == 15.0);
    CHECK(cfg.cruise() == 15.0);
    CHECK(cfg.chain_count == 54);
    CHECK(cfg.chain_end() == Approx(150.0 + 6.0 * 53));
    CHECK(cfg.slots == 50);
    CHECK(cfg.ticks == 3600);
    CHECK(cfg.controller_enabled);

    cfg.cruising_speed = 12.0;
    CHECK(cfg.cruise() == 12.0);
}

TEST_CASE("an empty document loads the preset") {
    ScenarioConfig cfg = load_scenario("{}");
    CHECK(cfg.street_width == 12.8);
    CHECK(cfg.sigma_mw == 0.3);
    CHECK(cfg.seed == 1);
}

TEST_CASE("documents override individual fields, keeping the rest") {
    ScenarioConfig cfg = load_scenario(R"({
        "street": {"width": 10.0, "v_max": 13.0, "lane_center": 4.0},
        "chain": {"count": 12, "skip": [2, 5]},
        "radio": {"sigma_mw": 0.0, "slots": 25},
        "pedestrians": {"rate": {"mean": 0.2}, "speed_mean": 1.3},
        "cars": {"controller": false},
        "run": {"ticks": 600, "seed": 77}
    })");
    CHECK(cfg.street_width == 10.0);
    CHECK(cfg.v_max == 13.0);
    CHECK(cfg.chain_count == 12);
    CHECK(cfg.chain_skip == std::vector<int>{2, 5});
    CHECK(cfg.sigma_mw == 0.0);
    CHECK(cfg.slots == 25);
    CHECK(cfg.pedestrian_arrival.mean == 0.2);
    CHECK(cfg.pedestrian_arrival.sigma == 0.32);  // untouched
    CHECK(cfg.ped_speed_mean == 1.3);
    CHECK_FALSE(cfg.controller_enabled);
    CHECK(cfg.ticks == 600);
    CHECK(cfg.seed == 77);
    CHECK(cfg.street_length == 500.0);  // untouched
}

TEST_CASE("typos cannot silently fall back to defaults") {
    CHECK_THROWS_WITH(load_scenario(R"({"street": {"widht": 10.0}})"),
                      Catch::Matchers::ContainsSubstring("street.widht"));
    CHECK_THROWS_WITH(load_scenario(R"({"stret": {}})"),
                      Catch::Matchers::ContainsSubstring("stret"));
    CHECK_THROWS_WITH(load_scenario(R"({"pedestrians": {"rate": {"man": 1}}})"),
                      Catch::Matchers::ContainsSubstring("rate.man"));
}

TEST_CASE("type errors are rejected") {
    CHECK_THROWS_AS(load_scenario(R"({"radio": {"slots": 2.5}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"cars": {"controller": 1}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"chain": {"skip": 3}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario("not json"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario("[1,2]"), std::invalid_argument);
}

TEST_CASE("validation rejects impossible scenarios") {
    CHECK_THROWS_AS(load_scenario(R"({"street": {"width": 2.0}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"street": {"lane_center": 12.0}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"chain": {"start": 400.0}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"chain": {"skip": [99]}})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"pedestrians": {"frontage_max": 6.0}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"pedestrians": {"standoff_max": 0.01}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_scenario(R"({"run": {"ticks": 0}})"), std::invalid_argument);

    ScenarioConfig cfg;
    cfg.v_max = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
