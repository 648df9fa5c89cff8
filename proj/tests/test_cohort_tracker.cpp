#include <catch2/catch_amalgamated.hpp>

#include "adopt/cohort_tracker.hpp"

using Catch::Approx;
using namespace adopt;

namespace {
PedestrianFix fix(int tick, int ped, double y, double d = 1.0) {
    return {tick, ped, 0, y, d};
}
}  // namespace

TEST_CASE("remaining time to the far side") {
    CHECK(remaining_time(12.8, 0.5, 1.2) == Approx(10.25).epsilon(1e-12));
    CHECK(remaining_time(12.8, 12.8, 1.2) == 0.0);
    CHECK_THROWS_AS(remaining_time(12.8, 13.0, 1.2), std::domain_error);
    CHECK_THROWS_AS(remaining_time(12.8, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(remaining_time(12.8, 1.0, -1.0), std::domain_error);
}

TEST_CASE("tail selection takes the least advanced fix") {
    CHECK_FALSE(select_tail({}).has_value());
    auto tail = select_tail({fix(1, 4, 3.0), fix(1, 7, 0.8), fix(1, 9, 5.5)});
    REQUIRE(tail.has_value());
    CHECK(tail->pedestrian_id == 7);
    CHECK(tail->lateral_y == 0.8);
}

TEST_CASE("first fix opens the cohort with the assumed speed") {
    CohortState s = initialize_cohort(fix(5, 3, 0.5, 1.4), 1.2, 12.8, 5);
    CHECK(s.active);
    CHECK(s.tail_y == 0.5);
    CHECK(s.tail_d == 1.4);
    CHECK(s.speed == 1.2);
    CHECK(s.remaining_s == Approx(10.25));
    CHECK(s.tail_pedestrian_id == 3);
    CHECK(s.last_update == CohortUpdate::Initialized);
    CHECK(s.last_issued_distance == -1.0);
    CHECK_THROWS_AS(initialize_cohort(fix(5, 3, 0.5), 0.0, 12.8, 5), std::domain_error);
}

TEST_CASE("forward movement measures the tail speed") {
    CohortState s = initialize_cohort(fix(5, 3, 2.0), 1.2, 12.8, 5);
    update_cohort(s, fix(6, 3, 3.2), 1.2, 12.8, 6);
    CHECK(s.last_update == CohortUpdate::Advanced);
    CHECK(s.speed == Approx(1.2));
    CHECK(s.remaining_s == Approx(8.0));

    // a two-tick gap divides the step by the elapsed time
    update_cohort(s, fix(8, 3, 5.6), 1.2, 12.8, 8);
    CHECK(s.last_update == CohortUpdate::Advanced);
    CHECK(s.speed == Approx(1.2));
}

TEST_CASE("a backward tail means a joiner and resets to the assumed speed") {
    CohortState s = initialize_cohort(fix(5, 3, 2.0), 1.2, 12.8, 5);
    update_cohort(s, fix(6, 3, 3.2), 1.2, 12.8, 6);
    update_cohort(s, fix(7, 9, 0.8), 1.2, 12.8, 7);
    CHECK(s.last_update == CohortUpdate::Joined);
    CHECK(s.speed == 1.2);
    CHECK(s.remaining_s == Approx(10.0));
    CHECK(s.tail_pedestrian_id == 9);
}

TEST_CASE("an unmoved tail keeps the measured speed") {
    CohortState s = initialize_cohort(fix(5, 3, 2.0), 1.2, 12.8, 5);
    update_cohort(s, fix(6, 3, 3.5), 1.2, 12.8, 6);
    double measured = s.speed;
    update_cohort(s, fix(7, 3, 3.5), 1.2, 12.8, 7);
    CHECK(s.last_update == CohortUpdate::Held);
    CHECK(s.speed == measured);
}

TEST_CASE("reaching the far side closes the cohort") {
    CohortState s = initialize_cohort(fix(5, 3, 11.0), 1.2, 12.8, 5);
    update_cohort(s, fix(6, 3, 12.8), 1.2, 12.8, 6);
    CHECK_FALSE(s.active);
    CHECK(s.remaining_s == 0.0);
    CHECK(s.last_update == CohortUpdate::Completed);
    CHECK_THROWS_AS(update_cohort(s, fix(7, 3, 1.0), 1.2, 12.8, 7), std::logic_error);
    CHECK_THROWS_AS(coast_cohort(s, 12.8, 7), std::logic_error);
}

TEST_CASE("coasting dead-reckons the tail and closes on projection") {
    CohortState s = initialize_cohort(fix(5, 3, 8.0), 1.2, 12.8, 5);
    update_cohort(s, fix(6, 3, 10.0), 1.2, 12.8, 6);
    REQUIRE(s.speed == Approx(2.0));

    coast_cohort(s, 12.8, 7);
    CHECK(s.last_update == CohortUpdate::Coasted);
    CHECK(s.tail_y == Approx(12.0));
    CHECK(s.remaining_s == Approx(0.4));
    CHECK(s.tail_pedestrian_id == -1);  // nothing observed this tick

    coast_cohort(s, 12.8, 8);
    CHECK_FALSE(s.active);
    CHECK(s.last_update == CohortUpdate::Completed);
    CHECK(s.remaining_s == 0.0);
}
