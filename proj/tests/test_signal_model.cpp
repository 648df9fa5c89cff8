#include <catch2/catch_amalgamated.hpp>

#include "adopt/signal_model.hpp"

using Catch::Approx;
using namespace adopt;

TEST_CASE("free-space rss follows the inverse square law") {
    CHECK(free_space_rss(2.0, 1.0, 2.0) == 0.5);
    CHECK(free_space_rss(2.0, 10.0, 2.0) == 5.0);
    CHECK(free_space_rss(2.0, 1.0, 1.0) == 2.0);
    // quadrupling distance cuts the signal by 16
    CHECK(free_space_rss(2.0, 1.0, 4.0) == Approx(free_space_rss(2.0, 1.0, 1.0) / 16.0));

    TransmitterSpec tx;
    tx.power_mw = 2.0;
    tx.env_gamma = 1.0;
    CHECK(free_space_rss(tx, 2.0) == 0.5);
}

TEST_CASE("degenerate and invalid ranging inputs are rejected") {
    CHECK_THROWS_AS(free_space_rss(2.0, 1.0, 0.01), std::domain_error);
    CHECK_THROWS_AS(free_space_rss(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(free_space_rss(2.0, 0.0, 1.0), std::domain_error);
    CHECK_NOTHROW(free_space_rss(2.0, 1.0, kMinDistanceM));

    CHECK_THROWS_AS(distance_from_rss(kRssFloorMw / 2.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(distance_from_rss(1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("ranging inverts the signal model") {
    TransmitterSpec tx;
    tx.power_mw = 2.0;
    tx.env_gamma = 10.0;
    for (double d : {0.05, 0.5, 1.0, 2.7, 3.5, 10.0}) {
        double rss = free_space_rss(tx, d);
        CHECK(distance_from_rss(rss, tx) == Approx(d).margin(1e-12));
    }
}

TEST_CASE("noise is additive, seeded, and clamped at the floor") {
    NoiseSpec off;
    off.sigma_mw = 0.0;
    RngStream rng(1, "noise");
    CHECK(apply_noise(0.73, off, rng) == 0.73);

    NoiseSpec on;
    on.sigma_mw = 0.3;
    RngStream a(42, "noise"), b(42, "noise");
    for (int i = 0; i < 100; ++i) CHECK(apply_noise(5.0, on, a) == apply_noise(5.0, on, b));

    // near-zero signal with wide noise pins half the draws to the floor
    NoiseSpec wide;
    wide.sigma_mw = 5.0;
    RngStream c(7, "noise");
    double min_seen = 1e9;
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double v = apply_noise(kRssFloorMw, wide, c);
        min_seen = std::min(min_seen, v);
        sum += v;
    }
    CHECK(min_seen == kRssFloorMw);

    RngStream d(7, "noise");
    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += apply_noise(10.0, on, d);
    CHECK(sum / n == Approx(10.0).margin(0.02));

    NoiseSpec bad;
    bad.sigma_mw = -1.0;
    CHECK_THROWS_AS(apply_noise(1.0, bad, d), std::domain_error);
}

TEST_CASE("slot assignment marks sole occupants as clear") {
    RngStream rng(3, "slots");
    SlotAssignment lone = assign_slots({17}, 50, rng);
    CHECK(lone.clear.at(17));
    CHECK(lone.slot_of.at(17) >= 0);
    CHECK(lone.slot_of.at(17) < 50);

    // one slot forces every pair to collide
    SlotAssignment jam = assign_slots({1, 2}, 1, rng);
    CHECK_FALSE(jam.clear.at(1));
    CHECK_FALSE(jam.clear.at(2));

    RngStream r1(9, "slots"), r2(9, "slots");
    SlotAssignment a = assign_slots({1, 2, 3, 4}, 50, r1);
    SlotAssignment b = assign_slots({1, 2, 3, 4}, 50, r2);
    for (int id : {1, 2, 3, 4}) {
        CHECK(a.slot_of.at(id) == b.slot_of.at(id));
        CHECK(a.clear.at(id) == b.clear.at(id));
    }

    CHECK_THROWS_AS(assign_slots({1}, 0, rng), std::domain_error);
}

TEST_CASE("expected clear transmission count") {
    CHECK(expected_clear(8, 50) == Approx(6.94500426597376).epsilon(1e-12));
    CHECK(expected_clear(1, 50) == 1.0);
    CHECK(expected_clear(0, 50) == 0.0);
    CHECK(expected_clear(2, 2) == 1.0);
    CHECK_THROWS_AS(expected_clear(-1, 50), std::domain_error);
    CHECK_THROWS_AS(expected_clear(3, 0), std::domain_error);
}

TEST_CASE("simulated clear counts track the closed form") {
    RngStream rng(123, "slots.mc");
    std::vector<int> ids = {0, 1, 2};
    const int trials = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        SlotAssignment a = assign_slots(ids, 10, rng);
        int clear = 0;
        for (int id : ids) clear += a.clear.at(id) ? 1 : 0;
        sum += clear;
        sumsq += double(clear) * clear;
    }
    double mean = sum / trials;
    double se = std::sqrt((sumsq - sum * sum / trials) / (trials - 1) / trials);
    CHECK(std::abs(mean - expected_clear(3, 10)) < 3.0 * se + 1e-9);
}
