#include <catch2/catch_amalgamated.hpp>

#include "adopt/safety_zone.hpp"

using Catch::Approx;
using namespace adopt;

namespace {

// chain at the given upstream offsets from the origin, origin first
std::vector<ChainNode> chain_at(double origin_x, const std::vector<double>& offsets) {
    std::vector<ChainNode> chain;
    int id = 0;
    for (double off : offsets) chain.push_back({id++, origin_x - off, -1, false});
    return chain;
}

AlertMessage alert_with(double origin_x, double d_live) {
    AlertMessage a;
    a.origin_car_id = 0;
    a.origin_x = origin_x;
    a.issue_tick = 100;
    a.distance_to_live = d_live;
    a.crossing_offset_d = 1.9;
    a.remaining_s = 8.0;
    return a;
}

}  // namespace

TEST_CASE("zone distance scales remaining time plus reaction slack by top speed") {
    CHECK(zone_distance(8.0, 2.0, 15.0) == 150.0);
    CHECK(zone_distance(0.0, 0.0, 15.0) == 0.0);
    CHECK_THROWS_AS(zone_distance(-0.1, 2.0, 15.0), std::domain_error);
    CHECK_THROWS_AS(zone_distance(8.0, -1.0, 15.0), std::domain_error);
    CHECK_THROWS_AS(zone_distance(8.0, 2.0, 0.0), std::domain_error);
}

TEST_CASE("the alert reaches every hop-connected car inside D") {
    ZoneResult zr = propagate_alert(chain_at(500.0, {0, 10, 20, 30, 45}), alert_with(500.0, 28.0),
                                    25.0);
    REQUIRE(zr.nodes.size() == 5);
    CHECK(zr.nodes[0].in_zone);
    CHECK(zr.nodes[1].in_zone);
    CHECK(zr.nodes[2].in_zone);
    CHECK_FALSE(zr.nodes[3].in_zone);  // reached but beyond D, discarded
    CHECK(zr.nodes[3].hop == 3);
    CHECK_FALSE(zr.nodes[4].in_zone);
    CHECK(zr.nodes[4].hop == -1);  // relay stopped, never reached
    CHECK(zr.nodes[0].hop == 0);
    CHECK(zr.nodes[2].hop == 2);
    CHECK(zr.coverage == 20.0);
    CHECK(zr.truncated);  // last 8 m of the zone hold no parked car
    CHECK(zr.fallback_range == Approx(8.0));
}

TEST_CASE("a gap wider than one hop truncates the relay") {
    ZoneResult zr =
        propagate_alert(chain_at(500.0, {0, 10, 40, 50}), alert_with(500.0, 100.0), 25.0);
    CHECK(zr.nodes[0].in_zone);
    CHECK(zr.nodes[1].in_zone);
    CHECK_FALSE(zr.nodes[2].in_zone);
    CHECK(zr.nodes[2].hop == -1);
    CHECK_FALSE(zr.nodes[3].in_zone);
    CHECK(zr.coverage == 10.0);
    CHECK(zr.truncated);
    CHECK(zr.fallback_range == Approx(90.0));
}

TEST_CASE("a chain that reaches exactly D needs no fallback") {
    ZoneResult zr = propagate_alert(chain_at(500.0, {0, 10, 20}), alert_with(500.0, 20.0), 25.0);
    CHECK(zr.nodes[2].in_zone);
    CHECK(zr.coverage == 20.0);
    CHECK_FALSE(zr.truncated);
    CHECK(zr.fallback_range == 0.0);
}

TEST_CASE("an unordered chain is rejected") {
    std::vector<ChainNode> bad = {{0, 500.0}, {1, 470.0}, {2, 480.0}};
    CHECK_THROWS_AS(propagate_alert(bad, alert_with(500.0, 100.0), 25.0), std::invalid_argument);
    CHECK_THROWS_AS(propagate_alert(chain_at(500.0, {0, 10}), alert_with(500.0, 50.0), 0.0),
                    std::domain_error);
}

TEST_CASE("fallback range is the shortfall of chain coverage") {
    CHECK(dsrc_fallback_range(0.0, 90.0, 150.0) == Approx(60.0));
    CHECK(dsrc_fallback_range(500.0, 500.0, 10.0) == Approx(10.0));
    CHECK_THROWS_AS(dsrc_fallback_range(0.0, 200.0, 150.0), std::domain_error);
}

TEST_CASE("alerts are reissued only when the zone grows") {
    CHECK_FALSE(should_reissue(150.0, 150.0));
    CHECK_FALSE(should_reissue(150.0, 140.0));
    CHECK(should_reissue(150.0, 150.1));
    CHECK(should_reissue(-1.0, 0.0));  // nothing issued yet
}

TEST_CASE("zone members compose the caution from the alert payload") {
    AlertMessage a = alert_with(500.0, 150.0);
    ChainNode member{3, 470.0, 2, true};
    CautionMessage c = emit_caution(member, a);
    CHECK(c.origin_car_id == 0);
    CHECK(c.crossing_x == Approx(501.9));
    CHECK(c.clear_time == Approx(108.0));

    ChainNode outsider{4, 400.0, -1, false};
    CHECK_THROWS_AS(emit_caution(outsider, a), std::logic_error);
}
