#pragma once

// Safety Zone construction and message relay down the chain of parked cars.
//
// When a parked car detects a crossing it issues an Alert that hops backward
// (against traffic) from parked car to parked car. Cars stop relaying once
// they sit farther from the origin than the zone distance D; the zone is
// therefore a contiguous prefix of the chain. Every car inside the zone
// repeatedly broadcasts a short-range Caution describing the crossing, so an
// approaching car learns of it the moment it passes any zone member. If the
// chain runs out (or a gap too wide to hop truncates it) before D is covered,
// the last reachable car covers the shortfall with its longer-range radio.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace adopt {

struct AlertMessage {
    int origin_car_id = 0;
    double origin_x = 0.0;         // front-axle position of the detecting car
    int issue_tick = 0;
    double distance_to_live = 0.0; // zone distance D at issue time
    // payload the zone cars need to compose Cautions hop-distances away
    double crossing_offset_d = 0.0;  // crossing line is origin_x + this
    double remaining_s = 0.0;        // estimated crossing time left at issue
};

struct CautionMessage {
    int origin_car_id = 0;
    double crossing_x = 0.0;   // longitudinal position of the crossing line
    double clear_time = 0.0;   // absolute time the cohort is expected across
};

struct ChainNode {
    int car_id = 0;
    double position_x = 0.0;
    int hop = -1;           // hops from the origin; -1 = never reached
    bool in_zone = false;
};

struct ZoneResult {
    std::vector<ChainNode> nodes;   // the chain, origin first, annotated
    double coverage = 0.0;          // |origin - last in-zone car|
    bool truncated = false;         // chain ended or gap broke it before D
    double fallback_range = 0.0;    // residual the last car must cover directly
};

// D(t): how far behind the crossing a car at top speed must be to arrive no
// earlier than the cohort clears, with `reaction_s` of slack.
inline double zone_distance(double remaining_s, double reaction_s, double v_max) {
    if (remaining_s < 0.0) throw std::domain_error("zone_distance: negative remaining time");
    if (reaction_s < 0.0) throw std::domain_error("zone_distance: negative reaction time");
    if (v_max <= 0.0) throw std::domain_error("zone_distance: v_max must be positive");
    return (remaining_s + reaction_s) * v_max;
}

// Walk the chain away from the origin, marking zone membership. `chain` must
// be ordered by increasing distance from the origin, origin itself first.
// A hop succeeds while the next car is within `hop_range` of the previous
// one; the walk stops at the first failed hop or the first car beyond D.
inline ZoneResult propagate_alert(std::vector<ChainNode> chain, const AlertMessage& alert,
                                  double hop_range) {
    if (hop_range <= 0.0) throw std::domain_error("propagate_alert: hop range must be positive");
    double prev_offset = 0.0;
    for (const auto& node : chain) {
        double offset = std::abs(node.position_x - alert.origin_x);
        if (offset < prev_offset)
            throw std::invalid_argument("propagate_alert: chain not ordered by distance from origin");
        prev_offset = offset;
    }
    ZoneResult out;
    double d_live = alert.distance_to_live;
    double last_x = alert.origin_x;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        auto& node = chain[i];
        if (i > 0 && std::abs(node.position_x - last_x) > hop_range)
            break;  // gap too wide, relay cannot reach this car
        node.hop = static_cast<int>(i);
        double offset = std::abs(node.position_x - alert.origin_x);
        if (offset <= d_live) {
            node.in_zone = true;
            out.coverage = offset;
            last_x = node.position_x;
        } else {
            break;  // beyond the zone: discard, do not relay further
        }
    }
    out.nodes = std::move(chain);
    out.truncated = out.coverage < d_live;
    out.fallback_range = out.truncated ? d_live - out.coverage : 0.0;
    return out;
}

// Residual range the last in-zone car covers with its long-range radio when
// the chain stops short of D.
inline double dsrc_fallback_range(double origin_x, double last_in_zone_x, double distance_to_live) {
    double coverage = std::abs(last_in_zone_x - origin_x);
    if (coverage > distance_to_live)
        throw std::domain_error("dsrc_fallback_range: last car lies outside the zone");
    return distance_to_live - coverage;
}

// An update is worth transmitting only if it enlarges the zone.
inline bool should_reissue(double previous_distance, double new_distance) {
    return new_distance > previous_distance;
}

// Caution a zone member broadcasts for the given alert.
inline CautionMessage emit_caution(const ChainNode& node, const AlertMessage& alert) {
    if (!node.in_zone) throw std::logic_error("emit_caution: node is not in the zone");
    CautionMessage c;
    c.origin_car_id = alert.origin_car_id;
    c.crossing_x = alert.origin_x + alert.crossing_offset_d;
    c.clear_time = alert.issue_tick + alert.remaining_s;
    return c;
}

}  // namespace adopt
