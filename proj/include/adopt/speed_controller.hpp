#pragma once

// Approaching-car speed adaptation. Each received Caution becomes a
// constraint "do not reach crossing line L before clear time e". The safe
// speed is the steepest slope that satisfies every live constraint, capped at
// the cruising speed; driving exactly that slope reaches the nearest
// constraint's line precisely when it expires.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "adopt/safety_zone.hpp"

namespace adopt {

// Cautions whose crossing lines differ by no more than this describe the same
// crossing; a later clear time replaces the earlier one.
inline constexpr double kCrossingMergeM = 0.5;

struct CohortConstraint {
    double crossing_x = 0.0;  // line the car must not reach early
    double clear_time = 0.0;  // absolute time the line opens
};

struct CarKinematics {
    int car_id = 0;
    double position_x = 0.0;
    double speed = 0.0;          // applied over the next tick
    double cruising_speed = 0.0; // speed with no live constraints
    bool hold_slope = false;     // recompute speed only on events instead of every tick
    std::vector<CohortConstraint> constraints;
};

// Fastest speed that still satisfies every live constraint ahead of the car.
inline double safe_speed(double position_x, double now, double cruising_speed,
                         const std::vector<CohortConstraint>& constraints) {
    if (cruising_speed < 0.0) throw std::domain_error("safe_speed: negative cruising speed");
    double v = cruising_speed;
    for (const auto& c : constraints) {
        if (c.crossing_x <= position_x) continue;  // line already behind the car
        double window = c.clear_time - now;
        if (window <= 0.0) continue;               // constraint has expired
        v = std::min(v, (c.crossing_x - position_x) / window);
    }
    return v;
}

// Piecewise-constant motion over one tick.
inline void advance_position(CarKinematics& car, double dt) {
    if (dt < 0.0) throw std::domain_error("advance_position: negative time step");
    car.position_x += car.speed * dt;
}

// Drop constraints that expired or fell behind the car. Returns true if the
// set changed (a hold-slope controller recomputes on that event).
inline bool prune_constraints(CarKinematics& car, double now) {
    auto stale = [&](const CohortConstraint& c) {
        return c.clear_time <= now || c.crossing_x <= car.position_x;
    };
    auto it = std::remove_if(car.constraints.begin(), car.constraints.end(), stale);
    bool changed = it != car.constraints.end();
    car.constraints.erase(it, car.constraints.end());
    return changed;
}

// Fold one received Caution into the constraint set. Returns true if the set
// changed. A Caution for a line the car already passed is ignored; a Caution
// for an already-known crossing replaces its clear time.
inline bool on_caution(CarKinematics& car, const CautionMessage& msg) {
    if (msg.crossing_x <= car.position_x) return false;
    for (auto& c : car.constraints) {
        if (std::abs(c.crossing_x - msg.crossing_x) <= kCrossingMergeM) {
            if (c.clear_time == msg.clear_time && c.crossing_x == msg.crossing_x) return false;
            c.crossing_x = msg.crossing_x;
            c.clear_time = msg.clear_time;
            return true;
        }
    }
    car.constraints.push_back({msg.crossing_x, msg.clear_time});
    return true;
}

// Per-tick controller step: prune, fold in this tick's cautions, then choose
// the speed. The default controller re-derives the slope every tick; the
// hold-slope variant keeps the current speed between events.
inline void control_speed(CarKinematics& car, const std::vector<CautionMessage>& received,
                          double now) {
    bool changed = prune_constraints(car, now);
    for (const auto& msg : received) changed = on_caution(car, msg) || changed;
    if (!car.hold_slope || changed)
        car.speed = safe_speed(car.position_x, now, car.cruising_speed, car.constraints);
}

}  // namespace adopt
