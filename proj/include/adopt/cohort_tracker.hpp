#pragma once

// Per-car tracking of the crossing cohort. The tracker never identifies
// individual pedestrians; it follows the tail of the cohort, the smallest
// lateral position classified in the street at this car, and estimates how
// long until that tail reaches the far side.

#include <optional>
#include <stdexcept>
#include <vector>

#include "adopt/geoloc.hpp"

namespace adopt {

// How the current speed/remaining-time estimate was obtained. The first
// sample of a cohort and joiner samples carry the configured average speed
// rather than a measurement; metrics treat them differently.
enum class CohortUpdate {
    Initialized,   // first in-street fix, speed assumed = average
    Advanced,      // tail moved forward, speed measured from the step
    Joined,        // tail moved backward: someone new entered, speed reset to average
    Held,          // tail did not move, previous speed retained
    Coasted,       // no fix this tick, dead reckoning
    Completed,     // tail reached the far side, cohort closed
};

struct CohortState {
    bool active = false;
    double tail_y = 0.0;        // lateral position of the cohort tail
    double tail_d = 0.0;        // longitudinal offset of the tail's crossing line
    double speed = 0.0;         // current tail speed estimate, m/s
    double remaining_s = 0.0;   // estimated time until the tail clears the street
    int last_update_tick = -1;
    int tail_pedestrian_id = -1;        // ground-truth attribution for metrics only
    CohortUpdate last_update = CohortUpdate::Completed;
    double last_issued_distance = -1.0;  // largest zone distance already transmitted
};

// Time for a walker at `lateral_y` moving at `speed` to reach the far side.
inline double remaining_time(double street_width, double lateral_y, double speed) {
    if (speed <= 0.0) throw std::domain_error("remaining_time: speed must be positive");
    if (lateral_y > street_width) throw std::domain_error("remaining_time: already across");
    double t = (street_width - lateral_y) / speed;
    return t < 0.0 ? 0.0 : t;
}

// The tail is the least advanced in-street fix this tick.
inline std::optional<PedestrianFix> select_tail(const std::vector<PedestrianFix>& street_fixes) {
    std::optional<PedestrianFix> tail;
    for (const auto& fix : street_fixes)
        if (!tail || fix.lateral_y < tail->lateral_y) tail = fix;
    return tail;
}

// First in-street fix at this car: open a cohort, assuming the average
// walking speed until a second fix lets us measure.
inline CohortState initialize_cohort(const PedestrianFix& tail, double average_speed,
                                     double street_width, int tick) {
    if (average_speed <= 0.0)
        throw std::domain_error("initialize_cohort: average speed must be positive");
    CohortState s;
    s.active = true;
    s.tail_y = tail.lateral_y;
    s.tail_d = tail.longitudinal_d;
    s.speed = average_speed;
    s.remaining_s = remaining_time(street_width, tail.lateral_y, average_speed);
    s.last_update_tick = tick;
    s.tail_pedestrian_id = tail.pedestrian_id;
    s.last_update = CohortUpdate::Initialized;
    return s;
}

// One tracking step with a fresh tail fix. Movement forward measures the
// speed directly; movement backward means a new pedestrian joined and the
// measured history no longer describes the tail, so fall back to the average
// speed; no movement keeps the previous estimate.
inline void update_cohort(CohortState& s, const PedestrianFix& tail, double average_speed,
                          double street_width, int tick) {
    if (!s.active) throw std::logic_error("update_cohort: cohort not active");
    double y = tail.lateral_y;
    if (y >= street_width) {
        s.active = false;
        s.tail_y = y;
        s.remaining_s = 0.0;
        s.last_update_tick = tick;
        s.last_update = CohortUpdate::Completed;
        return;
    }
    double dt = tick - s.last_update_tick;
    if (y > s.tail_y && dt > 0.0) {
        s.speed = (y - s.tail_y) / dt;
        s.last_update = CohortUpdate::Advanced;
    } else if (y < s.tail_y) {
        s.speed = average_speed;
        s.last_update = CohortUpdate::Joined;
    } else {
        s.last_update = CohortUpdate::Held;
    }
    s.tail_y = y;
    s.tail_d = tail.longitudinal_d;
    s.tail_pedestrian_id = tail.pedestrian_id;
    s.remaining_s = remaining_time(street_width, y, s.speed);
    s.last_update_tick = tick;
}

// No clear in-street fix arrived this tick: dead-reckon the tail forward at
// its last estimated speed and close the cohort once it projects across.
inline void coast_cohort(CohortState& s, double street_width, int tick) {
    if (!s.active) throw std::logic_error("coast_cohort: cohort not active");
    double dt = tick - s.last_update_tick;
    s.tail_y += s.speed * dt;
    s.last_update_tick = tick;
    s.tail_pedestrian_id = -1;  // nothing observed, attribution unknown
    if (s.tail_y >= street_width) {
        s.active = false;
        s.remaining_s = 0.0;
        s.last_update = CohortUpdate::Completed;
    } else {
        s.remaining_s = remaining_time(street_width, s.tail_y, s.speed);
        s.last_update = CohortUpdate::Coasted;
    }
}

}  // namespace adopt
