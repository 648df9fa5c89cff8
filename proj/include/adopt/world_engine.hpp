#pragma once

// The discrete-time world. One tick = one second. Per tick, in order:
//   1. move approaching cars and pedestrians, run collision checks, spawn
//   2. shoe transmissions pick slots; in-range ones register as observations
//   3. clear observations are classified and localized
//   4. each parked car updates (or coasts) its cohort
//   5. active cohorts issue/refresh zone alerts; zone cars emit Cautions
//   6. approaching cars fold received Cautions and choose a speed
//   7. everything lands in the trace
//
// Alerts, Cautions and the speed response all complete within the tick that
// triggered them, so a car's next movement already respects a crossing
// detected this second.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adopt/cohort_tracker.hpp"
#include "adopt/geoloc.hpp"
#include "adopt/rng.hpp"
#include "adopt/safety_zone.hpp"
#include "adopt/scenario.hpp"
#include "adopt/signal_model.hpp"
#include "adopt/speed_controller.hpp"
#include "adopt/trace.hpp"

namespace adopt {

enum class PedPhase { OnSidewalk, Crossing, Done };

struct GroundTruthPedestrian {
    int id = 0;
    PedPhase phase = PedPhase::OnSidewalk;
    int owner_car = 0;           // parked car it steps off in front of
    double crossing_x = 0.0;     // longitudinal position of its crossing line
    double standoff = 0.0;       // dwell distance behind the sidewalk edge
    double lateral = 0.0;        // current lateral position; negative while dwelling
    double speed = 0.0;          // true crossing speed
    int spawn_tick = 0;
    int crossing_start_tick = 0; // first tick with a step into the street
    int done_tick = -1;
};

struct ParkedCar {
    int id = 0;
    CarGeometry geom;
    CohortState cohort;
    // last issued alert and its zone, kept while the cohort lives
    bool alert_active = false;
    AlertMessage alert;
    std::vector<int> zone_members;  // parked car ids inside the zone
    double zone_coverage = 0.0;
    double zone_fallback = 0.0;
    bool zone_truncated = false;
    // ground-truth driven alert state for the oracle-caution harness
    bool oracle_active = false;
    double oracle_last_distance = -1.0;
};

struct ApproachingCar {
    CarKinematics kin;
    int spawn_tick = 0;
    bool active = true;
};

struct WorldCounters {
    int pedestrians_spawned = 0;
    int crossings_started = 0;
    int crossings_completed = 0;
    int cars_spawned = 0;
    int cars_exited = 0;
    long transmissions = 0;
    long observations = 0;
    long clear_observations = 0;
    long anomalies = 0;
    int alerts_issued = 0;
    long cautions_accepted = 0;  // deliveries that changed a constraint set
    int collision_events = 0;    // distinct (car, pedestrian) box overlaps
};

struct RunResult {
    ScenarioConfig config;
    std::vector<TraceRow> rows;
    WorldCounters counters;
    double detected_per_sec_mean = 0.0;
    double detected_per_sec_sigma = 0.0;
};

class World {
public:
    explicit World(ScenarioConfig cfg)
        : cfg_(std::move(cfg)),
          ped_rng_(cfg_.seed, "traffic.pedestrians"),
          car_rng_(cfg_.seed, "traffic.cars"),
          slot_rng_(cfg_.seed, "slots"),
          noise_rng_(cfg_.seed, "noise") {
        cfg_.validate();
        tx_.power_mw = cfg_.power_mw;
        tx_.frequency_ghz = cfg_.frequency_ghz;
        tx_.env_gamma = cfg_.env_gamma;
        noise_.sigma_mw = cfg_.sigma_mw;
        noise_.rng_seed = cfg_.seed;
        for (int i = 0; i < cfg_.chain_count; ++i) {
            if (std::find(cfg_.chain_skip.begin(), cfg_.chain_skip.end(), i) != cfg_.chain_skip.end())
                continue;
            ParkedCar p;
            p.id = static_cast<int>(parked_.size());
            p.geom.width_w = cfg_.car_width;
            p.geom.sidewalk_gap_z = cfg_.sidewalk_gap;
            p.geom.street_width_W = cfg_.street_width;
            p.geom.position_x = cfg_.chain_start + cfg_.chain_spacing * i;
            p.geom.validate();
            parked_.push_back(p);
        }
        if (parked_.empty()) throw std::invalid_argument("world: chain has no cars left");
    }

    // Scripted entities for tests and the acceptance harness; call before step().
    int inject_pedestrian(int owner_car, double frontage_d, double standoff, double speed,
                          int crossing_start_tick) {
        if (owner_car < 0 || owner_car >= static_cast<int>(parked_.size()))
            throw std::invalid_argument("inject_pedestrian: no such parked car");
        GroundTruthPedestrian w;
        w.id = next_ped_id_++;
        w.owner_car = owner_car;
        w.crossing_x = parked_[owner_car].geom.position_x + frontage_d;
        w.standoff = standoff;
        w.lateral = -standoff;
        w.speed = speed;
        w.spawn_tick = tick_;
        w.crossing_start_tick = crossing_start_tick;
        walkers_.push_back(w);
        ++counters_.pedestrians_spawned;
        return w.id;
    }

    void inject_car(double position_x, double speed) {
        ApproachingCar c;
        c.kin.car_id = next_car_id_++;
        c.kin.position_x = position_x;
        c.kin.speed = speed;
        c.kin.cruising_speed = cfg_.cruise();
        c.kin.hold_slope = cfg_.hold_slope;
        c.spawn_tick = tick_;
        movers_.push_back(c);
        ++counters_.cars_spawned;
    }

    int tick() const { return tick_; }
    const std::vector<ParkedCar>& parked() const { return parked_; }
    const std::vector<GroundTruthPedestrian>& pedestrians() const { return walkers_; }
    const std::vector<ApproachingCar>& cars() const { return movers_; }
    const WorldCounters& counters() const { return counters_; }
    const std::vector<TraceRow>& rows() const { return rows_; }

    void step() {
        const int t = tick_;
        move_and_collide(t);
        spawn(t);
        record_pedestrians(t);
        std::vector<std::vector<PedestrianFix>> fixes(parked_.size());
        transmissions(t, fixes);
        cohorts(t, fixes);
        alerts(t);
        drive(t);
        ++tick_;
    }

    RunResult run() {
        std::vector<long> clear_per_tick;
        clear_per_tick.reserve(cfg_.ticks);
        long prev_clear = 0;
        for (int i = 0; i < cfg_.ticks; ++i) {
            step();
            clear_per_tick.push_back(counters_.clear_observations - prev_clear);
            prev_clear = counters_.clear_observations;
        }
        RunResult out;
        out.config = cfg_;
        out.counters = counters_;
        double mean = 0.0;
        for (long c : clear_per_tick) mean += static_cast<double>(c);
        mean /= clear_per_tick.empty() ? 1.0 : static_cast<double>(clear_per_tick.size());
        double var = 0.0;
        for (long c : clear_per_tick) var += (c - mean) * (c - mean);
        if (clear_per_tick.size() > 1) var /= static_cast<double>(clear_per_tick.size() - 1);
        out.detected_per_sec_mean = mean;
        out.detected_per_sec_sigma = std::sqrt(var);
        out.rows = std::move(rows_);
        return out;
    }

private:
    static double clamp_distance(double d) { return d < kMinDistanceM ? kMinDistanceM : d; }

    double true_remaining(const GroundTruthPedestrian& w) const {
        double rem = (cfg_.street_width - w.lateral) / w.speed;
        return rem < 0.0 ? 0.0 : rem;
    }

    void move_and_collide(int t) {
        struct Span {
            double from, to;
        };
        std::vector<std::pair<const ApproachingCar*, Span>> car_spans;
        for (auto& m : movers_) {
            if (!m.active) continue;
            double from = m.kin.position_x;
            advance_position(m.kin, 1.0);
            if (m.kin.position_x > cfg_.street_length) {
                m.active = false;
                ++counters_.cars_exited;
            }
            car_spans.push_back({&m, {from, m.kin.position_x}});
        }
        const double lane_lo = cfg_.lane_center - cfg_.lane_width / 2.0;
        const double lane_hi = cfg_.lane_center + cfg_.lane_width / 2.0;
        for (auto& w : walkers_) {
            if (w.phase == PedPhase::Done) continue;
            double lat_from = w.lateral;
            if (w.phase == PedPhase::OnSidewalk && t >= w.crossing_start_tick) {
                w.phase = PedPhase::Crossing;
                ++counters_.crossings_started;
            }
            bool crossing_now = w.phase == PedPhase::Crossing;
            if (crossing_now) {
                w.lateral = w.speed * (t - w.crossing_start_tick + 1);
                if (t == w.crossing_start_tick) lat_from = 0.0;  // stepped off mid-tick
                if (w.lateral >= cfg_.street_width) {
                    w.phase = PedPhase::Done;
                    w.done_tick = t;
                    ++counters_.crossings_completed;
                }
            }
            if (!crossing_now) continue;
            // collision box: 1 m along the street, the car's lane across it,
            // swept at 0.1 s resolution against both motions
            for (auto& [mv, span] : car_spans) {
                double worst = NAN;
                for (int k = 1; k <= 10; ++k) {
                    double tau = 0.1 * k;
                    double car_x = span.from + (span.to - span.from) * tau;
                    double lat = lat_from + (w.lateral - lat_from) * tau;
                    if (lat < lane_lo || lat > lane_hi || lat >= cfg_.street_width) continue;
                    double off = car_x - w.crossing_x;
                    if (std::abs(off) <= 0.5 && (std::isnan(worst) || off > worst)) worst = off;
                }
                if (!std::isnan(worst)) {
                    ++counters_.collision_events;
                    TraceRow r;
                    r.tick = t;
                    r.record = "collision";
                    r.ped = w.id;
                    r.car = mv->kin.car_id;
                    r.x = mv->kin.position_x;
                    r.crossing_x = w.crossing_x;
                    r.offset = worst;
                    rows_.push_back(std::move(r));
                }
            }
        }
    }

    int draw_count(RngStream& rng, const RateSpec& rate) {
        if (rate.mean <= 0.0 && rate.sigma <= 0.0) return 0;
        double n = rng.gaussian(rate.mean, rate.sigma);
        long rounded = std::lround(n);
        return rounded < 0 ? 0 : static_cast<int>(rounded);
    }

    void spawn(int t) {
        int peds = draw_count(ped_rng_, cfg_.pedestrian_arrival);
        for (int i = 0; i < peds; ++i) {
            GroundTruthPedestrian w;
            w.id = next_ped_id_++;
            w.owner_car = static_cast<int>(ped_rng_.below(parked_.size()));
            double d = ped_rng_.uniform(cfg_.frontage_min, cfg_.frontage_max);
            w.crossing_x = parked_[w.owner_car].geom.position_x + d;
            w.standoff = ped_rng_.uniform(cfg_.standoff_min, cfg_.standoff_max);
            w.lateral = -w.standoff;
            do {
                w.speed = ped_rng_.gaussian(cfg_.ped_speed_mean, cfg_.ped_speed_sigma);
            } while (w.speed < 0.1);
            int dwell = static_cast<int>(std::ceil(ped_rng_.exponential(cfg_.dwell_mean_s)));
            if (dwell < 1) dwell = 1;
            w.spawn_tick = t;
            w.crossing_start_tick = t + dwell;
            walkers_.push_back(w);
            ++counters_.pedestrians_spawned;
        }
        int cars = draw_count(car_rng_, cfg_.car_arrival);
        for (int i = 0; i < cars; ++i) {
            ApproachingCar c;
            c.kin.car_id = next_car_id_++;
            c.kin.position_x = 0.0;
            c.kin.speed = cfg_.cruise();
            c.kin.cruising_speed = cfg_.cruise();
            c.kin.hold_slope = cfg_.hold_slope;
            c.spawn_tick = t;
            movers_.push_back(c);
            ++counters_.cars_spawned;
        }
    }

    void record_pedestrians(int t) {
        for (const auto& w : walkers_) {
            if (w.phase == PedPhase::Done && w.done_tick != t) continue;
            TraceRow r;
            r.tick = t;
            r.record = "ped";
            r.ped = w.id;
            r.car = w.owner_car;
            r.phase = w.phase == PedPhase::OnSidewalk ? "sidewalk"
                      : w.phase == PedPhase::Crossing ? "crossing"
                                                      : "done";
            r.x = w.crossing_x;
            r.lat = w.lateral;
            r.speed = w.speed;
            rows_.push_back(std::move(r));
        }
    }

    void transmissions(int t, std::vector<std::vector<PedestrianFix>>& fixes) {
        // group active transmitters by the car they are in front of
        std::vector<std::vector<int>> by_car(parked_.size());
        for (std::size_t i = 0; i < walkers_.size(); ++i)
            if (walkers_[i].phase != PedPhase::Done)
                by_car[walkers_[i].owner_car].push_back(static_cast<int>(i));

        for (auto& p : parked_) {
            auto& idxs = by_car[p.id];
            if (idxs.empty()) continue;
            std::vector<int> ids;
            ids.reserve(idxs.size());
            for (int i : idxs) ids.push_back(walkers_[i].id);
            counters_.transmissions += static_cast<long>(ids.size());
            SlotAssignment slots = assign_slots(ids, cfg_.slots, slot_rng_);

            for (int wi : idxs) {
                auto& w = walkers_[wi];
                double front_x = p.geom.position_x;
                double rear_x = front_x - cfg_.axle_separation;
                double right_lat = p.geom.sidewalk_gap_z;
                double left_lat = p.geom.sidewalk_gap_z + p.geom.width_w;
                double dx_f = w.crossing_x - front_x;
                double dx_r = w.crossing_x - rear_x;
                double d_fr = std::hypot(dx_f, w.lateral - right_lat);
                double d_fl = std::hypot(dx_f, w.lateral - left_lat);
                // the front pair does the detecting; both must be in range
                if (d_fr > cfg_.detection_range || d_fl > cfg_.detection_range) continue;
                double d_rr = std::hypot(dx_r, w.lateral - right_lat);
                double d_rl = std::hypot(dx_r, w.lateral - left_lat);

                TraceRow r;
                r.tick = t;
                r.record = "obs";
                r.ped = w.id;
                r.car = p.id;
                r.slot = slots.slot_of.at(w.id);
                r.clear = slots.clear.at(w.id) ? 1 : 0;
                r.truth = w.phase == PedPhase::Crossing ? "street" : "sidewalk";
                r.x = w.crossing_x;
                r.lat = w.lateral;
                r.d_true = std::abs(dx_f);
                r.rss_fl = apply_noise(free_space_rss(tx_, clamp_distance(d_fl)), noise_, noise_rng_);
                r.rss_fr = apply_noise(free_space_rss(tx_, clamp_distance(d_fr)), noise_, noise_rng_);
                r.rss_rl = apply_noise(free_space_rss(tx_, clamp_distance(d_rl)), noise_, noise_rng_);
                r.rss_rr = apply_noise(free_space_rss(tx_, clamp_distance(d_rr)), noise_, noise_rng_);
                ++counters_.observations;

                if (r.clear == 1) {
                    ++counters_.clear_observations;
                    Classification cls = classify(r.rss_fl, r.rss_fr, p.geom, tx_);
                    r.verdict = cls.verdict == Verdict::InStreet ? "street" : "sidewalk";

                    double tol = cfg_.sigma_mw > 0.0 ? kTriangleSlackNoisy : kTriangleTolExact;
                    bool d_ok = false;
                    try {
                        double est_l = distance_from_rss(r.rss_fl, tx_);
                        double est_r = distance_from_rss(r.rss_fr, tx_);
                        r.d_est = longitudinal_d(est_l, est_r, p.geom.width_w, tol);
                        d_ok = true;
                    } catch (const std::domain_error&) {
                        push_anomaly(t, w.id, p.id, "triangle-violation");
                    }
                    if (cls.verdict == Verdict::InStreet) {
                        double y = lateral_y(r.rss_fl, r.rss_fr, p.geom, tx_);
                        if (y < 0.0 || y > cfg_.street_width) {
                            push_anomaly(t, w.id, p.id, "lateral-out-of-range");
                        } else if (d_ok) {
                            r.y_est = y;
                            fixes[p.id].push_back({t, w.id, p.id, y, r.d_est});
                        } else {
                            push_anomaly(t, w.id, p.id, "fix-without-distance");
                        }
                    }
                }
                rows_.push_back(std::move(r));
            }
        }
    }

    void push_anomaly(int t, int ped, int car, const char* reason) {
        ++counters_.anomalies;
        TraceRow r;
        r.tick = t;
        r.record = "anomaly";
        r.ped = ped;
        r.car = car;
        r.note = reason;
        rows_.push_back(std::move(r));
    }

    const char* update_name(CohortUpdate u) const {
        switch (u) {
            case CohortUpdate::Initialized: return "init";
            case CohortUpdate::Advanced: return "advance";
            case CohortUpdate::Joined: return "join";
            case CohortUpdate::Held: return "hold";
            case CohortUpdate::Coasted: return "coast";
            case CohortUpdate::Completed: return "complete";
        }
        return "?";
    }

    void cohorts(int t, const std::vector<std::vector<PedestrianFix>>& fixes) {
        for (auto& p : parked_) {
            auto tail = select_tail(fixes[p.id]);
            bool was_active = p.cohort.active;
            if (p.cohort.active) {
                if (tail)
                    update_cohort(p.cohort, *tail, cfg_.average_speed_v0, cfg_.street_width, t);
                else
                    coast_cohort(p.cohort, cfg_.street_width, t);
            } else if (tail) {
                p.cohort = initialize_cohort(*tail, cfg_.average_speed_v0, cfg_.street_width, t);
            } else {
                continue;
            }
            TraceRow r;
            r.tick = t;
            r.record = "cohort";
            r.car = p.id;
            r.note = update_name(p.cohort.last_update);
            r.x = p.geom.position_x;
            r.tail_y = p.cohort.tail_y;
            r.v_est = p.cohort.speed;
            r.remain_est = p.cohort.remaining_s;
            r.zone_est = zone_distance(p.cohort.remaining_s, cfg_.reaction_s, cfg_.v_max);
            int tail_ped = p.cohort.tail_pedestrian_id;
            if (tail_ped >= 0) {
                const auto& w = walkers_[ped_index(tail_ped)];
                r.ped = tail_ped;
                r.speed_true = w.speed;
                r.remain_true = true_remaining(w);
                r.zone_true = zone_distance(r.remain_true, cfg_.reaction_s, cfg_.v_max);
            }
            rows_.push_back(std::move(r));
            if (was_active && !p.cohort.active) {
                p.alert_active = false;  // cohort closed, stop broadcasting
                p.zone_members.clear();
            }
        }
    }

    std::size_t ped_index(int ped_id) const {
        // ids are assigned in spawn order and never recycled
        for (std::size_t i = walkers_.size(); i-- > 0;)
            if (walkers_[i].id == ped_id) return i;
        throw std::logic_error("world: unknown pedestrian id");
    }

    // chain running upstream (against traffic) from the origin, origin first
    std::vector<ChainNode> upstream_chain(const ParkedCar& origin) const {
        std::vector<ChainNode> chain;
        for (const auto& p : parked_)
            if (p.geom.position_x <= origin.geom.position_x)
                chain.push_back({p.id, p.geom.position_x, -1, false});
        std::sort(chain.begin(), chain.end(),
                  [](const ChainNode& a, const ChainNode& b) { return a.position_x > b.position_x; });
        return chain;
    }

    void issue_alert(ParkedCar& p, int t, double distance, double offset_d, double remaining) {
        AlertMessage a;
        a.origin_car_id = p.id;
        a.origin_x = p.geom.position_x;
        a.issue_tick = t;
        a.distance_to_live = distance;
        a.crossing_offset_d = offset_d;
        a.remaining_s = remaining;
        ZoneResult zr = propagate_alert(upstream_chain(p), a, cfg_.hop_range);
        p.alert = a;
        p.alert_active = true;
        p.zone_members.clear();
        for (const auto& n : zr.nodes)
            if (n.in_zone) p.zone_members.push_back(n.car_id);
        p.zone_coverage = zr.coverage;
        p.zone_fallback = zr.fallback_range;
        p.zone_truncated = zr.truncated;
        ++counters_.alerts_issued;

        TraceRow r;
        r.tick = t;
        r.record = "alert";
        r.car = p.id;
        r.x = a.origin_x;
        r.zone_est = distance;
        r.coverage = zr.coverage;
        r.fallback = zr.fallback_range;
        r.crossing_x = a.origin_x + offset_d;
        r.clear_time = t + remaining;
        r.n_constraints = static_cast<int>(p.zone_members.size());
        rows_.push_back(std::move(r));
    }

    void alerts(int t) {
        for (auto& p : parked_) {
            if (cfg_.oracle_cautions) {
                // harness mode: alerts track ground truth, not the estimator
                double worst_remaining = -1.0;
                double nearest_offset = HUGE_VAL;
                for (const auto& w : walkers_) {
                    if (w.phase != PedPhase::Crossing || w.owner_car != p.id) continue;
                    double rem = true_remaining(w);
                    if (rem > worst_remaining) worst_remaining = rem;
                    double off = w.crossing_x - p.geom.position_x;
                    if (off < nearest_offset) nearest_offset = off;
                }
                if (worst_remaining < 0.0) {
                    p.oracle_active = false;
                    p.oracle_last_distance = -1.0;
                    p.alert_active = false;
                    p.zone_members.clear();
                    continue;
                }
                double dist = zone_distance(worst_remaining, cfg_.reaction_s, cfg_.v_max);
                if (!p.oracle_active || should_reissue(p.oracle_last_distance, dist)) {
                    issue_alert(p, t, dist, nearest_offset, worst_remaining);
                    p.oracle_active = true;
                    p.oracle_last_distance = dist;
                }
                continue;
            }
            if (!p.cohort.active) continue;
            double dist = zone_distance(p.cohort.remaining_s, cfg_.reaction_s, cfg_.v_max);
            if (p.cohort.last_issued_distance < 0.0 ||
                should_reissue(p.cohort.last_issued_distance, dist)) {
                issue_alert(p, t, dist, p.cohort.tail_d, p.cohort.remaining_s);
                p.cohort.last_issued_distance = dist;
            }
        }
    }

    bool delivers_to(const ParkedCar& origin, double car_x) const {
        for (int member : origin.zone_members)
            if (std::abs(parked_[member].geom.position_x - car_x) <= cfg_.short_range) return true;
        if (origin.zone_truncated && !origin.zone_members.empty()) {
            double last_x = parked_[origin.zone_members.back()].geom.position_x;
            double behind = last_x - car_x;
            if (behind >= 0.0 && behind <= origin.zone_fallback) return true;
        }
        return false;
    }

    void drive(int t) {
        for (auto& m : movers_) {
            if (!m.active) continue;
            if (cfg_.controller_enabled) {
                bool changed = prune_constraints(m.kin, t);
                for (const auto& p : parked_) {
                    if (!p.alert_active || !delivers_to(p, m.kin.position_x)) continue;
                    ChainNode node{p.id, p.geom.position_x, 0, true};
                    CautionMessage msg = emit_caution(node, p.alert);
                    if (on_caution(m.kin, msg)) {
                        changed = true;
                        ++counters_.cautions_accepted;
                        TraceRow r;
                        r.tick = t;
                        r.record = "caution";
                        r.car = m.kin.car_id;
                        r.note = std::to_string(p.id);
                        r.x = m.kin.position_x;
                        r.crossing_x = msg.crossing_x;
                        r.clear_time = msg.clear_time;
                        r.n_constraints = static_cast<int>(m.kin.constraints.size());
                        rows_.push_back(std::move(r));
                    }
                }
                if (!m.kin.hold_slope || changed)
                    m.kin.speed =
                        safe_speed(m.kin.position_x, t, m.kin.cruising_speed, m.kin.constraints);
            } else {
                m.kin.speed = m.kin.cruising_speed;
            }

            TraceRow r;
            r.tick = t;
            r.record = "car";
            r.car = m.kin.car_id;
            r.x = m.kin.position_x;
            r.speed = m.kin.speed;
            r.speed_true = m.kin.cruising_speed;  // what it would do uncontrolled
            r.n_constraints = static_cast<int>(m.kin.constraints.size());
            double nearest = NAN;
            for (const auto& w : walkers_) {
                if (w.phase != PedPhase::Crossing) continue;
                double ahead = w.crossing_x - m.kin.position_x;
                if (ahead >= 0.0 && (std::isnan(nearest) || ahead < nearest)) nearest = ahead;
            }
            r.dist_cross = nearest;
            rows_.push_back(std::move(r));
        }
    }

    ScenarioConfig cfg_;
    TransmitterSpec tx_;
    NoiseSpec noise_;
    RngStream ped_rng_, car_rng_, slot_rng_, noise_rng_;
    std::vector<ParkedCar> parked_;
    std::vector<GroundTruthPedestrian> walkers_;
    std::vector<ApproachingCar> movers_;
    std::vector<TraceRow> rows_;
    WorldCounters counters_;
    int tick_ = 0;
    int next_ped_id_ = 0;
    int next_car_id_ = 0;
};

}  // namespace adopt
