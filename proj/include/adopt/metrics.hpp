#pragma once

// Post-run analysis over trace rows: classification quality, localization and
// tracking error, empirical distributions and the speed-vs-distance profile.
// Everything here recomputes from the trace alone so the same numbers come out
// whether the rows are in memory or read back from a file.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adopt/trace.hpp"
#include "adopt/world_engine.hpp"

namespace adopt {

struct ConfusionMatrix {
    long tp = 0, tn = 0, fp = 0, fn = 0;
    long total() const { return tp + tn + fp + fn; }
};

inline double accuracy_percent(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::domain_error("accuracy: no classified observations");
    return 100.0 * static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

inline ConfusionMatrix confusion(const std::vector<TraceRow>& rows) {
    ConfusionMatrix cm;
    for (const auto& r : rows) {
        if (r.record != "obs" || r.clear != 1 || r.verdict.empty()) continue;
        bool truth_street = r.truth == "street";
        bool said_street = r.verdict == "street";
        if (truth_street)
            said_street ? ++cm.tp : ++cm.fn;
        else
            said_street ? ++cm.fp : ++cm.tn;
    }
    return cm;
}

// Error rates binned by signed distance to the sidewalk edge. Positive is the
// sidewalk side, negative the street side; bins with no observations are absent.
struct LocationBin {
    long observations = 0;
    long false_positives = 0;  // sidewalk truth classified street
    long false_negatives = 0;  // street truth classified sidewalk
};

struct LocationRates {
    double bin_width = 0.2;
    std::map<int, LocationBin> bins;  // key: floor(signed_distance / bin_width)
    double bin_center(int key) const { return (key + 0.5) * bin_width; }
};

inline LocationRates per_location_rates(const std::vector<TraceRow>& rows, double bin_width = 0.2) {
    if (bin_width <= 0.0) throw std::invalid_argument("per_location_rates: bin width must be > 0");
    LocationRates out;
    out.bin_width = bin_width;
    for (const auto& r : rows) {
        if (r.record != "obs" || r.clear != 1 || r.verdict.empty()) continue;
        double signed_dist = -r.lat;  // street side sits at negative distances
        int key = static_cast<int>(std::floor(signed_dist / bin_width));
        auto& b = out.bins[key];
        ++b.observations;
        bool truth_street = r.truth == "street";
        bool said_street = r.verdict == "street";
        if (!truth_street && said_street) ++b.false_positives;
        if (truth_street && !said_street) ++b.false_negatives;
    }
    return out;
}

struct RmseReport {
    double e_y = NAN;      // lateral estimate vs true lateral, in-street hits
    double e_d = NAN;      // longitudinal estimate vs true offset, all clear obs
    double e_v = NAN;      // per-pedestrian mean tracked speed vs true speed
    double e_delta = NAN;  // per-pedestrian mean time-to-clear error
    double e_zone = NAN;   // per-pedestrian mean zone distance error
    long y_samples = 0;
    long d_samples = 0;
    long tracked_pedestrians = 0;
};

inline RmseReport rmse_suite(const std::vector<TraceRow>& rows) {
    RmseReport rep;
    double sy = 0.0, sd = 0.0;
    struct Acc {
        double v_est = 0, v_true = 0, rem_est = 0, rem_true = 0, zone_est = 0, zone_true = 0;
        long n = 0;
    };
    std::map<int, Acc> per_ped;
    for (const auto& r : rows) {
        if (r.record == "obs" && r.clear == 1) {
            if (!std::isnan(r.y_est)) {
                double e = r.y_est - r.lat;
                sy += e * e;
                ++rep.y_samples;
            }
            if (!std::isnan(r.d_est)) {
                double e = r.d_est - r.d_true;
                sd += e * e;
                ++rep.d_samples;
            }
        } else if (r.record == "cohort" && r.ped >= 0 && r.note != "init" &&
                   !std::isnan(r.speed_true)) {
            auto& a = per_ped[r.ped];
            a.v_est += r.v_est;
            a.v_true += r.speed_true;
            a.rem_est += r.remain_est;
            a.rem_true += r.remain_true;
            a.zone_est += r.zone_est;
            a.zone_true += r.zone_true;
            ++a.n;
        }
    }
    if (rep.y_samples > 0) rep.e_y = std::sqrt(sy / static_cast<double>(rep.y_samples));
    if (rep.d_samples > 0) rep.e_d = std::sqrt(sd / static_cast<double>(rep.d_samples));
    double sv = 0.0, srem = 0.0, szone = 0.0;
    for (const auto& [ped, a] : per_ped) {
        double n = static_cast<double>(a.n);
        double ev = a.v_est / n - a.v_true / n;
        double er = a.rem_est / n - a.rem_true / n;
        double ez = a.zone_est / n - a.zone_true / n;
        sv += ev * ev;
        srem += er * er;
        szone += ez * ez;
        ++rep.tracked_pedestrians;
    }
    if (rep.tracked_pedestrians > 0) {
        double n = static_cast<double>(rep.tracked_pedestrians);
        rep.e_v = std::sqrt(sv / n);
        rep.e_delta = std::sqrt(srem / n);
        rep.e_zone = std::sqrt(szone / n);
    }
    return rep;
}

// Paired per-pedestrian error samples behind e_delta and e_zone, for export.
struct TrackErrorPair {
    int pedestrian_id;
    double delta_error;  // mean estimated minus true time-to-clear
    double zone_error;   // mean estimated minus true zone distance
};

inline std::vector<TrackErrorPair> track_error_pairs(const std::vector<TraceRow>& rows) {
    struct Acc {
        double rem = 0, zone = 0;
        long n = 0;
    };
    std::map<int, Acc> per_ped;
    for (const auto& r : rows) {
        if (r.record != "cohort" || r.ped < 0 || r.note == "init" || std::isnan(r.speed_true))
            continue;
        auto& a = per_ped[r.ped];
        a.rem += r.remain_est - r.remain_true;
        a.zone += r.zone_est - r.zone_true;
        ++a.n;
    }
    std::vector<TrackErrorPair> out;
    for (const auto& [ped, a] : per_ped)
        out.push_back({ped, a.rem / static_cast<double>(a.n), a.zone / static_cast<double>(a.n)});
    return out;
}

// Right-continuous empirical CDF; p jumps to rank/n at each sorted value.
inline std::vector<std::pair<double, double>> ecdf(std::vector<double> values) {
    if (values.empty()) throw std::domain_error("ecdf: no samples");
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, double>> steps;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double p = static_cast<double>(i + 1) / n;
        if (!steps.empty() && steps.back().first == values[i])
            steps.back().second = p;
        else
            steps.push_back({values[i], p});
    }
    return steps;
}

// Mean speed of approaching cars, binned by distance to the nearest active
// crossing ahead of them, next to the cruising speeds the same cars would hold
// uncontrolled. Rows with no crossing ahead feed only the overall mean.
struct SpeedBin {
    double mean_speed = 0.0;
    double mean_cruise = 0.0;
    long samples = 0;
};

struct SpeedProfile {
    double bin_width = 13.0;
    std::map<int, SpeedBin> bins;
    double overall_mean = NAN;
    long overall_samples = 0;
};

inline SpeedProfile speed_profile(const std::vector<TraceRow>& rows, double bin_width = 13.0) {
    if (bin_width <= 0.0) throw std::invalid_argument("speed_profile: bin width must be > 0");
    SpeedProfile out;
    out.bin_width = bin_width;
    std::map<int, SpeedBin> sums;
    double total = 0.0;
    for (const auto& r : rows) {
        if (r.record != "car") continue;
        total += r.speed;
        ++out.overall_samples;
        if (std::isnan(r.dist_cross) || r.dist_cross < 0.0) continue;
        int key = static_cast<int>(std::floor(r.dist_cross / bin_width));
        auto& s = sums[key];
        s.mean_speed += r.speed;
        if (!std::isnan(r.speed_true)) s.mean_cruise += r.speed_true;
        ++s.samples;
    }
    if (out.overall_samples > 0) out.overall_mean = total / static_cast<double>(out.overall_samples);
    for (auto& [key, s] : sums) {
        double n = static_cast<double>(s.samples);
        out.bins[key] = {s.mean_speed / n, s.mean_cruise / n, s.samples};
    }
    return out;
}

// Pedestrian-level confusion: each pedestrian is judged once per ground-truth
// phase by majority vote over its clear observations, ties counting as errors.
inline ConfusionMatrix pedestrian_confusion(const std::vector<TraceRow>& rows) {
    std::map<std::pair<int, bool>, std::pair<long, long>> votes;  // (ped, street) -> (hit, miss)
    for (const auto& r : rows) {
        if (r.record != "obs" || r.clear != 1 || r.verdict.empty()) continue;
        bool truth_street = r.truth == "street";
        auto& v = votes[{r.ped, truth_street}];
        if ((r.verdict == "street") == truth_street)
            ++v.first;
        else
            ++v.second;
    }
    ConfusionMatrix cm;
    for (const auto& [key, v] : votes) {
        bool correct = v.first > v.second;
        if (key.second)
            correct ? ++cm.tp : ++cm.fn;
        else
            correct ? ++cm.tn : ++cm.fp;
    }
    return cm;
}

// True vs estimated crossing speed, one sample per tracked pedestrian.
struct SpeedSamples {
    std::vector<double> actual;
    std::vector<double> estimated;
};

inline SpeedSamples speed_samples(const std::vector<TraceRow>& rows) {
    struct Acc {
        double truth = 0, est = 0;
        long n = 0;
    };
    std::map<int, Acc> per_ped;
    for (const auto& r : rows) {
        if (r.record != "cohort" || r.ped < 0 || r.note == "init" || std::isnan(r.speed_true))
            continue;
        auto& a = per_ped[r.ped];
        a.truth = r.speed_true;
        a.est += r.v_est;
        ++a.n;
    }
    SpeedSamples out;
    for (const auto& [ped, a] : per_ped) {
        out.actual.push_back(a.truth);
        out.estimated.push_back(a.est / static_cast<double>(a.n));
    }
    return out;
}

// Everything derivable from the rows alone; works on a re-read trace file.
inline nlohmann::json metrics_json(const std::vector<TraceRow>& rows) {
    ConfusionMatrix cm = confusion(rows);
    RmseReport rmse = rmse_suite(rows);
    nlohmann::json j;
    j["classification"] = {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
    if (cm.total() > 0) j["classification"]["accuracy_percent"] = accuracy_percent(cm);
    ConfusionMatrix pcm = pedestrian_confusion(rows);
    j["classification"]["per_pedestrian"] = {
        {"tp", pcm.tp}, {"tn", pcm.tn}, {"fp", pcm.fp}, {"fn", pcm.fn}};
    if (pcm.total() > 0)
        j["classification"]["per_pedestrian"]["accuracy_percent"] = accuracy_percent(pcm);
    auto put = [](nlohmann::json& dst, const char* key, double v) {
        if (!std::isnan(v)) dst[key] = v;
    };
    nlohmann::json err;
    put(err, "lateral_rmse_m", rmse.e_y);
    put(err, "longitudinal_rmse_m", rmse.e_d);
    put(err, "speed_rmse_mps", rmse.e_v);
    put(err, "time_to_clear_rmse_s", rmse.e_delta);
    put(err, "zone_distance_rmse_m", rmse.e_zone);
    err["lateral_samples"] = rmse.y_samples;
    err["longitudinal_samples"] = rmse.d_samples;
    err["tracked_pedestrians"] = rmse.tracked_pedestrians;
    j["errors"] = err;
    SpeedProfile prof = speed_profile(rows);
    if (prof.overall_samples > 0) {
        j["car_speed"] = {{"overall_mean_mps", prof.overall_mean},
                          {"samples", prof.overall_samples}};
    }
    return j;
}

inline nlohmann::json summary_json(const RunResult& res) {
    nlohmann::json j = metrics_json(res.rows);
    j["run"] = {{"ticks", res.config.ticks},
                {"seed", res.config.seed},
                {"noise_sigma_mw", res.config.sigma_mw},
                {"controller", res.config.controller_enabled}};
    j["counts"] = {{"pedestrians_spawned", res.counters.pedestrians_spawned},
                   {"crossings_started", res.counters.crossings_started},
                   {"crossings_completed", res.counters.crossings_completed},
                   {"cars_spawned", res.counters.cars_spawned},
                   {"cars_exited", res.counters.cars_exited},
                   {"transmissions", res.counters.transmissions},
                   {"observations", res.counters.observations},
                   {"clear_observations", res.counters.clear_observations},
                   {"anomalies", res.counters.anomalies},
                   {"alerts_issued", res.counters.alerts_issued},
                   {"cautions_accepted", res.counters.cautions_accepted},
                   {"collision_events", res.counters.collision_events}};
    j["detected_per_sec"] = {{"mean", res.detected_per_sec_mean},
                             {"sigma", res.detected_per_sec_sigma}};
    return j;
}

inline void write_location_rates_csv(const std::string& path, const LocationRates& rates) {
    std::string text = "bin_center_m,observations,fp_percent,fn_percent\n";
    char buf[160];
    for (const auto& [key, b] : rates.bins) {
        double n = static_cast<double>(b.observations);
        std::snprintf(buf, sizeof buf, "%.10g,%ld,%.10g,%.10g\n", rates.bin_center(key),
                      b.observations, 100.0 * b.false_positives / n, 100.0 * b.false_negatives / n);
        text += buf;
    }
    detail::write_file(path, text);
}

inline void write_speed_profile_csv(const std::string& path, const SpeedProfile& prof) {
    std::string text = "bin_lo_m,bin_hi_m,mean_speed_mps,mean_cruise_mps,samples\n";
    char buf[200];
    for (const auto& [key, v] : prof.bins) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%ld\n", key * prof.bin_width,
                      (key + 1) * prof.bin_width, v.mean_speed, v.mean_cruise, v.samples);
        text += buf;
    }
    detail::write_file(path, text);
}

inline void write_ecdf_csv(const std::string& path,
                           const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    std::string text = "series,value,cumulative_p\n";
    char buf[160];
    for (const auto& [name, values] : series) {
        if (values.empty()) continue;
        for (const auto& [x, p] : ecdf(values)) {
            std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g\n", name.c_str(), x, p);
            text += buf;
        }
    }
    detail::write_file(path, text);
}

inline void write_track_error_pairs_csv(const std::string& path,
                                        const std::vector<TrackErrorPair>& pairs) {
    std::string text = "pedestrian,delta_error_s,zone_error_m\n";
    char buf[160];
    for (const auto& p : pairs) {
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g\n", p.pedestrian_id, p.delta_error,
                      p.zone_error);
        text += buf;
    }
    detail::write_file(path, text);
}

}  // namespace adopt
