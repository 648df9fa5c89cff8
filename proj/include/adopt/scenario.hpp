#pragma once

// Scenario configuration: defaults, validation, and the JSON config format.
// A default-constructed ScenarioConfig is the standard urban-street preset
// (12.8 m one-way street, 15 m/s limit, 2 mW transmitters, hour-long run);
// an empty config document loads exactly that.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace adopt {

struct RateSpec {
    double mean = 0.0;   // expected arrivals per second
    double sigma = 0.0;  // per-second jitter of the arrival count
};

struct ScenarioConfig {
    // street geometry
    double street_width = 12.8;
    double street_length = 500.0;
    double v_max = 15.0;
    double lane_center = 4.5;   // lateral center of the driving lane
    double lane_width = 3.2;

    // parked chain
    double chain_start = 150.0;
    double chain_spacing = 6.0;
    int chain_count = 54;
    std::vector<int> chain_skip;   // indices left empty (departed cars)
    double hop_range = 25.0;       // max parked-to-parked relay distance
    double car_width = 1.8;
    double sidewalk_gap = 0.4;
    double axle_separation = 2.7;  // front pair to rear pair

    // radio
    double power_mw = 2.0;
    double frequency_ghz = 2.4;
    double env_gamma = 10.0;       // calibrated so 0.3 mW noise reproduces street-scale error rates
    double detection_range = 3.5;  // receivers register a shoe only this close
    int slots = 50;
    double sigma_mw = 0.3;         // measurement noise; 0 = noise-free
    double short_range = 15.0;     // Caution delivery radius
    double reaction_s = 2.0;       // driver slack folded into the zone distance

    // pedestrians
    RateSpec pedestrian_arrival{0.11, 0.32};
    double ped_speed_mean = 1.15;
    double ped_speed_sigma = 0.13;
    double average_speed_v0 = 1.2;  // tracker's assumed speed before it can measure
    double dwell_mean_s = 12.0;     // sidewalk wait before stepping off
    double standoff_min = 0.05;     // dwell distance behind the sidewalk edge
    double standoff_max = 0.9;
    double frontage_min = 0.5;      // crossing line offset ahead of the owner car
    double frontage_max = 1.5;

    // approaching cars
    RateSpec car_arrival{0.06, 0.24};
    double cruising_speed = 0.0;  // 0 = drive at v_max
    bool controller_enabled = true;
    bool hold_slope = false;
    // test harness only, not part of the config format: alerts carry ground
    // truth instead of tracker estimates
    bool oracle_cautions = false;

    // run
    int ticks = 3600;
    std::uint64_t seed = 1;

    double cruise() const { return cruising_speed > 0.0 ? cruising_speed : v_max; }
    double chain_end() const { return chain_start + chain_spacing * (chain_count - 1); }

    void validate() const;
};

inline void ScenarioConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("scenario: " + what); };
    if (street_width <= car_width + sidewalk_gap)
        fail("street.width must exceed chain.car_width + chain.sidewalk_gap");
    if (street_length <= 0.0) fail("street.length must be positive");
    if (v_max <= 0.0) fail("street.v_max must be positive");
    if (lane_width <= 0.0) fail("street.lane_width must be positive");
    if (lane_center - lane_width / 2.0 < 0.0 || lane_center + lane_width / 2.0 > street_width)
        fail("street lane must lie inside the street");
    if (chain_count < 1) fail("chain.count must be at least 1");
    if (chain_spacing <= 0.0) fail("chain.spacing must be positive");
    if (chain_start < 0.0 || chain_end() > street_length)
        fail("chain must lie inside the street");
    for (int idx : chain_skip)
        if (idx < 0 || idx >= chain_count) fail("chain.skip index out of range");
    if (hop_range <= 0.0) fail("chain.hop_range must be positive");
    if (car_width <= 0.0) fail("chain.car_width must be positive");
    if (sidewalk_gap < 0.0) fail("chain.sidewalk_gap must be non-negative");
    if (axle_separation <= 0.0) fail("chain.axle_separation must be positive");
    if (power_mw <= 0.0) fail("radio.power_mw must be positive");
    if (frequency_ghz <= 0.0) fail("radio.frequency_ghz must be positive");
    if (env_gamma <= 0.0) fail("radio.gamma must be positive");
    if (detection_range <= 0.0) fail("radio.detection_range must be positive");
    if (slots < 1) fail("radio.slots must be at least 1");
    if (sigma_mw < 0.0) fail("radio.sigma_mw must be non-negative");
    if (short_range <= 0.0) fail("radio.short_range must be positive");
    if (reaction_s < 0.0) fail("radio.reaction_s must be non-negative");
    if (pedestrian_arrival.mean < 0.0 || pedestrian_arrival.sigma < 0.0)
        fail("pedestrians.rate must be non-negative");
    if (ped_speed_mean <= 0.0) fail("pedestrians.speed_mean must be positive");
    if (ped_speed_sigma < 0.0) fail("pedestrians.speed_sigma must be non-negative");
    if (average_speed_v0 <= 0.0) fail("pedestrians.v0 must be positive");
    if (dwell_mean_s <= 0.0) fail("pedestrians.dwell_mean must be positive");
    if (standoff_min < 0.0 || standoff_max < standoff_min)
        fail("pedestrians.standoff range is malformed");
    if (frontage_min < 0.0 || frontage_max < frontage_min)
        fail("pedestrians.frontage range is malformed");
    if (frontage_max >= chain_spacing)
        fail("pedestrians.frontage_max must be smaller than chain.spacing");
    if (car_arrival.mean < 0.0 || car_arrival.sigma < 0.0) fail("cars.rate must be non-negative");
    if (cruising_speed < 0.0) fail("cars.cruising_speed must be non-negative");
    if (ticks < 1) fail("run.ticks must be at least 1");
}

namespace detail {

inline void expect_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                        const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key \"" + where + it.key() + "\"");
}

inline void read_num(const nlohmann::json& obj, const char* key, double& out) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_number())
        throw std::invalid_argument(std::string("config: \"") + key + "\" must be a number");
    out = obj[key].get<double>();
}

inline void read_int(const nlohmann::json& obj, const char* key, int& out) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_number_integer())
        throw std::invalid_argument(std::string("config: \"") + key + "\" must be an integer");
    out = obj[key].get<int>();
}

inline void read_bool(const nlohmann::json& obj, const char* key, bool& out) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_boolean())
        throw std::invalid_argument(std::string("config: \"") + key + "\" must be a boolean");
    out = obj[key].get<bool>();
}

inline void read_rate(const nlohmann::json& obj, const char* key, RateSpec& out) {
    if (!obj.contains(key)) return;
    const auto& node = obj[key];
    expect_keys(node, {"mean", "sigma"}, std::string(key) + ".");
    read_num(node, "mean", out.mean);
    read_num(node, "sigma", out.sigma);
}

}  // namespace detail

// Parse a config document. Unknown keys are rejected so typos cannot silently
// fall back to defaults; missing keys keep the preset value.
inline ScenarioConfig load_scenario(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

    ScenarioConfig cfg;
    detail::expect_keys(doc, {"street", "chain", "radio", "pedestrians", "cars", "run"}, "");

    if (doc.contains("street")) {
        const auto& s = doc["street"];
        detail::expect_keys(s, {"width", "length", "v_max", "lane_center", "lane_width"}, "street.");
        detail::read_num(s, "width", cfg.street_width);
        detail::read_num(s, "length", cfg.street_length);
        detail::read_num(s, "v_max", cfg.v_max);
        detail::read_num(s, "lane_center", cfg.lane_center);
        detail::read_num(s, "lane_width", cfg.lane_width);
    }
    if (doc.contains("chain")) {
        const auto& c = doc["chain"];
        detail::expect_keys(c,
                            {"start", "spacing", "count", "skip", "hop_range", "car_width",
                             "sidewalk_gap", "axle_separation"},
                            "chain.");
        detail::read_num(c, "start", cfg.chain_start);
        detail::read_num(c, "spacing", cfg.chain_spacing);
        detail::read_int(c, "count", cfg.chain_count);
        if (c.contains("skip")) {
            if (!c["skip"].is_array())
                throw std::invalid_argument("config: \"chain.skip\" must be an array of indices");
            cfg.chain_skip.clear();
            for (const auto& v : c["skip"]) {
                if (!v.is_number_integer())
                    throw std::invalid_argument("config: \"chain.skip\" entries must be integers");
                cfg.chain_skip.push_back(v.get<int>());
            }
        }
        detail::read_num(c, "hop_range", cfg.hop_range);
        detail::read_num(c, "car_width", cfg.car_width);
        detail::read_num(c, "sidewalk_gap", cfg.sidewalk_gap);
        detail::read_num(c, "axle_separation", cfg.axle_separation);
    }
    if (doc.contains("radio")) {
        const auto& r = doc["radio"];
        detail::expect_keys(r,
                            {"power_mw", "frequency_ghz", "gamma", "detection_range", "slots",
                             "sigma_mw", "short_range", "reaction_s"},
                            "radio.");
        detail::read_num(r, "power_mw", cfg.power_mw);
        detail::read_num(r, "frequency_ghz", cfg.frequency_ghz);
        detail::read_num(r, "gamma", cfg.env_gamma);
        detail::read_num(r, "detection_range", cfg.detection_range);
        detail::read_int(r, "slots", cfg.slots);
        detail::read_num(r, "sigma_mw", cfg.sigma_mw);
        detail::read_num(r, "short_range", cfg.short_range);
        detail::read_num(r, "reaction_s", cfg.reaction_s);
    }
    if (doc.contains("pedestrians")) {
        const auto& p = doc["pedestrians"];
        detail::expect_keys(p,
                            {"rate", "speed_mean", "speed_sigma", "v0", "dwell_mean",
                             "standoff_min", "standoff_max", "frontage_min", "frontage_max"},
                            "pedestrians.");
        detail::read_rate(p, "rate", cfg.pedestrian_arrival);
        detail::read_num(p, "speed_mean", cfg.ped_speed_mean);
        detail::read_num(p, "speed_sigma", cfg.ped_speed_sigma);
        detail::read_num(p, "v0", cfg.average_speed_v0);
        detail::read_num(p, "dwell_mean", cfg.dwell_mean_s);
        detail::read_num(p, "standoff_min", cfg.standoff_min);
        detail::read_num(p, "standoff_max", cfg.standoff_max);
        detail::read_num(p, "frontage_min", cfg.frontage_min);
        detail::read_num(p, "frontage_max", cfg.frontage_max);
    }
    if (doc.contains("cars")) {
        const auto& c = doc["cars"];
        detail::expect_keys(c, {"rate", "cruising_speed", "controller", "hold_slope"}, "cars.");
        detail::read_rate(c, "rate", cfg.car_arrival);
        detail::read_num(c, "cruising_speed", cfg.cruising_speed);
        detail::read_bool(c, "controller", cfg.controller_enabled);
        detail::read_bool(c, "hold_slope", cfg.hold_slope);
    }
    if (doc.contains("run")) {
        const auto& r = doc["run"];
        detail::expect_keys(r, {"ticks", "seed"}, "run.");
        detail::read_int(r, "ticks", cfg.ticks);
        if (r.contains("seed")) {
            if (!r["seed"].is_number_unsigned() && !r["seed"].is_number_integer())
                throw std::invalid_argument("config: \"run.seed\" must be an integer");
            cfg.seed = r["seed"].get<std::uint64_t>();
        }
    }

    cfg.validate();
    return cfg;
}

// What the CLI was asked to do; flags beat config-file values.
struct RunRequest {
    enum class Mode { Run, Sweep, Metrics, Accept };
    Mode mode = Mode::Run;
    std::string config_path;
    std::string out_dir;
    std::string trace_path;              // metrics mode input
    std::vector<std::uint64_t> seeds;    // sweep mode
    std::optional<std::uint64_t> seed;
    std::optional<double> sigma;
    std::optional<int> ticks;
    std::optional<bool> controller;
    bool quick = false;                  // accept mode: noise-free subset only
};

}  // namespace adopt
