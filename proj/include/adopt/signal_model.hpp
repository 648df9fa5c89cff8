#pragma once

// Free-space RF signal strength, measurement noise, RSS ranging, and the
// slotted random-access transmission scheme used by the shoe transmitters.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "adopt/rng.hpp"

namespace adopt {

// Weakest reportable signal, mW. Noisy readings are clamped here so that
// downstream reciprocals stay finite.
inline constexpr double kRssFloorMw = 1e-6;

// Distances below this are treated as degenerate geometry (transmitter
// essentially touching the antenna), m.
inline constexpr double kMinDistanceM = 0.05;

struct TransmitterSpec {
    double power_mw = 2.0;       // radiated power T
    double frequency_ghz = 2.4;  // carrier; bookkeeping only, the path model is frequency-agnostic
    double env_gamma = 1.0;      // environment gain folded into the inverse-square law
};

struct NoiseSpec {
    double sigma_mw = 0.0;       // stddev of additive Gaussian measurement noise; 0 = noise-free
    std::uint64_t rng_seed = 0;  // seed of the stream the caller drew noise from
};

// Signal strength at range `distance` under the inverse-square model.
inline double free_space_rss(double power_mw, double env_gamma, double distance_m) {
    if (power_mw <= 0.0) throw std::domain_error("free_space_rss: power must be positive");
    if (env_gamma <= 0.0) throw std::domain_error("free_space_rss: env gain must be positive");
    if (distance_m < kMinDistanceM)
        throw std::domain_error("free_space_rss: distance below minimum ranging distance");
    return power_mw * env_gamma / (distance_m * distance_m);
}

inline double free_space_rss(const TransmitterSpec& tx, double distance_m) {
    return free_space_rss(tx.power_mw, tx.env_gamma, distance_m);
}

// Additive Gaussian measurement noise, clamped at the reporting floor.
inline double apply_noise(double rss_mw, const NoiseSpec& noise, RngStream& rng) {
    if (noise.sigma_mw < 0.0) throw std::domain_error("apply_noise: sigma must be non-negative");
    if (noise.sigma_mw == 0.0) return rss_mw;
    double noisy = rss_mw + rng.gaussian(0.0, noise.sigma_mw);
    return noisy < kRssFloorMw ? kRssFloorMw : noisy;
}

// Inverse of free_space_rss.
inline double distance_from_rss(double rss_mw, double power_mw, double env_gamma) {
    if (power_mw <= 0.0 || env_gamma <= 0.0)
        throw std::domain_error("distance_from_rss: power and env gain must be positive");
    if (rss_mw < kRssFloorMw) throw std::domain_error("distance_from_rss: rss below floor");
    return std::sqrt(power_mw * env_gamma / rss_mw);
}

inline double distance_from_rss(double rss_mw, const TransmitterSpec& tx) {
    return distance_from_rss(rss_mw, tx.power_mw, tx.env_gamma);
}

// One shoe transmission as registered by one parked car's receiver bank.
// Four readings, front pair first; detection logic uses the front pair.
struct RssObservation {
    int tick = 0;
    int pedestrian_id = 0;  // ground-truth bookkeeping, invisible to detection logic
    int car_id = 0;
    int slot = 0;
    bool clear = false;     // true iff no other transmission at this car shares (tick, slot)
    double rss_front_left = 0.0;
    double rss_front_right = 0.0;
    double rss_rear_left = 0.0;
    double rss_rear_right = 0.0;
};

struct SlotAssignment {
    std::unordered_map<int, int> slot_of;  // transmitter id -> chosen slot
    std::unordered_map<int, bool> clear;   // transmitter id -> sole occupant of its slot
};

// Each transmitter picks one of `slot_count` slots uniformly at random.
// A transmission is clear iff nobody else picked the same slot.
inline SlotAssignment assign_slots(const std::vector<int>& transmitter_ids, int slot_count,
                                   RngStream& rng) {
    if (slot_count < 1) throw std::domain_error("assign_slots: need at least one slot");
    SlotAssignment out;
    std::unordered_map<int, int> occupancy;
    for (int id : transmitter_ids) {
        int slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(slot_count)));
        out.slot_of[id] = slot;
        ++occupancy[slot];
    }
    for (int id : transmitter_ids) out.clear[id] = occupancy[out.slot_of[id]] == 1;
    return out;
}

// Expected number of collision-free transmissions when k transmitters pick
// among m slots: k * (1 - 1/m)^(k-1).
inline double expected_clear(int transmitters, int slot_count) {
    if (transmitters < 0) throw std::domain_error("expected_clear: negative transmitter count");
    if (slot_count < 1) throw std::domain_error("expected_clear: need at least one slot");
    if (transmitters == 0) return 0.0;
    return transmitters * std::pow(1.0 - 1.0 / slot_count, transmitters - 1);
}

}  // namespace adopt
