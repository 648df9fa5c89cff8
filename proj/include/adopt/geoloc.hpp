#pragma once

// Sidewalk/street classification and localization from a pair of RSS readings
// taken at the two front corners of a parked car.
//
// Geometry, all in meters. The lateral axis points from the parked-side
// sidewalk edge into the street: the right-front transceiver R sits at lateral
// z (the gap between car and sidewalk), the left-front transceiver L at
// z + w (w = car width). A transmitter at lateral position y and longitudinal
// offset d from the front-axle line is at distance
//     deltaR = sqrt(d^2 + (y - z)^2),   deltaL = sqrt(d^2 + (y - z - w)^2).
//
// The reciprocal difference 1/RSS(L) - 1/RSS(R) = (deltaL^2 - deltaR^2)/(T*g)
// depends only on y, strictly decreasing in it, so one threshold (its value at
// y = 0) splits sidewalk from street, and inverting it recovers y.

#include <cmath>
#include <stdexcept>

#include "adopt/signal_model.hpp"

namespace adopt {

// Tolerance for the Heron radicand when distances are exact; noisy callers
// pass a larger slack and get d = 0 for mildly inconsistent triangles.
inline constexpr double kTriangleTolExact = 1e-9;
inline constexpr double kTriangleSlackNoisy = 0.05;

struct CarGeometry {
    double width_w = 1.8;          // lateral separation of the L/R transceiver pair
    double sidewalk_gap_z = 0.4;   // R transceiver to sidewalk edge
    double position_x = 0.0;       // front-axle longitudinal coordinate
    double street_width_W = 12.8;  // crossing is complete at lateral W

    void validate() const {
        if (width_w <= 0.0) throw std::domain_error("CarGeometry: car width must be positive");
        if (sidewalk_gap_z < 0.0) throw std::domain_error("CarGeometry: sidewalk gap must be non-negative");
        if (street_width_W <= width_w + sidewalk_gap_z)
            throw std::domain_error("CarGeometry: street width must exceed gap plus car width");
    }
};

enum class Verdict { OnSidewalk, InStreet };

struct Classification {
    Verdict verdict = Verdict::OnSidewalk;
    double reciprocal_diff = 0.0;  // the tested statistic
    double threshold = 0.0;        // sidewalk boundary value it was compared against
};

// Accepted localization result for one clear in-street observation.
struct PedestrianFix {
    int tick = 0;
    int pedestrian_id = 0;
    int car_id = 0;
    double lateral_y = 0.0;       // distance from the departed sidewalk edge
    double longitudinal_d = 0.0;  // offset from the car's front-axle line
};

// 1/RSS(L) - 1/RSS(R); grows toward the sidewalk side.
inline double reciprocal_diff(double rss_left, double rss_right) {
    if (rss_left < kRssFloorMw || rss_right < kRssFloorMw)
        throw std::domain_error("reciprocal_diff: rss below floor");
    return 1.0 / rss_left - 1.0 / rss_right;
}

// Value of the reciprocal difference for a transmitter exactly on the
// sidewalk edge; anything at or above it is on the sidewalk.
inline double sidewalk_threshold_c0(double width_w, double sidewalk_gap_z, double power_mw,
                                    double env_gamma) {
    if (width_w <= 0.0) throw std::domain_error("sidewalk_threshold_c0: car width must be positive");
    if (sidewalk_gap_z < 0.0)
        throw std::domain_error("sidewalk_threshold_c0: sidewalk gap must be non-negative");
    if (power_mw <= 0.0 || env_gamma <= 0.0)
        throw std::domain_error("sidewalk_threshold_c0: power and env gain must be positive");
    return (width_w * width_w + 2.0 * width_w * sidewalk_gap_z) / (power_mw * env_gamma);
}

// Ties go to the sidewalk: a pedestrian exactly on the edge has not entered
// the street yet.
inline Classification classify(double rss_left, double rss_right, const CarGeometry& car,
                               const TransmitterSpec& tx, bool sidewalk_on_tie = true) {
    Classification out;
    out.reciprocal_diff = reciprocal_diff(rss_left, rss_right);
    out.threshold = sidewalk_threshold_c0(car.width_w, car.sidewalk_gap_z, tx.power_mw, tx.env_gamma);
    if (out.reciprocal_diff > out.threshold)
        out.verdict = Verdict::OnSidewalk;
    else if (out.reciprocal_diff < out.threshold)
        out.verdict = Verdict::InStreet;
    else
        out.verdict = sidewalk_on_tie ? Verdict::OnSidewalk : Verdict::InStreet;
    return out;
}

// Lateral distance from the departed sidewalk edge, by inverting the
// reciprocal difference. Exact for noise-free readings at any d.
inline double lateral_y(double rss_left, double rss_right, const CarGeometry& car,
                        const TransmitterSpec& tx) {
    double diff = reciprocal_diff(rss_left, rss_right);
    double scale = tx.power_mw * tx.env_gamma / (2.0 * car.width_w);
    return car.width_w / 2.0 + car.sidewalk_gap_z - scale * diff;
}

// Longitudinal offset from the front-axle line: the height of the
// transmitter/L/R triangle over its LR base, via Heron's formula.
inline double longitudinal_d(double delta_left, double delta_right, double width_w,
                             double tolerance = kTriangleTolExact) {
    if (delta_left <= 0.0 || delta_right <= 0.0 || width_w <= 0.0)
        throw std::domain_error("longitudinal_d: sides must be positive");
    double p = (delta_left + delta_right + width_w) / 2.0;
    double radicand = p * (p - delta_left) * (p - delta_right) * (p - width_w);
    if (radicand < 0.0) {
        if (radicand < -tolerance)
            throw std::domain_error("longitudinal_d: side lengths violate the triangle inequality");
        radicand = 0.0;  // collinear within tolerance: transmitter on the LR line
    }
    return 2.0 * std::sqrt(radicand) / width_w;
}

}  // namespace adopt
