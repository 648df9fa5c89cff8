#pragma once

// Run trace: delimited text, one row per (tick, entity, record type), fixed
// column order, header row first. Absent numeric fields are written empty.
// Formatting is pinned so identical runs produce byte-identical files.
//
// Record types:
//   ped        ground-truth pedestrian state after movement
//   obs        one registered shoe transmission at one parked car
//   anomaly    an observation whose localization was rejected
//   cohort     tracker state at a car after this tick's update
//   alert      a newly issued (or enlarged) zone alert
//   caution    a delivery that changed an approaching car's constraints
//   car        approaching-car state after the speed update
//   collision  collision-box overlap event (sub-sampled within the tick)

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace adopt {

struct TraceRow {
    int tick = 0;
    std::string record;
    int ped = -1;
    int car = -1;
    int slot = -1;
    int clear = -1;  // 0/1, obs rows only
    std::string phase;
    std::string truth;
    std::string verdict;
    std::string note;
    double x = NAN;
    double lat = NAN;
    double speed = NAN;
    double d_true = NAN;
    double rss_fl = NAN, rss_fr = NAN, rss_rl = NAN, rss_rr = NAN;
    double y_est = NAN;
    double d_est = NAN;
    double tail_y = NAN;
    double v_est = NAN;
    double remain_est = NAN;
    double remain_true = NAN;
    double speed_true = NAN;
    double zone_est = NAN;
    double zone_true = NAN;
    double coverage = NAN;
    double fallback = NAN;
    double crossing_x = NAN;
    double clear_time = NAN;
    double dist_cross = NAN;
    double offset = NAN;
    int n_constraints = -1;
};

inline const char* trace_header() {
    return "tick,record,ped,car,slot,clear,phase,truth,verdict,note,x,lat,speed,d_true,"
           "rss_fl,rss_fr,rss_rl,rss_rr,y_est,d_est,tail_y,v_est,remain_est,remain_true,"
           "speed_true,zone_est,zone_true,coverage,fallback,crossing_x,clear_time,"
           "dist_cross,offset,n_constraints";
}

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

inline void append_num(std::string& out, double v) {
    if (!std::isnan(v)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        out += buf;
    }
    out += ',';
}

inline void append_int(std::string& out, int v) {
    if (v >= 0) out += std::to_string(v);
    out += ',';
}

}  // namespace detail

inline std::string to_csv(const TraceRow& r) {
    std::string out;
    out.reserve(220);
    out += std::to_string(r.tick);
    out += ',';
    out += r.record;
    out += ',';
    detail::append_int(out, r.ped);
    detail::append_int(out, r.car);
    detail::append_int(out, r.slot);
    detail::append_int(out, r.clear);
    out += r.phase; out += ',';
    out += r.truth; out += ',';
    out += r.verdict; out += ',';
    out += r.note; out += ',';
    detail::append_num(out, r.x);
    detail::append_num(out, r.lat);
    detail::append_num(out, r.speed);
    detail::append_num(out, r.d_true);
    detail::append_num(out, r.rss_fl);
    detail::append_num(out, r.rss_fr);
    detail::append_num(out, r.rss_rl);
    detail::append_num(out, r.rss_rr);
    detail::append_num(out, r.y_est);
    detail::append_num(out, r.d_est);
    detail::append_num(out, r.tail_y);
    detail::append_num(out, r.v_est);
    detail::append_num(out, r.remain_est);
    detail::append_num(out, r.remain_true);
    detail::append_num(out, r.speed_true);
    detail::append_num(out, r.zone_est);
    detail::append_num(out, r.zone_true);
    detail::append_num(out, r.coverage);
    detail::append_num(out, r.fallback);
    detail::append_num(out, r.crossing_x);
    detail::append_num(out, r.clear_time);
    detail::append_num(out, r.dist_cross);
    detail::append_num(out, r.offset);
    if (r.n_constraints >= 0) out += std::to_string(r.n_constraints);
    return out;
}

inline void write_trace(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("trace: cannot open " + path + " for writing");
    f << trace_header() << '\n';
    for (const auto& r : rows) f << to_csv(r) << '\n';
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double num_or_nan(const std::string& s) { return s.empty() ? NAN : std::stod(s); }
inline int int_or_neg(const std::string& s) { return s.empty() ? -1 : std::stoi(s); }

}  // namespace detail

inline std::vector<TraceRow> read_trace(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("trace: cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("trace: empty file " + path);
    if (line != trace_header()) throw std::runtime_error("trace: unrecognized header in " + path);
    std::vector<TraceRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto cells = detail::split_csv(line);
        if (cells.size() != 34) throw std::runtime_error("trace: malformed row in " + path);
        TraceRow r;
        int i = 0;
        r.tick = std::stoi(cells[i++]);
        r.record = cells[i++];
        r.ped = detail::int_or_neg(cells[i++]);
        r.car = detail::int_or_neg(cells[i++]);
        r.slot = detail::int_or_neg(cells[i++]);
        r.clear = detail::int_or_neg(cells[i++]);
        r.phase = cells[i++];
        r.truth = cells[i++];
        r.verdict = cells[i++];
        r.note = cells[i++];
        r.x = detail::num_or_nan(cells[i++]);
        r.lat = detail::num_or_nan(cells[i++]);
        r.speed = detail::num_or_nan(cells[i++]);
        r.d_true = detail::num_or_nan(cells[i++]);
        r.rss_fl = detail::num_or_nan(cells[i++]);
        r.rss_fr = detail::num_or_nan(cells[i++]);
        r.rss_rl = detail::num_or_nan(cells[i++]);
        r.rss_rr = detail::num_or_nan(cells[i++]);
        r.y_est = detail::num_or_nan(cells[i++]);
        r.d_est = detail::num_or_nan(cells[i++]);
        r.tail_y = detail::num_or_nan(cells[i++]);
        r.v_est = detail::num_or_nan(cells[i++]);
        r.remain_est = detail::num_or_nan(cells[i++]);
        r.remain_true = detail::num_or_nan(cells[i++]);
        r.speed_true = detail::num_or_nan(cells[i++]);
        r.zone_est = detail::num_or_nan(cells[i++]);
        r.zone_true = detail::num_or_nan(cells[i++]);
        r.coverage = detail::num_or_nan(cells[i++]);
        r.fallback = detail::num_or_nan(cells[i++]);
        r.crossing_x = detail::num_or_nan(cells[i++]);
        r.clear_time = detail::num_or_nan(cells[i++]);
        r.dist_cross = detail::num_or_nan(cells[i++]);
        r.offset = detail::num_or_nan(cells[i++]);
        r.n_constraints = detail::int_or_neg(cells[i++]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace adopt
