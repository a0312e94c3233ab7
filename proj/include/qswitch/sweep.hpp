// sweep.hpp
// Parameter sweeps over the attack strength and their CSV serialization.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/metrics.hpp"
#include "qswitch/scenarios.hpp"

namespace qswitch {

enum class Metric { MI, Gain, Bell, Qber, Secure };

inline std::optional<Metric> parse_metric(std::string_view s) {
    if (s == "mi") return Metric::MI;
    if (s == "gain") return Metric::Gain;
    if (s == "bell") return Metric::Bell;
    if (s == "qber") return Metric::Qber;
    if (s == "secure") return Metric::Secure;
    return std::nullopt;
}

inline const std::set<Metric>& all_metrics() {
    static const std::set<Metric> all{Metric::MI, Metric::Gain, Metric::Bell, Metric::Qber,
                                      Metric::Secure};
    return all;
}

inline constexpr std::string_view kCsvHeader =
    "phi,i_ab,i_ae,i_be,min_eve,gain,bell_ab,bell_ae,bell_be,qber,secure";

struct SweepConfig {
    ScenarioKind scenario = ScenarioKind::SG;
    std::optional<GateKind> partner;
    double phi_start = 0.0;
    double phi_end = std::numbers::pi / 2;
    std::size_t steps = 101;
    std::optional<double> phi1;
    std::set<Metric> metrics = all_metrics();
    std::string output_path;

    void validate() const {
        if (!(phi_start <= phi_end)) throw std::invalid_argument("sweep: phi_start exceeds phi_end");
        if (steps < 2) throw std::invalid_argument("sweep: steps must be at least 2");
        if (metrics.empty()) throw std::invalid_argument("sweep: no metrics requested");
        at(phi_start).validate();
        at(phi_end).validate();
    }

    AttackScenario at(double phi) const { return {scenario, phi, partner, phi1}; }
};

/// Affine grid with both endpoints exact.
inline std::vector<double> phi_grid(double start, double end, std::size_t steps) {
    std::vector<double> g(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        g[i] = start + (end - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    g.back() = end;
    return g;
}

inline std::vector<MetricsRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<MetricsRow> rows;
    rows.reserve(cfg.steps);
    for (double phi : phi_grid(cfg.phi_start, cfg.phi_end, cfg.steps)) {
        rows.push_back(evaluate_row(cfg.at(phi)));
    }
    return rows;
}

inline std::string format_number(double v) {
    char buf[32];
    if (std::abs(v) < 1e-14) v = 0.0;  // round-off residue and "-0"
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string csv_line(const MetricsRow& r, const std::set<Metric>& metrics) {
    auto has = [&](Metric m) { return metrics.count(m) > 0; };
    auto num = [&](Metric m, double v) { return has(m) ? format_number(v) : std::string(); };
    std::string line = format_number(r.phi);
    for (const auto& field :
         {num(Metric::MI, r.i_ab), num(Metric::MI, r.i_ae), num(Metric::MI, r.i_be),
          num(Metric::MI, r.min_eve()), num(Metric::Gain, r.gain), num(Metric::Bell, r.bell_ab),
          num(Metric::Bell, r.bell_ae), num(Metric::Bell, r.bell_be), num(Metric::Qber, r.qber),
          has(Metric::Secure) ? std::string(r.secure ? "true" : "false") : std::string()}) {
        line += ',';
        line += field;
    }
    return line;
}

inline std::string to_csv(const std::vector<MetricsRow>& rows, const std::set<Metric>& metrics) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += csv_line(r, metrics);
        out += '\n';
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << contents;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace qswitch
