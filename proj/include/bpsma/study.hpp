#pragma once

// Parameter sweeps over the simulator and sustained-force statistics for
// two-step drives.

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <string>
#include <vector>

#include "bpsma/config.hpp"
#include "bpsma/config_io.hpp"
#include "bpsma/csv.hpp"
#include "bpsma/drive.hpp"
#include "bpsma/error.hpp"
#include "bpsma/plot.hpp"
#include "bpsma/sim_engine.hpp"

namespace bpsma {

struct SweepRow {
  double value = 0.0;         // swept parameter in SI (V or N/m)
  std::string label;          // e.g. spring label
  bool ok = false;
  double peak_force = 0.0;    // N
  double peak_T = 0.0;        // degC
  double peak_stroke = 0.0;   // m, largest |dx|
  double energy_input = 0.0;  // J
  std::string error;

  bool operator==(const SweepRow&) const = default;
};

enum class SweepParameter { Voltage, SpringStiffness };

struct SweepResult {
  SweepParameter parameter = SweepParameter::Voltage;
  std::vector<SweepRow> rows;
};

/// Reduces one trajectory to a sweep row.
inline SweepRow summarize(const TimeSeries& series, const ActuatorConfig& cfg) {
  SweepRow row;
  row.ok = true;
  if (series.samples.empty()) return row;
  row.peak_force = series.samples.front().F_a;
  row.peak_T = series.samples.front().T;
  for (const auto& s : series.samples) {
    row.peak_force = std::max(row.peak_force, s.F_a);
    row.peak_T = std::max(row.peak_T, s.T);
    row.peak_stroke = std::max(row.peak_stroke, std::abs(s.dx));
  }
  row.energy_input = energy_audit(series, cfg).input_J;
  return row;
}

namespace detail {

struct SweepJob {
  double value;
  std::string label;
  ActuatorConfig cfg;
  DriveProfile drive;
};

/// Runs independent jobs concurrently and assembles rows in job order.
/// Errors are confined to the failing row.
inline std::vector<SweepRow> run_jobs(const std::vector<SweepJob>& jobs, const Mode& mode) {
  std::vector<std::future<SweepRow>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&job, &mode] {
      SweepRow row;
      try {
        row = summarize(simulate(job.cfg, job.drive, mode), job.cfg);
      } catch (const Error& e) {
        row = SweepRow{};
        row.error = e.what();
      }
      row.value = job.value;
      row.label = job.label;
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(jobs.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

}  // namespace detail

/// One run per voltage with drive [(heat_s, V), (cool_s, 0 V)].
inline SweepResult voltage_sweep(const ActuatorConfig& cfg, const std::vector<double>& voltages, double heat_s,
                                 double cool_s, const Mode& mode = BlockedMode{}) {
  if (voltages.empty()) throw ConfigError("voltage sweep needs at least one voltage");
  std::vector<detail::SweepJob> jobs;
  for (double v : voltages) {
    DriveProfile drive{{{heat_s, v}}};
    if (cool_s > 0.0) drive.segments.push_back({cool_s, 0.0});
    validate(drive);
    jobs.push_back({v, "", cfg, drive});
  }
  return {SweepParameter::Voltage, detail::run_jobs(jobs, mode)};
}

/// One run per bias spring with drive [(heat_s, voltage)].
inline SweepResult spring_sweep(const ActuatorConfig& cfg, const std::vector<BiasSpring>& springs, double voltage,
                                double heat_s, const Mode& mode = BlockedMode{}) {
  if (springs.empty()) throw ConfigError("spring sweep needs at least one spring");
  const DriveProfile drive{{{heat_s, voltage}}};
  validate(drive);
  std::vector<detail::SweepJob> jobs;
  for (const auto& s : springs) {
    validate(s);
    auto c = cfg;
    c.spring = s;
    jobs.push_back({s.K_x, s.label, c, drive});
  }
  return {SweepParameter::SpringStiffness, detail::run_jobs(jobs, mode)};
}

/// Catalogue springs k_1..k_5 at the reference pre-deflection.
inline std::vector<BiasSpring> catalogue_springs(double x_0 = 0.027) {
  return {{5120.0, x_0, "k_1"}, {4230.0, x_0, "k_2"}, {3360.0, x_0, "k_3"}, {2490.0, x_0, "k_4"}, {1620.0, x_0, "k_5"}};
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  using detail::format_double;
  out << (result.parameter == SweepParameter::Voltage ? "voltage_V" : "stiffness_N_per_m")
      << ",label,ok,peak_force_N,peak_T_degC,peak_stroke_m,energy_input_J,error\n";
  for (const auto& r : result.rows) {
    out << format_double(r.value) << ',' << csv::quote(r.label) << ',' << (r.ok ? "true" : "false") << ',';
    if (r.ok) {
      out << format_double(r.peak_force) << ',' << format_double(r.peak_T) << ',' << format_double(r.peak_stroke)
          << ',' << format_double(r.energy_input) << ',';
    } else {
      out << ",,,,";
    }
    out << csv::quote(r.error) << '\n';
  }
}

struct ExperimentalAnchor {
  double value;  // V or N/m
  double force;  // N
  std::string label;
};

/// Measured peak forces reported for the prototype, drawn on sweep plots for reference.
inline std::vector<ExperimentalAnchor> experimental_anchors(SweepParameter p) {
  if (p == SweepParameter::Voltage) return {{13.0, 113.0, "13 V"}, {14.0, 170.0, "14 V"}, {15.0, 200.0, "15 V"}};
  return {{5120.0, 200.0, "k_1"}, {3360.0, 257.0, "k_3"}, {1620.0, 153.0, "k_5"}};
}

/// Peak force against the swept parameter with the measured anchors overlaid.
inline std::string render_sweep_plot(const SweepResult& result) {
  const bool volts = result.parameter == SweepParameter::Voltage;
  const double scale = volts ? 1.0 : 1e-3;  // stiffness shown in N/mm
  plot::Trace sim{"simulated peak", {}, {}, "#1f77b4", true};
  for (const auto& r : result.rows) {
    if (!r.ok) continue;
    sim.x.push_back(r.value * scale);
    sim.y.push_back(r.peak_force);
  }
  plot::Trace measured{"measured (prototype)", {}, {}, "#d62728", true};
  for (const auto& a : experimental_anchors(result.parameter)) {
    measured.x.push_back(a.value * scale);
    measured.y.push_back(a.force);
  }
  return plot::render_svg({{volts ? "Peak force against drive voltage" : "Peak force against bias spring stiffness",
                            volts ? "voltage [V]" : "spring stiffness [N/mm]", "peak force [N]", {sim, measured}}});
}

struct SustainedForceMetrics {
  double force_at_switch;  // N
  double mean_sustained;   // N
  double std_sustained;    // N, population standard deviation
  double delta;            // N, mean_sustained - force_at_switch
};

/// Force at the switch instant (linear interpolation between samples) and
/// statistics over all samples strictly after it.
inline SustainedForceMetrics sustained_force_metrics(const TimeSeries& series, double t_switch) {
  const auto& s = series.samples;
  if (s.empty()) throw AnalysisError("sustained force metrics need a non-empty series");
  if (!(t_switch >= s.front().t)) throw AnalysisError("t_switch precedes the start of the series");
  if (!(t_switch < s.back().t)) throw AnalysisError("t_switch lies at or beyond the end of the series");

  const auto after = std::upper_bound(s.begin(), s.end(), t_switch,
                                      [](double t, const Sample& x) { return t < x.t; });
  const auto& hi = *after;
  const auto& lo = *(after - 1);
  const double w = (t_switch - lo.t) / (hi.t - lo.t);
  SustainedForceMetrics m{};
  m.force_at_switch = lo.F_a + w * (hi.F_a - lo.F_a);

  double sum = 0.0;
  const auto count = static_cast<double>(s.end() - after);
  for (auto it = after; it != s.end(); ++it) sum += it->F_a;
  m.mean_sustained = sum / count;
  double var = 0.0;
  for (auto it = after; it != s.end(); ++it) var += (it->F_a - m.mean_sustained) * (it->F_a - m.mean_sustained);
  m.std_sustained = std::sqrt(var / count);
  m.delta = m.mean_sustained - m.force_at_switch;
  return m;
}

}  // namespace bpsma
