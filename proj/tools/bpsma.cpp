// Command-line front end: simulate, sweep-voltage, sweep-spring, metrics, dsc,
// dfmea and amplify. Exit codes are listed in README.md.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bpsma/bpsma.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kUnit = 5,
  kConfig = 6,
  kAnalysis = 7,
  kDomain = 8,
  kSimulation = 9,
};

/// Writes to a file, or to stdout when the path is "-".
void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  bpsma::write_text_file(path, content);
}

bpsma::Mode parse_mode(const std::string& name, const bpsma::ActuatorConfig& cfg) {
  if (name == "blocked") return bpsma::BlockedMode{};
  if (name == "spring") return bpsma::SpringLoadedMode{};
  return bpsma::AmplifiedMode{cfg.hsam.value_or(bpsma::HsamParams{})};
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(bpsma::detail::parse_number(item, what));
  if (out.empty()) throw bpsma::ConfigError(what + ": empty list");
  return out;
}

struct Options {
  std::string config;
  std::string drive;
  std::string mode = "blocked";
  std::string out = "-";
  std::string plot;
  std::string voltages = "13,14,15";
  std::string stiffness;
  double heat_s = 10.0;
  double cool_s = 15.0;
  double voltage = 15.0;
  std::optional<double> x0_mm;
  std::string in;
  double t_switch = 0.0;
  std::string direction = "heating";
  double baseline_fraction = 0.2;
  int window = 2;
  std::string report = "-";
  std::string format = "text";
  std::optional<double> factor;
  std::optional<double> d_upper;
  std::optional<double> d_lower;
  double stroke = 0.0;
  double force = 0.0;
};

int cmd_simulate(const Options& o) {
  const auto cfg = bpsma::load_config(o.config);
  bpsma::DriveProfile drive;
  if (!o.drive.empty()) drive = bpsma::parse_drive(o.drive);
  else if (cfg.drive) drive = *cfg.drive;
  else throw bpsma::ConfigError("no drive given: use --drive or a [drive] section in the config");

  const auto start = std::chrono::steady_clock::now();
  const auto series = bpsma::simulate(cfg, drive, parse_mode(o.mode, cfg));
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& w : series.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream csv;
  bpsma::write_timeseries_csv(csv, series);
  emit(o.out, csv.str());
  if (!o.plot.empty()) emit(o.plot, bpsma::render_series_plot(series));

  const auto row = bpsma::summarize(series, cfg);
  std::cerr << "mode " << o.mode << ": peak force " << row.peak_force << " N, peak temperature " << row.peak_T
            << " degC, " << series.samples.size() << " samples in " << elapsed << " s\n";
  return kOk;
}

int report_sweep(const Options& o, const bpsma::SweepResult& result) {
  std::ostringstream csv;
  bpsma::write_sweep_csv(csv, result);
  emit(o.out, csv.str());
  if (!o.plot.empty()) emit(o.plot, bpsma::render_sweep_plot(result));
  int failed = 0;
  for (const auto& r : result.rows) {
    if (!r.ok) {
      ++failed;
      std::cerr << "error: run at " << r.value << (r.label.empty() ? "" : " (" + r.label + ")") << ": " << r.error
                << '\n';
    }
  }
  return failed ? kSimulation : kOk;
}

int cmd_sweep_voltage(const Options& o) {
  const auto cfg = bpsma::load_config(o.config);
  const auto volts = parse_list(o.voltages, "--voltages");
  return report_sweep(o, bpsma::voltage_sweep(cfg, volts, o.heat_s, o.cool_s, parse_mode(o.mode, cfg)));
}

int cmd_sweep_spring(const Options& o) {
  const auto cfg = bpsma::load_config(o.config);
  const double x0 = o.x0_mm ? *o.x0_mm * 1e-3 : cfg.spring.x_0;
  std::vector<bpsma::BiasSpring> springs;
  if (o.stiffness.empty()) {
    springs = bpsma::catalogue_springs(x0);
  } else {
    const auto ks = parse_list(o.stiffness, "--stiffness");
    for (std::size_t i = 0; i < ks.size(); ++i) springs.push_back({ks[i] * 1e3, x0, "s" + std::to_string(i + 1)});
  }
  return report_sweep(o, bpsma::spring_sweep(cfg, springs, o.voltage, o.heat_s, parse_mode(o.mode, cfg)));
}

int cmd_metrics(const Options& o) {
  const auto series = bpsma::read_timeseries_csv(o.in);
  const auto m = bpsma::sustained_force_metrics(series, o.t_switch);
  std::ostringstream os;
  os << "force_at_switch_N," << bpsma::detail::format_double(m.force_at_switch) << '\n'
     << "mean_sustained_N," << bpsma::detail::format_double(m.mean_sustained) << '\n'
     << "std_sustained_N," << bpsma::detail::format_double(m.std_sustained) << '\n'
     << "delta_N," << bpsma::detail::format_double(m.delta) << '\n';
  if (!o.config.empty()) {
    const auto e = bpsma::energy_audit(series, bpsma::load_config(o.config));
    os << "energy_input_J," << bpsma::detail::format_double(e.input_J) << '\n'
       << "energy_stored_J," << bpsma::detail::format_double(e.stored_J) << '\n'
       << "energy_convected_J," << bpsma::detail::format_double(e.convected_J) << '\n'
       << "energy_latent_J," << bpsma::detail::format_double(e.latent_J) << '\n'
       << "energy_residual_J," << bpsma::detail::format_double(e.residual_J) << '\n';
  }
  emit(o.out, os.str());
  return kOk;
}

int cmd_dsc(const Options& o) {
  const auto dir = o.direction == "heating" ? bpsma::SweepDirection::Heating : bpsma::SweepDirection::Cooling;
  const auto tg = bpsma::read_thermogram_csv(o.in, dir);
  const auto t = bpsma::extract_transformation_temperatures(tg, {o.baseline_fraction, o.window});
  std::ostringstream os;
  os << "start_degC," << bpsma::detail::format_double(t.start) << '\n'
     << "peak_degC," << bpsma::detail::format_double(t.peak) << '\n'
     << "finish_degC," << bpsma::detail::format_double(t.finish) << '\n';
  emit(o.out, os.str());
  return kOk;
}

int cmd_dfmea(const Options& o) {
  const auto ranked = bpsma::rank(bpsma::read_failure_modes_csv(o.in));
  std::ostringstream os;
  if (o.format == "csv") bpsma::write_rank_csv(os, ranked);
  else bpsma::write_rank_table(os, ranked);
  emit(o.report, os.str());
  return kOk;
}

int cmd_amplify(const Options& o) {
  bpsma::HsamParams h;
  if (o.factor) h.factor = *o.factor;
  else if (o.d_upper && o.d_lower) h.factor = bpsma::factor_from_pistons(*o.d_upper, *o.d_lower);
  bpsma::validate(h);
  const auto r = bpsma::amplify(o.stroke, o.force, h);
  std::ostringstream os;
  os << "factor," << bpsma::detail::format_double(h.factor) << '\n'
     << "stroke_m," << bpsma::detail::format_double(r.stroke) << '\n'
     << "force_N," << bpsma::detail::format_double(r.force) << '\n';
  emit(o.out, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipennate SMA actuator toolkit"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> modes{"blocked", "spring", "amplified"};

  auto* sim = app.add_subcommand("simulate", "Integrate the actuator model over a voltage drive");
  sim->add_option("--config", o.config, "Configuration file")->required();
  sim->add_option("--drive", o.drive, "Drive, e.g. \"15V@10s,0V@15s\" (overrides the config drive)");
  sim->add_option("--mode", o.mode, "blocked | spring | amplified")->check(CLI::IsMember(modes));
  sim->add_option("--out", o.out, "Trajectory CSV path, - for stdout");
  sim->add_option("--plot", o.plot, "SVG plot path");

  auto* sv = app.add_subcommand("sweep-voltage", "Peak response against drive voltage");
  sv->add_option("--config", o.config, "Configuration file")->required();
  sv->add_option("--voltages", o.voltages, "Comma-separated voltages in V");
  sv->add_option("--heat", o.heat_s, "Heating duration in s");
  sv->add_option("--cool", o.cool_s, "Cooling duration in s (0 to omit)");
  sv->add_option("--mode", o.mode, "blocked | spring | amplified")->check(CLI::IsMember(modes));
  sv->add_option("--out", o.out, "Sweep CSV path, - for stdout");
  sv->add_option("--plot", o.plot, "SVG plot path");

  auto* ss = app.add_subcommand("sweep-spring", "Peak response against bias spring stiffness");
  ss->add_option("--config", o.config, "Configuration file")->required();
  ss->add_option("--stiffness", o.stiffness, "Comma-separated stiffnesses in N/mm (default: catalogue k_1..k_5)");
  ss->add_option("--x0", o.x0_mm, "Spring pre-deflection in mm (default: config value)");
  ss->add_option("--voltage", o.voltage, "Drive voltage in V");
  ss->add_option("--heat", o.heat_s, "Heating duration in s");
  ss->add_option("--mode", o.mode, "blocked | spring | amplified")->check(CLI::IsMember(modes));
  ss->add_option("--out", o.out, "Sweep CSV path, - for stdout");
  ss->add_option("--plot", o.plot, "SVG plot path");

  auto* me = app.add_subcommand("metrics", "Sustained-force statistics of a trajectory CSV");
  me->add_option("--in", o.in, "Trajectory CSV")->required();
  me->add_option("--t-switch", o.t_switch, "Voltage step-down instant in s")->required();
  me->add_option("--config", o.config, "Configuration file; adds an energy audit");
  me->add_option("--out", o.out, "Output path, - for stdout");

  auto* ds = app.add_subcommand("dsc", "Transformation temperatures from a DSC sweep");
  ds->add_option("--in", o.in, "Two-column CSV (T, heat_flow) with a header row")->required();
  ds->add_option("--direction", o.direction, "heating | cooling")->check(CLI::IsMember({"heating", "cooling"}));
  ds->add_option("--baseline-fraction", o.baseline_fraction, "Baseline fraction at each end");
  ds->add_option("--window", o.window, "Slope half-window in samples");
  ds->add_option("--out", o.out, "Output path, - for stdout");

  auto* fm = app.add_subcommand("dfmea", "Rank failure modes by risk priority number");
  fm->add_option("--in", o.in, "Failure-mode CSV")->required();
  fm->add_option("--report", o.report, "Report path, - for stdout");
  fm->add_option("--format", o.format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

  auto* am = app.add_subcommand("amplify", "Hydraulic amplifier stroke/force conversion");
  auto* factor = am->add_option("--factor", o.factor, "Amplification factor");
  auto* du = am->add_option("--d-upper", o.d_upper, "Input piston diameter in m");
  auto* dl = am->add_option("--d-lower", o.d_lower, "Output piston diameter in m");
  factor->excludes(du)->excludes(dl);
  du->needs(dl);
  dl->needs(du);
  am->add_option("--stroke", o.stroke, "Input stroke in m")->required();
  am->add_option("--force", o.force, "Input force in N")->required();
  am->add_option("--out", o.out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return cmd_simulate(o);
    if (*sv) return cmd_sweep_voltage(o);
    if (*ss) return cmd_sweep_spring(o);
    if (*me) return cmd_metrics(o);
    if (*ds) return cmd_dsc(o);
    if (*fm) return cmd_dfmea(o);
    if (*am) return cmd_amplify(o);
  } catch (const bpsma::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const bpsma::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const bpsma::UnitError& e) {
    std::cerr << "unit error: " << e.what() << '\n';
    return kUnit;
  } catch (const bpsma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const bpsma::AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << '\n';
    return kAnalysis;
  } catch (const bpsma::SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kSimulation;
  } catch (const bpsma::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
