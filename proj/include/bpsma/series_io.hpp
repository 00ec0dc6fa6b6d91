#pragma once

// Trajectory CSV (lossless) and SVG rendering of simulated runs.
//
// CSV schema, fixed column order:
//   t,T,xi,sigma,eps,dx,F_a,V,R_ohm,regime
// Units: s, degC, -, Pa, -, m, N, V, Ohm, {neutral|reverse|forward}.
// Numbers use the shortest decimal form that round-trips exactly.

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bpsma/config_io.hpp"
#include "bpsma/csv.hpp"
#include "bpsma/error.hpp"
#include "bpsma/plot.hpp"
#include "bpsma/sim_engine.hpp"

namespace bpsma {

inline constexpr std::string_view kTimeSeriesHeader = "t,T,xi,sigma,eps,dx,F_a,V,R_ohm,regime";

inline void write_timeseries_csv(std::ostream& out, const TimeSeries& series) {
  using detail::format_double;
  out << kTimeSeriesHeader << '\n';
  for (const auto& s : series.samples) {
    out << format_double(s.t) << ',' << format_double(s.T) << ',' << format_double(s.xi) << ','
        << format_double(s.sigma) << ',' << format_double(s.eps) << ',' << format_double(s.dx) << ','
        << format_double(s.F_a) << ',' << format_double(s.V) << ',' << format_double(s.R_ohm) << ','
        << to_string(s.regime) << '\n';
  }
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
  std::ostringstream os;
  write_timeseries_csv(os, series);
  write_text_file(path, os.str());
}

inline TimeSeries read_timeseries_csv(std::istream& in, const std::string& source = "<csv>") {
  const auto rows = csv::read_all(in);
  if (rows.empty()) throw ParseError(source + ": empty file, expected header");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kTimeSeriesHeader) {
    throw ParseError(source + ": unexpected header '" + header + "'");
  }
  TimeSeries series;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto where = source + ":" + std::to_string(r + 1);
    if (row.size() != 10) throw ParseError(where + ": expected 10 columns");
    std::array<double, 9> v{};
    for (std::size_t i = 0; i < 9; ++i) v[i] = detail::parse_number(row[i], where);
    const auto regime = regime_from_string(row[9]);
    if (!regime) throw ParseError(where + ": unknown regime '" + row[9] + "'");
    series.samples.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], *regime});
  }
  if (series.samples.size() >= 2) series.output_interval = series.samples[1].t - series.samples[0].t;
  return series;
}

inline TimeSeries read_timeseries_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_timeseries_csv(in, path);
}

/// Force, temperature and martensite fraction against time.
inline std::string render_series_plot(const TimeSeries& series, const std::string& title = "Simulated actuation") {
  plot::Trace force{"F_a", {}, {}, "#d62728"};
  plot::Trace temp{"T", {}, {}, "#ff7f0e"};
  plot::Trace xi{"xi", {}, {}, "#2ca02c"};
  plot::Trace volts{"V", {}, {}, "#7f7f7f"};
  for (const auto& s : series.samples) {
    force.x.push_back(s.t), force.y.push_back(s.F_a);
    temp.x.push_back(s.t), temp.y.push_back(s.T);
    xi.x.push_back(s.t), xi.y.push_back(s.xi);
    volts.x.push_back(s.t), volts.y.push_back(s.V);
  }
  return plot::render_svg({
      {title + ": actuation force", "time [s]", "force [N]", {force}},
      {"wire temperature", "time [s]", "temperature [degC]", {temp}},
      {"martensite fraction", "time [s]", "xi [-]", {xi}},
      {"drive voltage", "time [s]", "voltage [V]", {volts}},
  });
}

}  // namespace bpsma
