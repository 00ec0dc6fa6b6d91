#pragma once

// Transformation temperatures from a single DSC sweep by the tangent method:
// the tangent at the steepest point of each peak flank is intersected with
// the extrapolated baseline.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "bpsma/csv.hpp"
#include "bpsma/drive.hpp"
#include "bpsma/error.hpp"

namespace bpsma {

enum class SweepDirection { Heating, Cooling };

struct ThermogramSample {
  double T;          // degC
  double heat_flow;  // mW
};

struct Thermogram {
  std::vector<ThermogramSample> samples;
  SweepDirection direction = SweepDirection::Heating;
};

struct TransformationTemps {
  double start;   // degC
  double finish;  // degC
  double peak;    // degC
};

struct DscOptions {
  double baseline_fraction = 0.2;  // of the samples, at each end
  int slope_half_window = 2;       // 2 -> centered 5-point least-squares slope
};

namespace detail {

inline double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace detail

inline void validate(const Thermogram& tg) {
  const auto& s = tg.samples;
  if (s.size() < 50) throw AnalysisError("thermogram needs at least 50 samples, got " + std::to_string(s.size()));
  for (std::size_t i = 1; i < s.size(); ++i) {
    const bool ok = tg.direction == SweepDirection::Heating ? s[i].T > s[i - 1].T : s[i].T < s[i - 1].T;
    if (!ok) {
      throw AnalysisError("thermogram temperature is not strictly monotone in the sweep direction at sample " +
                          std::to_string(i));
    }
    if (!std::isfinite(s[i].heat_flow)) throw AnalysisError("non-finite heat flow at sample " + std::to_string(i));
  }
}

inline TransformationTemps extract_transformation_temperatures(const Thermogram& tg, const DscOptions& opt = {}) {
  validate(tg);
  const auto& s = tg.samples;
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  const int w = opt.slope_half_window;
  if (w < 1) throw AnalysisError("slope window must be >= 1");
  if (!(opt.baseline_fraction > 0.0 && opt.baseline_fraction < 0.5)) {
    throw AnalysisError("baseline fraction must lie in (0, 0.5)");
  }
  const auto nb = std::max<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(opt.baseline_fraction * n));

  // Baseline by least squares over both outer regions.
  std::vector<std::ptrdiff_t> base;
  for (std::ptrdiff_t i = 0; i < nb; ++i) base.push_back(i);
  for (std::ptrdiff_t i = n - nb; i < n; ++i) base.push_back(i);
  double mt = 0.0, mh = 0.0;
  for (auto i : base) mt += s[i].T, mh += s[i].heat_flow;
  mt /= static_cast<double>(base.size());
  mh /= static_cast<double>(base.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto i : base) {
    sxx += (s[i].T - mt) * (s[i].T - mt);
    sxy += (s[i].T - mt) * (s[i].heat_flow - mh);
  }
  const double slope = sxy / sxx;
  std::vector<double> r(s.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) r[i] = s[i].heat_flow - (mh + slope * (s[i].T - mt));

  // Noise floor from the baseline residuals.
  std::vector<double> base_res;
  for (auto i : base) base_res.push_back(r[i]);
  const double med = detail::median(base_res);
  std::vector<double> dev;
  for (double v : base_res) dev.push_back(std::abs(v - med));
  const double floor = 3.0 * detail::median(dev);

  std::ptrdiff_t peak = 0;
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    if (std::abs(r[i]) > std::abs(r[peak])) peak = i;
  }
  const double height = r[peak];
  if (!(std::abs(height) > floor) || height == 0.0) throw AnalysisError("no peak above the noise floor");

  // Count excursions well above the floor; gaps shorter than the slope window are merged.
  const double level = std::max(floor, 0.25 * std::abs(height));
  int excursions = 0;
  int sign = 0;
  std::ptrdiff_t last = -n;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (std::abs(r[i]) <= level) continue;
    const int sg = r[i] > 0 ? 1 : -1;
    if (sg != sign || i - last > w + 1) ++excursions;
    sign = sg;
    last = i;
  }
  if (excursions != 1) throw AnalysisError("expected exactly one peak, found " + std::to_string(excursions));

  // Least-squares slope dr/dT over 2w+1 points.
  auto slope_at = [&](std::ptrdiff_t i) {
    double num = 0.0, den = 0.0;
    for (int k = -w; k <= w; ++k) {
      num += k * r[i + k];
      den += k * s[i + k].T;
    }
    return num / den;
  };
  const double up = height > 0 ? 1.0 : -1.0;
  const double dTdi = tg.direction == SweepDirection::Heating ? 1.0 : -1.0;
  const double t_range = std::abs(s.back().T - s.front().T);

  auto tangent = [&](std::ptrdiff_t from, std::ptrdiff_t to, double toward_peak) {
    // toward_peak: +1 where |r| grows with the sample index, -1 where it shrinks.
    std::ptrdiff_t best = -1;
    double best_rate = 0.0;
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(from, w); i < std::min<std::ptrdiff_t>(to, n - w); ++i) {
      const double per_index = slope_at(i) * dTdi * up * toward_peak;
      if (per_index > best_rate) best_rate = per_index, best = i;
    }
    if (best < 0) throw AnalysisError("peak flank has no rising segment");
    const double m = slope_at(best);
    if (!(std::abs(m) * t_range > 1e-9 * std::abs(height))) {
      throw AnalysisError("steepest tangent is parallel to the baseline");
    }
    return s[best].T - r[best] / m;
  };

  TransformationTemps out{};
  out.start = tangent(0, peak, 1.0);
  out.finish = tangent(peak + 1, n, -1.0);
  out.peak = s[peak].T;
  const bool ordered = tg.direction == SweepDirection::Heating
                           ? out.start <= out.peak && out.peak <= out.finish
                           : out.start >= out.peak && out.peak >= out.finish;
  if (!ordered) throw AnalysisError("tangent intersections do not bracket the peak");
  return out;
}

/// Two-column CSV (T, heat_flow) with one header row.
inline Thermogram read_thermogram_csv(std::istream& in, SweepDirection direction, const std::string& source = "<csv>") {
  const auto rows = csv::read_all(in);
  if (rows.empty()) throw ParseError(source + ": empty thermogram file");
  Thermogram tg;
  tg.direction = direction;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto where = source + ":" + std::to_string(r + 1);
    if (rows[r].size() != 2) throw ParseError(where + ": expected 2 columns");
    tg.samples.push_back({detail::parse_number(rows[r][0], where), detail::parse_number(rows[r][1], where)});
  }
  return tg;
}

inline Thermogram read_thermogram_csv(const std::string& path, SweepDirection direction) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_thermogram_csv(in, direction, path);
}

}  // namespace bpsma
