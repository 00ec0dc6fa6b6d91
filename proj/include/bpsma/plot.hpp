#pragma once

// Dependency-free SVG line charts, one or more vertically stacked panels.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace bpsma::plot {

struct Trace {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool markers = false;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Trace> traces;
};

namespace detail {

/// Round tick spacing (1, 2 or 5 times a power of ten) giving about `target` ticks.
inline double nice_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double nice = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string tick_label(double v, double step) {
  std::ostringstream os;
  if (std::abs(v) < step * 1e-9) v = 0.0;
  const int digits = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo <= 0.0) {
      const double d = std::abs(lo) > 0.0 ? std::abs(lo) * 0.1 : 1.0;
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace detail

inline std::string render_svg(const std::vector<Panel>& panels, int width = 800, int panel_height = 300) {
  const int left = 80, right = 160, top = 40, bottom = 50;
  const int height = static_cast<int>(panels.size()) * panel_height;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double y0 = static_cast<double>(p) * panel_height;
    const double pw = width - left - right;
    const double ph = panel_height - top - bottom;
    detail::Range xr, yr;
    for (const auto& t : panel.traces) {
      for (double v : t.x) xr.add(v);
      for (double v : t.y) yr.add(v);
    }
    xr.pad();
    yr.pad();
    const double xstep = detail::nice_step(xr.hi - xr.lo, 8);
    const double ystep = detail::nice_step(yr.hi - yr.lo, 6);
    yr.lo = std::floor(yr.lo / ystep) * ystep;
    yr.hi = std::ceil(yr.hi / ystep) * ystep;
    auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return y0 + top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << y0 + 22 << "\" text-anchor=\"middle\" font-size=\"14\">"
        << detail::escape(panel.title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << y0 + top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + xstep * 1e-9; v += xstep) {
      svg << "<line x1=\"" << sx(v) << "\" y1=\"" << y0 + top + ph << "\" x2=\"" << sx(v) << "\" y2=\""
          << y0 + top + ph + 5 << "\" stroke=\"black\"/>";
      svg << "<text x=\"" << sx(v) << "\" y=\"" << y0 + top + ph + 18 << "\" text-anchor=\"middle\">"
          << detail::tick_label(v, xstep) << "</text>\n";
    }
    for (double v = yr.lo; v <= yr.hi + ystep * 1e-9; v += ystep) {
      svg << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(v) << "\" x2=\"" << left << "\" y2=\"" << sy(v)
          << "\" stroke=\"black\"/>";
      svg << "<line x1=\"" << left << "\" y1=\"" << sy(v) << "\" x2=\"" << left + pw << "\" y2=\"" << sy(v)
          << "\" stroke=\"#dddddd\"/>";
      svg << "<text x=\"" << left - 8 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\">"
          << detail::tick_label(v, ystep) << "</text>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << y0 + panel_height - 10
        << "\" text-anchor=\"middle\">" << detail::escape(panel.x_label) << "</text>\n";
    svg << "<text transform=\"translate(20," << y0 + top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << detail::escape(panel.y_label) << "</text>\n";

    for (std::size_t i = 0; i < panel.traces.size(); ++i) {
      const auto& t = panel.traces[i];
      svg << "<polyline fill=\"none\" stroke=\"" << t.color << "\" stroke-width=\"1.5\" points=\"";
      const auto n = std::min(t.x.size(), t.y.size());
      for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(t.x[k]) || !std::isfinite(t.y[k])) continue;
        svg << sx(t.x[k]) << ',' << sy(t.y[k]) << ' ';
      }
      svg << "\"/>\n";
      if (t.markers) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!std::isfinite(t.x[k]) || !std::isfinite(t.y[k])) continue;
          svg << "<circle cx=\"" << sx(t.x[k]) << "\" cy=\"" << sy(t.y[k]) << "\" r=\"3\" fill=\"" << t.color
              << "\"/>";
        }
        svg << '\n';
      }
      const double ly = y0 + top + 14 + 18.0 * static_cast<double>(i);
      svg << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\""
          << ly << "\" stroke=\"" << t.color << "\" stroke-width=\"2\"/>";
      svg << "<text x=\"" << left + pw + 35 << "\" y=\"" << ly + 4 << "\">" << detail::escape(t.label)
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bpsma::plot
