#pragma once

// Bipennate kinematics: wire stress to actuator force and stroke, and stroke
// rate back to wire strain rate.

#include <cmath>
#include <numbers>
#include <string>

#include "bpsma/error.hpp"
#include "bpsma/material.hpp"

namespace bpsma {

struct BipennateGeometry {
  int n = 60;                                   // unipennate branches
  double alpha = 40.0 * std::numbers::pi / 180;  // pennation angle, rad
  double l_0 = 0.09;                            // initial unipennate length, m
  double d = 0.51e-3;                           // wire diameter, m

  double cross_section() const { return std::numbers::pi * d * d / 4.0; }
  double total_length() const { return n * l_0; }

  bool operator==(const BipennateGeometry&) const = default;
};

struct BiasSpring {
  double K_x = 3360.0;  // N/m
  double x_0 = 0.027;   // m
  std::string label;

  bool operator==(const BiasSpring&) const = default;
};

inline void validate(const BipennateGeometry& g) {
  if (g.n < 1) throw ConfigError("geometry.n must be >= 1");
  if (!(g.alpha > 0.0 && g.alpha < std::numbers::pi / 2)) {
    throw ConfigError("geometry.alpha must lie in (0, 90) deg");
  }
  if (!(g.l_0 > 0.0)) throw ConfigError("geometry.l_0 must be > 0");
  if (!(g.d > 0.0)) throw ConfigError("geometry.d must be > 0");
}

inline void validate(const BiasSpring& s) {
  if (!(s.K_x > 0.0)) throw ConfigError("spring.K_x must be > 0");
  if (!(s.x_0 >= 0.0)) throw ConfigError("spring.x_0 must be >= 0");
}

/// F_a = n sigma A cos(alpha) - K_x (dx + x_0)
inline double actuation_force(double sigma, double dx, const BipennateGeometry& g, const BiasSpring& s) {
  const double wire_force = sigma * g.cross_section();
  return g.n * wire_force * std::cos(g.alpha) - s.K_x * (dx + s.x_0);
}

/// Wire stress that balances the spring preload at zero stroke.
inline double pretension_stress(const BipennateGeometry& g, const BiasSpring& s) {
  return s.K_x * s.x_0 / (g.n * g.cross_section() * std::cos(g.alpha));
}

/// Numerator and denominator of the quasi-static stroke relation, kept
/// separate because the simulator differentiates them.
struct StrokeTerms {
  double numerator;    // N
  double denominator;  // N/m
};

inline StrokeTerms stroke_terms(double sigma, double eps, double xi, const BipennateGeometry& g,
                                const BiasSpring& s, const SmaMaterialParams& p) {
  const double A = g.cross_section();
  const double c = std::cos(g.alpha);
  const double sn = std::sin(g.alpha);
  const double E = young_modulus(xi, p);
  return {g.n * sigma * A * c - s.K_x * s.x_0,
          (g.n / g.l_0) * A * (-E * c * c + sigma / (1.0 - eps) * sn * sn)};
}

inline constexpr double kStrokeDenominatorFloor = 1e-12;  // N/m

/// Quasi-static stroke:
/// dx = (n sigma A cos a - K_x x_0) / ((n/l_0) A [-E cos^2 a + sigma/(1-eps) sin^2 a])
inline double quasistatic_stroke(double sigma, double eps, double xi, const BipennateGeometry& g,
                                 const BiasSpring& s, const SmaMaterialParams& p) {
  if (!(eps < 1.0)) throw DomainError("quasistatic_stroke: eps must be < 1");
  const auto t = stroke_terms(sigma, eps, xi, g, s, p);
  if (std::abs(t.denominator) < kStrokeDenominatorFloor) {
    throw SingularityError("quasistatic_stroke: stiffness term vanishes");
  }
  return t.numerator / t.denominator;
}

/// eps_dot = dx_dot cos(a) / sqrt(l_0^2 - 2 l_0 dx cos(a)).
///
/// With exact_geometry the full law-of-cosines length
/// l = sqrt(l_0^2 + dx^2 - 2 l_0 dx cos a) is used instead, keeping the same
/// sign convention: eps_dot = (l_0 cos a - dx) dx_dot / (l_0 l).
inline double strain_rate_from_stroke(double dx, double dx_rate, const BipennateGeometry& g,
                                      bool exact_geometry = false) {
  const double c = std::cos(g.alpha);
  if (exact_geometry) {
    const double l_sq = g.l_0 * g.l_0 + dx * dx - 2.0 * g.l_0 * dx * c;
    if (!(l_sq > 0.0)) throw GeometryError("strain_rate_from_stroke: wire length collapses");
    return (g.l_0 * c - dx) * dx_rate / (g.l_0 * std::sqrt(l_sq));
  }
  const double radicand = g.l_0 * g.l_0 - 2.0 * g.l_0 * dx * c;
  if (!(radicand > 0.0)) {
    throw GeometryError("strain_rate_from_stroke: stroke " + std::to_string(dx) +
                        " m exceeds the valid range");
  }
  return dx_rate * c / std::sqrt(radicand);
}

}  // namespace bpsma
