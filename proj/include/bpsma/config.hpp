#pragma once

// Aggregate actuator configuration and its cross-field validation.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "bpsma/drive.hpp"
#include "bpsma/error.hpp"
#include "bpsma/hsam.hpp"
#include "bpsma/material.hpp"
#include "bpsma/pennate.hpp"
#include "bpsma/thermal.hpp"

namespace bpsma {

/// n_parallel branches, each a chain of n_series stacks of length l_branch.
struct ElectricalNetwork {
  int n_series = 2;
  int n_parallel = 3;
  double l_branch = 0.9;  // m

  bool operator==(const ElectricalNetwork&) const = default;
};

/// Resistance of the whole wire network for the given martensite fraction.
inline double network_resistance(double xi, const ElectricalNetwork& net, const SmaMaterialParams& p,
                                 double cross_section) {
  const double branch = net.n_series * net.l_branch * resistivity_mix(xi, p) / cross_section;
  return branch / net.n_parallel;
}

struct SolverSettings {
  double dt = 1e-3;               // s
  double output_interval = 1e-2;  // s
  double fixpoint_tol = 1e-8;
  int max_iters = 50;
  double overtemp_warning = 120.0;  // degC
  bool exact_geometry = false;

  bool operator==(const SolverSettings&) const = default;
};

struct ActuatorConfig {
  SmaMaterialParams material;
  BipennateGeometry geometry;
  BiasSpring spring;
  ElectricalNetwork network;
  ThermalConfig thermal;
  SolverSettings solver;
  std::optional<HsamParams> hsam;
  std::optional<DriveProfile> drive;

  bool operator==(const ActuatorConfig&) const = default;
};

/// Wire mass and lateral area follow from the bundle geometry.
inline ThermalConfig derive_thermal(const SmaMaterialParams& p, const BipennateGeometry& g, double h_T,
                                    double T_inf) {
  const double length = g.total_length();
  return {p.rho * g.cross_section() * length, std::numbers::pi * g.d * length, h_T, T_inf};
}

namespace detail {
inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace detail

inline void validate(const ElectricalNetwork& net, const BipennateGeometry& g) {
  if (net.n_series < 1) throw ConfigError("network.n_series must be >= 1");
  if (net.n_parallel < 1) throw ConfigError("network.n_parallel must be >= 1");
  if (!(net.l_branch > 0.0)) throw ConfigError("network.l_branch must be > 0");
  const double wired = net.n_series * net.n_parallel * net.l_branch;
  if (!detail::close_rel(wired, g.total_length(), 1e-9)) {
    throw ConfigError("network: n_series * n_parallel * l_branch = " + std::to_string(wired) +
                      " m does not match geometry n * l_0 = " + std::to_string(g.total_length()) + " m");
  }
}

inline void validate(const SolverSettings& s) {
  if (!(s.dt > 0.0 && s.dt <= 1e-2)) throw ConfigError("solver.dt must lie in (0, 10 ms]");
  if (!(s.output_interval >= s.dt)) throw ConfigError("solver.output_interval must be >= solver.dt");
  const double ratio = s.output_interval / s.dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw ConfigError("solver.output_interval must be an integer multiple of solver.dt");
  }
  if (!(s.fixpoint_tol > 0.0)) throw ConfigError("solver.fixpoint_tol must be > 0");
  if (s.max_iters < 1) throw ConfigError("solver.max_iters must be >= 1");
}

inline void validate(const ActuatorConfig& c) {
  validate(c.material);
  validate(c.geometry);
  validate(c.spring);
  validate(c.network, c.geometry);
  validate(c.thermal);
  validate(c.solver);
  if (c.hsam) validate(*c.hsam);
  if (c.drive) validate(*c.drive);
  const auto derived = derive_thermal(c.material, c.geometry, c.thermal.h_T, c.thermal.T_inf);
  if (!detail::close_rel(derived.m_wire, c.thermal.m_wire, 1e-9)) {
    throw ConfigError("thermal.m_wire inconsistent with rho * A_cross * n * l_0");
  }
  if (!detail::close_rel(derived.A_c, c.thermal.A_c, 1e-9)) {
    throw ConfigError("thermal.A_c inconsistent with pi * d * n * l_0");
  }
}

/// Reference actuator: the published parameter set with the k_3 bias spring.
inline ActuatorConfig reference_config() {
  ActuatorConfig c;
  c.spring.label = "k_3";
  c.thermal = derive_thermal(c.material, c.geometry, 85.0, 18.0);
  return c;
}

}  // namespace bpsma
