#pragma once

// Lumped heat balance of the wire bundle: Joule heating, forced convection
// and latent heat of transformation. Radiation is neglected.

#include "bpsma/error.hpp"
#include "bpsma/material.hpp"

namespace bpsma {

struct ThermalConfig {
  double m_wire = 0.0;  // total SMA mass, kg
  double A_c = 0.0;     // total lateral surface, m^2
  double h_T = 85.0;    // W/(m^2 K)
  double T_inf = 18.0;  // degC

  bool operator==(const ThermalConfig&) const = default;
};

inline void validate(const ThermalConfig& cfg) {
  if (!(cfg.m_wire > 0.0)) throw ConfigError("thermal.m_wire must be > 0");
  if (!(cfg.A_c > 0.0)) throw ConfigError("thermal.A_c must be > 0");
  if (!(cfg.h_T > 0.0)) throw ConfigError("thermal.h_T must be > 0");
}

/// m c_p T_dot = V^2/R - A_c h_T (T - T_inf) + m dH xi_dot
inline double temperature_rate(double T, double V_in, double R_ohm, double dXi_dt, const ThermalConfig& cfg,
                               const SmaMaterialParams& p) {
  if (!(R_ohm > 0.0)) throw ConfigError("thermal: R_ohm must be > 0");
  const double heat_capacity = cfg.m_wire * p.c_p;
  if (!(heat_capacity > 0.0)) throw ConfigError("thermal: m_wire * c_p must be > 0");
  const double joule = V_in * V_in / R_ohm;
  const double convected = cfg.A_c * cfg.h_T * (T - cfg.T_inf);
  const double latent = cfg.m_wire * p.dH * dXi_dt;
  return (joule - convected + latent) / heat_capacity;
}

/// Temperature at which Joule heating balances convection (no transformation).
inline double steady_state_temperature(double V_in, double R_ohm, const ThermalConfig& cfg) {
  if (!(R_ohm > 0.0)) throw ConfigError("thermal: R_ohm must be > 0");
  return cfg.T_inf + V_in * V_in / (R_ohm * cfg.A_c * cfg.h_T);
}

/// Free-cooling time constant m c_p / (A_c h_T).
inline double cooling_time_constant(const ThermalConfig& cfg, const SmaMaterialParams& p) {
  return cfg.m_wire * p.c_p / (cfg.A_c * cfg.h_T);
}

}  // namespace bpsma
