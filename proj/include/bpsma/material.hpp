#pragma once

// SMA material constants, phase-mixing laws and the transformation kinetics
// (cosine phase-kinetics model with stress-shifted transformation windows).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "bpsma/error.hpp"

namespace bpsma {

/// Material constants, SI units except temperatures (degC).
struct SmaMaterialParams {
  double E_A = 75e9;       // Pa
  double E_M = 28e9;       // Pa
  double theta_T = 0.55e6; // Pa/degC
  double eps_L = 0.04;
  double C_A = 10e6;  // Pa/degC
  double C_M = 10e6;  // Pa/degC
  double A_s = 78.2;
  double A_f = 82.1;
  double M_s = 54.5;
  double M_f = 48.9;
  std::optional<double> A_s0;  // first-cycle austenite start
  std::optional<double> A_f0;  // first-cycle austenite finish
  double rho = 6450.0;   // kg/m^3
  double c_p = 836.8;    // J/(kg K)
  double dH = 24e3;      // J/kg
  double r_A = 1.0e-6;   // Ohm m
  double r_M = 0.8e-6;   // Ohm m

  bool operator==(const SmaMaterialParams&) const = default;
};

/// Throws ConfigError naming the offending fields.
inline void validate(const SmaMaterialParams& p) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(p.E_M > 0.0)) fail("material.E_M must be > 0");
  if (!(p.E_A > p.E_M)) fail("material.E_A must exceed material.E_M");
  if (!(p.C_A > 0.0)) fail("material.C_A must be > 0");
  if (!(p.C_M > 0.0)) fail("material.C_M must be > 0");
  if (!(p.eps_L > 0.0 && p.eps_L <= 0.1)) fail("material.eps_L must lie in (0, 0.1]");
  if (!(p.A_f > p.A_s)) fail("material.A_f must exceed material.A_s");
  if (!(p.M_s > p.M_f)) fail("material.M_s must exceed material.M_f");
  if (p.A_s0.has_value() != p.A_f0.has_value()) fail("material.A_s0 and material.A_f0 must be given together");
  if (p.A_s0 && !(*p.A_f0 > *p.A_s0)) fail("material.A_f0 must exceed material.A_s0");
  if (!(p.rho > 0.0)) fail("material.rho must be > 0");
  if (!(p.c_p > 0.0)) fail("material.c_p must be > 0");
  if (!(p.dH > 0.0)) fail("material.dH must be > 0");
  if (!(p.r_A > 0.0)) fail("material.r_A must be > 0");
  if (!(p.r_M > 0.0)) fail("material.r_M must be > 0");
}

/// Martensite fraction together with the regime-memory fractions.
struct PhaseState {
  double xi = 1.0;
  double xi_M = 1.0;  // fraction at onset of the latest heating (reverse) episode
  double xi_A = 0.0;  // fraction at onset of the latest cooling (forward) episode

  bool operator==(const PhaseState&) const = default;
};

struct TransformationCoefficients {
  double a_A;  // 1/degC
  double a_M;  // 1/degC
  double b_A;  // 1/Pa
  double b_M;  // 1/Pa
};

enum class Regime { Neutral, Reverse, Forward };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Reverse: return "reverse";
    case Regime::Forward: return "forward";
    case Regime::Neutral: break;
  }
  return "neutral";
}

inline std::optional<Regime> regime_from_string(std::string_view s) {
  if (s == "neutral") return Regime::Neutral;
  if (s == "reverse") return Regime::Reverse;
  if (s == "forward") return Regime::Forward;
  return std::nullopt;
}

inline TransformationCoefficients transformation_coefficients(const SmaMaterialParams& p) {
  if (!(p.A_f > p.A_s)) throw ConfigError("degenerate austenite span: A_f must exceed A_s");
  if (!(p.M_s > p.M_f)) throw ConfigError("degenerate martensite span: M_s must exceed M_f");
  TransformationCoefficients c{};
  c.a_A = std::numbers::pi / (p.A_f - p.A_s);
  c.a_M = std::numbers::pi / (p.M_s - p.M_f);
  c.b_A = -c.a_A / p.C_A;
  c.b_M = -c.a_M / p.C_M;
  return c;
}

namespace detail {
inline void require_fraction(double xi, const char* what) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(xi));
  }
}
}  // namespace detail

/// E(xi) = xi E_M + (1 - xi) E_A.
inline double young_modulus(double xi, const SmaMaterialParams& p) {
  detail::require_fraction(xi, "xi");
  return xi * p.E_M + (1.0 - xi) * p.E_A;
}

/// r(xi) = xi r_M + (1 - xi) r_A.
inline double resistivity_mix(double xi, const SmaMaterialParams& p) {
  detail::require_fraction(xi, "xi");
  return xi * p.r_M + (1.0 - xi) * p.r_A;
}

/// Reverse window [A_s + sigma/C_A, A_f + sigma/C_A].
inline bool in_reverse_window(double T, double sigma, const SmaMaterialParams& p) {
  return p.A_s + sigma / p.C_A <= T && T <= p.A_f + sigma / p.C_A;
}

/// Forward window [M_f + sigma/C_M, M_s + sigma/C_M].
inline bool in_forward_window(double T, double sigma, const SmaMaterialParams& p) {
  return p.M_f + sigma / p.C_M <= T && T <= p.M_s + sigma / p.C_M;
}

/// Active transformation regime. The guards are strict, so zero rates give Neutral.
inline Regime transformation_regime(double T, double sigma, double dT_dt, double dSigma_dt,
                                    const SmaMaterialParams& p) {
  if (dT_dt - dSigma_dt / p.C_A > 0.0 && in_reverse_window(T, sigma, p)) return Regime::Reverse;
  if (dT_dt - dSigma_dt / p.C_M < 0.0 && in_forward_window(T, sigma, p)) return Regime::Forward;
  return Regime::Neutral;
}

/// Reverse (M->A) closed form without clamping; exposes the exact edge values.
inline double xi_reverse_unclamped(double T, double sigma, double xi_M, const SmaMaterialParams& p) {
  detail::require_fraction(xi_M, "xi_M");
  if (!in_reverse_window(T, sigma, p)) {
    throw DomainError("temperature outside the reverse transformation window");
  }
  const auto c = transformation_coefficients(p);
  return 0.5 * xi_M * (std::cos(c.a_A * (T - p.A_s) + c.b_A * sigma) + 1.0);
}

inline double xi_reverse_closed_form(double T, double sigma, double xi_M, const SmaMaterialParams& p) {
  return std::clamp(xi_reverse_unclamped(T, sigma, xi_M, p), 0.0, xi_M);
}

/// Forward (A->M) closed form without clamping.
inline double xi_forward_unclamped(double T, double sigma, double xi_A, const SmaMaterialParams& p) {
  detail::require_fraction(xi_A, "xi_A");
  if (!in_forward_window(T, sigma, p)) {
    throw DomainError("temperature outside the forward transformation window");
  }
  const auto c = transformation_coefficients(p);
  return 0.5 * (1.0 - xi_A) * std::cos(c.a_M * (T - p.M_f) + c.b_M * sigma) + 0.5 * (1.0 + xi_A);
}

inline double xi_forward_closed_form(double T, double sigma, double xi_A, const SmaMaterialParams& p) {
  return std::clamp(xi_forward_unclamped(T, sigma, xi_A, p), xi_A, 1.0);
}

/// Sensitivities of the martensite fraction, xi_dot = eta_sigma sigma_dot + eta_T T_dot.
struct KineticGains {
  double eta_sigma = 0.0;  // 1/Pa
  double eta_T = 0.0;      // 1/degC
};

/// Gains for a given regime. Both are the exact partial derivatives of the
/// matching closed form, so integrating the rate reproduces it. Past either
/// window edge the closed form is flat and the gains vanish.
inline KineticGains kinetic_gains(Regime regime, double T, double sigma, const PhaseState& phase,
                                  const SmaMaterialParams& p) {
  const auto c = transformation_coefficients(p);
  auto inside = [](double arg) { return arg > 0.0 && arg < std::numbers::pi; };
  switch (regime) {
    case Regime::Reverse: {
      const double arg = c.a_A * (T - p.A_s - sigma / p.C_A);
      if (!inside(arg)) return {};
      const double s = std::sin(arg);
      return {0.5 * phase.xi_M * (c.a_A / p.C_A) * s, -0.5 * phase.xi_M * c.a_A * s};
    }
    case Regime::Forward: {
      const double arg = c.a_M * (T - p.M_f - sigma / p.C_M);
      if (!inside(arg)) return {};
      const double s = std::sin(arg);
      return {0.5 * (1.0 - phase.xi_A) * (c.a_M / p.C_M) * s, -0.5 * (1.0 - phase.xi_A) * c.a_M * s};
    }
    case Regime::Neutral: break;
  }
  return {};
}

/// Martensite fraction rate; zero outside both transformation regimes.
inline double xi_rate(double T, double sigma, double dT_dt, double dSigma_dt, const PhaseState& state,
                      const SmaMaterialParams& p) {
  const Regime regime = transformation_regime(T, sigma, dT_dt, dSigma_dt, p);
  const auto g = kinetic_gains(regime, T, sigma, state, p);
  return g.eta_sigma * dSigma_dt + g.eta_T * dT_dt;
}

/// Constitutive rate law: sigma_dot = E eps_dot + theta_T T_dot + Omega xi_dot, Omega = -E eps_L.
inline double stress_rate(double dEps_dt, double dT_dt, double dXi_dt, double xi, const SmaMaterialParams& p) {
  const double E = young_modulus(xi, p);
  const double omega = -E * p.eps_L;
  return E * dEps_dt + p.theta_T * dT_dt + omega * dXi_dt;
}

}  // namespace bpsma
