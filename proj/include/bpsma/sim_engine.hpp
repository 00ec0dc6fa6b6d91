#pragma once

// Time integration of the coupled electro-thermo-mechanical actuator model.
//
// State (T, xi, sigma, eps) is advanced with classical RK4. At every stage the
// four rates (T_dot, xi_dot, sigma_dot, eps_dot) are mutually coupled: heat
// balance, phase kinetics, constitutive law and kinematics. For a fixed
// regime the coupling is linear in the rates and is solved exactly; the
// regime itself depends on the rates, so the step's regime is found by
// fixed-point iteration at the first stage and held for the remaining stages.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "bpsma/config.hpp"
#include "bpsma/drive.hpp"
#include "bpsma/error.hpp"
#include "bpsma/hsam.hpp"
#include "bpsma/material.hpp"
#include "bpsma/pennate.hpp"
#include "bpsma/thermal.hpp"

namespace bpsma {

/// Output pinned at zero stroke (load-cell configuration).
struct BlockedMode {};
/// Free stroke against the bias spring.
struct SpringLoadedMode {};
/// Free stroke, then stroke and force passed through the hydraulic amplifier.
struct AmplifiedMode {
  HsamParams hsam;
};

using Mode = std::variant<BlockedMode, SpringLoadedMode, AmplifiedMode>;

inline std::string mode_name(const Mode& mode) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BlockedMode>) return "blocked";
        else if constexpr (std::is_same_v<M, SpringLoadedMode>) return "spring";
        else return "amplified";
      },
      mode);
}

struct SimulationState {
  double t = 0.0;
  double T = 0.0;
  PhaseState phase;
  double sigma = 0.0;
  double eps = 0.0;
  double dx = 0.0;
  Regime regime = Regime::Neutral;
};

struct Sample {
  double t;
  double T;
  double xi;
  double sigma;
  double eps;
  double dx;   // m, after amplification in Amplified mode
  double F_a;  // N, after amplification in Amplified mode
  double V;
  double R_ohm;
  Regime regime;

  bool operator==(const Sample&) const = default;
};

struct TimeSeries {
  std::vector<Sample> samples;
  double output_interval = 0.0;
  std::vector<std::string> warnings;
};

/// Rates of the state variables.
struct Rates {
  double T = 0.0;
  double xi = 0.0;
  double sigma = 0.0;
  double eps = 0.0;
};

struct EnergyBreakdown {
  double input_J;
  double stored_J;
  double convected_J;
  double latent_J;
  double residual_J;
};

namespace detail {

/// Raised when the regime fixed point does not settle.
struct NonConvergence {
  std::string what;
};

/// Gaussian elimination with partial pivoting.
inline std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (!(std::abs(a[pivot][col]) > 0.0)) throw SimulationError("rate system is singular");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::array<double, 4> x{};
  for (int r = 3; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 4; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

enum class Kinematics { Blocked, Compliant };

/// Everything the rate evaluation needs besides the state itself.
struct Plant {
  const ActuatorConfig& cfg;
  SmaMaterialParams material;  // with first-cycle temperatures substituted when active
  Kinematics kinematics;
  double area;
};

struct Point {
  double T;
  double xi;
  double sigma;
  double eps;
};

/// Phase memory seen by a step that runs in `regime` after `previous`.
inline PhaseState latched(const PhaseState& phase, double xi, Regime previous, Regime regime) {
  PhaseState out = phase;
  out.xi = xi;
  if (regime != previous) {
    if (regime == Regime::Reverse) out.xi_M = xi;
    if (regime == Regime::Forward) out.xi_A = xi;
  }
  return out;
}

inline double stroke_of(const Point& y, const Plant& plant) {
  if (plant.kinematics == Kinematics::Blocked) return 0.0;
  return quasistatic_stroke(y.sigma, y.eps, y.xi, plant.cfg.geometry, plant.cfg.spring, plant.material);
}

/// Exact solution of the linear rate system for a given regime.
inline Rates solve_rates(const Point& y, double V, Regime regime, const PhaseState& phase, const Plant& plant) {
  const auto& p = plant.material;
  const auto& th = plant.cfg.thermal;
  const double xi = std::clamp(y.xi, 0.0, 1.0);
  const double R = network_resistance(xi, plant.cfg.network, p, plant.area);
  const double E = young_modulus(xi, p);
  const double omega = -E * p.eps_L;
  const auto gains = kinetic_gains(regime, y.T, y.sigma, phase, p);

  // Unknown order: T_dot, xi_dot, sigma_dot, eps_dot.
  std::array<std::array<double, 4>, 4> a{};
  std::array<double, 4> b{};
  a[0] = {th.m_wire * p.c_p, -th.m_wire * p.dH, 0.0, 0.0};
  b[0] = V * V / R - th.A_c * th.h_T * (y.T - th.T_inf);
  a[1] = {-gains.eta_T, 1.0, -gains.eta_sigma, 0.0};
  a[2] = {-p.theta_T, -omega, 1.0, -E};

  if (plant.kinematics == Kinematics::Blocked) {
    a[3] = {0.0, 0.0, 0.0, 1.0};
  } else {
    const auto& g = plant.cfg.geometry;
    const auto terms = stroke_terms(y.sigma, y.eps, xi, g, plant.cfg.spring, p);
    if (std::abs(terms.denominator) < kStrokeDenominatorFloor) {
      throw SingularityError("quasi-static stroke stiffness vanishes");
    }
    const double N = terms.numerator;
    const double D = terms.denominator;
    const double dx = N / D;
    // eps_dot = G * dx_dot, with dx_dot linear in the rates.
    const double G = strain_rate_from_stroke(dx, 1.0, g, plant.cfg.solver.exact_geometry);
    const double c = std::cos(g.alpha);
    const double s2 = std::sin(g.alpha) * std::sin(g.alpha);
    const double k = (g.n / g.l_0) * plant.area;
    const double one_minus = 1.0 - y.eps;
    const double dN_dsigma = g.n * plant.area * c;
    const double dD_dxi = k * (-(p.E_M - p.E_A) * c * c);
    const double dD_dsigma = k * s2 / one_minus;
    const double dD_deps = k * s2 * y.sigma / (one_minus * one_minus);
    const double q = N / (D * D);
    a[3] = {0.0, G * q * dD_dxi, -G * (dN_dsigma / D - q * dD_dsigma), 1.0 + G * q * dD_deps};
  }
  const auto x = solve4(a, b);
  return {x[0], x[1], x[2], x[3]};
}

inline bool rates_close(const Rates& a, const Rates& b, double tol) {
  auto close = [tol](double u, double v) {
    return std::abs(u - v) <= tol * std::max({std::abs(u), std::abs(v), 1e-300});
  };
  return close(a.T, b.T) && close(a.xi, b.xi) && close(a.sigma, b.sigma) && close(a.eps, b.eps);
}

struct Resolved {
  Rates rates;
  Regime regime;
  PhaseState phase;
};

/// Fixed-point iteration on the regime: guess rates -> regime -> rates.
inline Resolved resolve_regime(const Point& y, double V, const PhaseState& phase, Regime previous,
                               const Rates& guess, const Plant& plant) {
  const auto& p = plant.material;
  Rates current = guess;
  for (int it = 0; it < plant.cfg.solver.max_iters; ++it) {
    const Regime regime = transformation_regime(y.T, y.sigma, current.T, current.sigma, p);
    const PhaseState memory = latched(phase, y.xi, previous, regime);
    const Rates next = solve_rates(y, V, regime, memory, plant);
    const Regime check = transformation_regime(y.T, y.sigma, next.T, next.sigma, p);
    if (check == regime && rates_close(next, current, plant.cfg.solver.fixpoint_tol)) {
      return {next, regime, memory};
    }
    current = next;
  }
  throw NonConvergence{"rate/regime fixed point did not converge"};
}

inline Point advance(const Point& y, const Rates& k, double h) {
  return {y.T + h * k.T, y.xi + h * k.xi, y.sigma + h * k.sigma, y.eps + h * k.eps};
}

inline std::string dump(const Point& y, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "state at t=" << t << " s: T=" << y.T << " degC, xi=" << y.xi << ", sigma=" << y.sigma
     << " Pa, eps=" << y.eps;
  return os.str();
}

}  // namespace detail

/// Integrates the actuator model over the drive. Deterministic: identical
/// inputs give bit-identical output.
class Simulator {
 public:
  Simulator(ActuatorConfig cfg, Mode mode) : cfg_(std::move(cfg)), mode_(std::move(mode)) {
    validate(cfg_);
    if (const auto* amp = std::get_if<AmplifiedMode>(&mode_)) validate(amp->hsam);
  }

  TimeSeries run(const DriveProfile& drive) {
    validate(drive);
    const auto& solver = cfg_.solver;
    const double dt = solver.dt;
    const auto steps_per_output = static_cast<std::int64_t>(std::llround(solver.output_interval / dt));

    // Segment boundaries on the step grid.
    std::vector<std::int64_t> boundaries;
    std::int64_t total_steps = 0;
    for (const auto& seg : drive.segments) {
      const auto n = std::llround(seg.duration / dt);
      if (n < 1) throw ConfigError("drive: segment shorter than solver.dt");
      total_steps += n;
      boundaries.push_back(total_steps);
    }

    reset();
    TimeSeries out;
    out.output_interval = solver.output_interval;
    std::size_t seg = 0;
    for (std::int64_t step = 0;; ++step) {
      while (seg < boundaries.size() && step >= boundaries[seg]) ++seg;
      const double V = seg < drive.segments.size() ? drive.segments[seg].voltage : 0.0;
      const double t = static_cast<double>(step) * dt;

      const auto resolved = resolve_with_plant(y_, V, t);
      if (step % steps_per_output == 0) out.samples.push_back(sample(t, V, resolved.regime));
      monitor(t, out);
      if (step == total_steps) break;
      integrate(dt, V, t, resolved);
    }
    return out;
  }

  const ActuatorConfig& config() const { return cfg_; }
  const Mode& mode() const { return mode_; }

 private:
  void reset() {
    const auto& p = cfg_.material;
    y_ = {cfg_.thermal.T_inf, 1.0, pretension_stress(cfg_.geometry, cfg_.spring), p.eps_L};
    phase_ = PhaseState{1.0, 1.0, 0.0};
    previous_ = Regime::Neutral;
    last_rates_ = {};
    first_cycle_ = p.A_s0.has_value();
    seen_reverse_ = false;
    over_temp_ = false;
  }

  detail::Kinematics kinematics() const {
    return std::holds_alternative<BlockedMode>(mode_) ? detail::Kinematics::Blocked
                                                     : detail::Kinematics::Compliant;
  }

  detail::Plant plant() const {
    detail::Plant pl{cfg_, cfg_.material, kinematics(), cfg_.geometry.cross_section()};
    if (first_cycle_) {
      pl.material.A_s = *cfg_.material.A_s0;
      pl.material.A_f = *cfg_.material.A_f0;
    }
    return pl;
  }

  /// Resolves the first stage at the current state. A non-convergent
  /// iteration is restarted once from the rates of the previous regime; the
  /// fixed point depends on the state only, so a smaller step cannot help.
  detail::Resolved resolve_with_plant(const detail::Point& y, double V, double t) const {
    const auto pl = plant();
    try {
      return detail::resolve_regime(y, V, phase_, previous_, last_rates_, pl);
    } catch (const detail::NonConvergence&) {
    }
    try {
      const auto guess = detail::solve_rates(y, V, previous_, phase_, pl);
      return detail::resolve_regime(y, V, phase_, previous_, guess, pl);
    } catch (const detail::NonConvergence& e) {
      throw SimulationError(e.what + "; " + detail::dump(y, t));
    }
  }

  /// One RK4 step of size h from the resolved first stage.
  void integrate(double h, double V, double t, const detail::Resolved& first) {
    const auto pl = plant();
    const auto& k1 = first.rates;
    auto eval = [&](const detail::Point& y) { return detail::solve_rates(y, V, first.regime, first.phase, pl); };
    const auto k2 = eval(detail::advance(y_, k1, h / 2));
    const auto k3 = eval(detail::advance(y_, k2, h / 2));
    const auto k4 = eval(detail::advance(y_, k3, h));

    detail::Point next{
        y_.T + h / 6 * (k1.T + 2 * k2.T + 2 * k3.T + k4.T),
        y_.xi + h / 6 * (k1.xi + 2 * k2.xi + 2 * k3.xi + k4.xi),
        y_.sigma + h / 6 * (k1.sigma + 2 * k2.sigma + 2 * k3.sigma + k4.sigma),
        y_.eps + h / 6 * (k1.eps + 2 * k2.eps + 2 * k3.eps + k4.eps),
    };
    next.xi = std::clamp(next.xi, 0.0, 1.0);
    if (!std::isfinite(next.T) || !std::isfinite(next.xi) || !std::isfinite(next.sigma) || !std::isfinite(next.eps)) {
      throw SimulationError("non-finite state; " + detail::dump(next, t + h));
    }
    if (kinematics() == detail::Kinematics::Compliant) {
      try {
        const double dx = detail::stroke_of(next, pl);
        strain_rate_from_stroke(dx, 0.0, cfg_.geometry, cfg_.solver.exact_geometry);
      } catch (const Error& e) {
        throw SimulationError(std::string("geometry violation: ") + e.what() + "; " + detail::dump(next, t + h));
      }
    }

    if (previous_ == Regime::Reverse && first.regime != Regime::Reverse && seen_reverse_) first_cycle_ = false;
    if (first.regime == Regime::Reverse) seen_reverse_ = true;
    phase_ = first.phase;
    phase_.xi = next.xi;
    previous_ = first.regime;
    last_rates_ = k1;
    y_ = next;
  }

  Sample sample(double t, double V, Regime regime) const {
    const auto pl = plant();
    const double R = network_resistance(y_.xi, cfg_.network, cfg_.material, pl.area);
    const double dx = detail::stroke_of(y_, pl);
    double force = actuation_force(y_.sigma, dx, cfg_.geometry, cfg_.spring);
    double stroke = dx;
    if (const auto* amp = std::get_if<AmplifiedMode>(&mode_)) {
      const auto out = amplify(stroke, force, amp->hsam);
      stroke = out.stroke;
      force = out.force;
    }
    return {t, y_.T, y_.xi, y_.sigma, y_.eps, stroke, force, V, R, regime};
  }

  void monitor(double t, TimeSeries& out) {
    const bool hot = y_.T > cfg_.solver.overtemp_warning;
    if (hot && !over_temp_) {
      std::ostringstream os;
      os << "t=" << t << " s: wire temperature " << y_.T << " degC exceeds the "
         << cfg_.solver.overtemp_warning << " degC limit";
      out.warnings.push_back(os.str());
    }
    over_temp_ = hot;
  }

  ActuatorConfig cfg_;
  Mode mode_;
  detail::Point y_{};
  PhaseState phase_;
  Regime previous_ = Regime::Neutral;
  Rates last_rates_;
  bool first_cycle_ = false;
  bool seen_reverse_ = false;
  bool over_temp_ = false;
};

inline TimeSeries simulate(const ActuatorConfig& cfg, const DriveProfile& drive, const Mode& mode) {
  return Simulator(cfg, mode).run(drive);
}

/// Integral form of the heat balance over a simulated trajectory.
/// Input uses the left-point rule (voltage is piecewise constant on the
/// sampling grid), convection the trapezoidal rule.
inline EnergyBreakdown energy_audit(const TimeSeries& series, const ActuatorConfig& cfg) {
  EnergyBreakdown e{0.0, 0.0, 0.0, 0.0, 0.0};
  const auto& s = series.samples;
  if (s.size() < 2) return e;
  const auto& th = cfg.thermal;
  const double hA = th.A_c * th.h_T;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double h = s[i + 1].t - s[i].t;
    e.input_J += h * s[i].V * s[i].V / s[i].R_ohm;
    e.convected_J += h * 0.5 * hA * ((s[i].T - th.T_inf) + (s[i + 1].T - th.T_inf));
  }
  e.stored_J = th.m_wire * cfg.material.c_p * (s.back().T - s.front().T);
  e.latent_J = -th.m_wire * cfg.material.dH * (s.back().xi - s.front().xi);
  e.residual_J = e.input_J - e.stored_J - e.convected_J - e.latent_J;
  return e;
}

}  // namespace bpsma
