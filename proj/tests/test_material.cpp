#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bpsma/material.hpp"

using namespace bpsma;

namespace {

const SmaMaterialParams kP{};

double central_difference(auto f, double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }

}  // namespace

TEST(Material, DefaultsMatchReferenceSet) {
  EXPECT_EQ(kP.E_A, 75e9);
  EXPECT_EQ(kP.E_M, 28e9);
  EXPECT_EQ(kP.theta_T, 0.55e6);
  EXPECT_EQ(kP.eps_L, 0.04);
  EXPECT_EQ(kP.C_A, 10e6);
  EXPECT_EQ(kP.C_M, 10e6);
  EXPECT_EQ(kP.A_s, 78.2);
  EXPECT_EQ(kP.A_f, 82.1);
  EXPECT_EQ(kP.M_s, 54.5);
  EXPECT_EQ(kP.M_f, 48.9);
  EXPECT_EQ(kP.rho, 6450.0);
  EXPECT_EQ(kP.c_p, 836.8);
  EXPECT_EQ(kP.dH, 24e3);
  EXPECT_NO_THROW(validate(kP));
}

TEST(Material, ValidationNamesOffendingKeys) {
  auto p = kP;
  p.A_f = 70.0;
  try {
    validate(p);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("A_f"), std::string::npos);
    EXPECT_NE(msg.find("A_s"), std::string::npos);
  }
  p = kP;
  p.E_A = 20e9;
  EXPECT_THROW(validate(p), ConfigError);
  p = kP;
  p.A_s0 = 85.6;
  EXPECT_THROW(validate(p), ConfigError);
}

TEST(Material, Coefficients) {
  const auto c = transformation_coefficients(kP);
  EXPECT_DOUBLE_EQ(c.a_A, std::numbers::pi / (82.1 - 78.2));
  EXPECT_DOUBLE_EQ(c.a_M, std::numbers::pi / (54.5 - 48.9));
  EXPECT_NEAR(c.a_A, 0.80554, 1e-5);
  EXPECT_DOUBLE_EQ(c.b_A, -c.a_A / 10e6);
  EXPECT_DOUBLE_EQ(c.b_M, -c.a_M / 10e6);
  auto p = kP;
  p.A_f = p.A_s;
  EXPECT_THROW(transformation_coefficients(p), ConfigError);
}

TEST(Material, PhaseMixing) {
  EXPECT_EQ(young_modulus(1.0, kP), 28e9);
  EXPECT_EQ(young_modulus(0.0, kP), 75e9);
  EXPECT_DOUBLE_EQ(young_modulus(0.5, kP), 51.5e9);
  EXPECT_EQ(resistivity_mix(1.0, kP), 0.8e-6);
  EXPECT_EQ(resistivity_mix(0.0, kP), 1.0e-6);
  EXPECT_THROW(young_modulus(1.1, kP), DomainError);
  EXPECT_THROW(resistivity_mix(-0.1, kP), DomainError);
}

TEST(Material, RegimeGuards) {
  // Inside the reverse window and heating.
  EXPECT_EQ(transformation_regime(80.0, 0.0, 1.0, 0.0, kP), Regime::Reverse);
  // Zero rates are neutral everywhere.
  EXPECT_EQ(transformation_regime(80.0, 0.0, 0.0, 0.0, kP), Regime::Neutral);
  EXPECT_EQ(transformation_regime(50.0, 0.0, 0.0, 0.0, kP), Regime::Neutral);
  // Heating outside the window.
  EXPECT_EQ(transformation_regime(70.0, 0.0, 1.0, 0.0, kP), Regime::Neutral);
  // Cooling inside the forward window.
  EXPECT_EQ(transformation_regime(50.0, 0.0, -1.0, 0.0, kP), Regime::Forward);
  // Stress shifts the window: 100 MPa moves it up by 10 degC.
  EXPECT_EQ(transformation_regime(80.0, 100e6, 1.0, 0.0, kP), Regime::Neutral);
  EXPECT_EQ(transformation_regime(90.0, 100e6, 1.0, 0.0, kP), Regime::Reverse);
  // Stress rising faster than C_A * T_dot keeps the reverse guard closed.
  EXPECT_EQ(transformation_regime(80.0, 0.0, 1.0, 20e6, kP), Regime::Neutral);
}

TEST(Material, ClosedFormBoundaryValuesAreExact) {
  for (double sigma : {0.0, 9.66e6, 50e6}) {
    for (double xi_M : {1.0, 0.7}) {
      EXPECT_NEAR(xi_reverse_unclamped(kP.A_s + sigma / kP.C_A, sigma, xi_M, kP), xi_M, 1e-12);
      EXPECT_NEAR(xi_reverse_unclamped(kP.A_f + sigma / kP.C_A, sigma, xi_M, kP), 0.0, 1e-12);
    }
    for (double xi_A : {0.0, 0.3}) {
      EXPECT_NEAR(xi_forward_unclamped(kP.M_s + sigma / kP.C_M, sigma, xi_A, kP), xi_A, 1e-12);
      EXPECT_NEAR(xi_forward_unclamped(kP.M_f + sigma / kP.C_M, sigma, xi_A, kP), 1.0, 1e-12);
    }
  }
  EXPECT_THROW(xi_reverse_unclamped(70.0, 0.0, 1.0, kP), DomainError);
  EXPECT_THROW(xi_forward_unclamped(70.0, 0.0, 0.0, kP), DomainError);
}

TEST(Material, ClosedFormMidpoints) {
  // Halfway through each window the cosine is zero.
  EXPECT_NEAR(xi_reverse_closed_form(0.5 * (kP.A_s + kP.A_f), 0.0, 1.0, kP), 0.5, 1e-12);
  EXPECT_NEAR(xi_forward_closed_form(0.5 * (kP.M_s + kP.M_f), 0.0, 0.0, kP), 0.5, 1e-12);
  EXPECT_NEAR(xi_forward_closed_form(0.5 * (kP.M_s + kP.M_f), 0.0, 0.4, kP), 0.7, 1e-12);
}

TEST(Material, MonotonicityOnGrids) {
  const int n = 1000;
  for (double sigma : {0.0, 20e6}) {
    double prev_rev = 2.0, prev_fwd = -1.0;
    for (int i = 0; i < n; ++i) {
      const double T = kP.A_s + sigma / kP.C_A + (kP.A_f - kP.A_s) * i / (n - 1.0);
      const double x = xi_reverse_closed_form(std::min(T, kP.A_f + sigma / kP.C_A), sigma, 1.0, kP);
      EXPECT_LE(x, prev_rev);
      prev_rev = x;
      const double Tf = kP.M_s + sigma / kP.C_M - (kP.M_s - kP.M_f) * i / (n - 1.0);
      const double y = xi_forward_closed_form(std::max(Tf, kP.M_f + sigma / kP.C_M), sigma, 0.0, kP);
      EXPECT_GE(y, prev_fwd);
      prev_fwd = y;
    }
  }
  // At fixed T, more stress means more martensite in both windows.
  double prev_rev = -1.0, prev_fwd = -1.0;
  for (int i = 0; i < n; ++i) {
    const double sigma = 0.0 + 3e6 * i / (n - 1.0);
    const double x = xi_reverse_closed_form(80.5, sigma, 1.0, kP);
    const double y = xi_forward_closed_form(52.0, sigma, 0.0, kP);
    EXPECT_GE(x, prev_rev);
    EXPECT_GE(y, prev_fwd);
    prev_rev = x;
    prev_fwd = y;
  }
}

TEST(Material, GainsArePartialDerivativesOfClosedForms) {
  const PhaseState phase{0.9, 0.9, 0.2};
  const double sigma = 15e6;
  {
    const double T = 81.0;
    const auto g = kinetic_gains(Regime::Reverse, T, sigma, phase, kP);
    const double dT = central_difference([&](double t) { return xi_reverse_unclamped(t, sigma, 0.9, kP); }, T, 1e-4);
    const double dS = central_difference([&](double s) { return xi_reverse_unclamped(T, s, 0.9, kP); }, sigma, 1e3);
    EXPECT_NEAR(g.eta_T, dT, 1e-7 * std::abs(dT));
    EXPECT_NEAR(g.eta_sigma, dS, 1e-7 * std::abs(dS));
  }
  {
    const double T = 53.0;
    const auto g = kinetic_gains(Regime::Forward, T, sigma, phase, kP);
    const double dT = central_difference([&](double t) { return xi_forward_unclamped(t, sigma, 0.2, kP); }, T, 1e-4);
    const double dS = central_difference([&](double s) { return xi_forward_unclamped(T, s, 0.2, kP); }, sigma, 1e3);
    EXPECT_NEAR(g.eta_T, dT, 1e-7 * std::abs(dT));
    EXPECT_NEAR(g.eta_sigma, dS, 1e-7 * std::abs(dS));
  }
  const auto neutral = kinetic_gains(Regime::Neutral, 80.0, 0.0, phase, kP);
  EXPECT_EQ(neutral.eta_T, 0.0);
  EXPECT_EQ(neutral.eta_sigma, 0.0);
}

TEST(Material, RateIntegrationTracksClosedForm) {
  // Paths that stay inside the window: ramp T and sigma together, integrate xi_dot with RK4.
  struct Path {
    Regime regime;
    double T0, T1, s0, s1;
  };
  for (const auto& path : {Path{Regime::Reverse, 78.8, 82.0, 1e6, 2e6}, Path{Regime::Forward, 54.0, 49.5, 2e6, 1e6}}) {
    const double duration = 10.0;
    const int steps = 2000;
    const double h = duration / steps;
    const double Tdot = (path.T1 - path.T0) / duration;
    const double sdot = (path.s1 - path.s0) / duration;
    const PhaseState phase{1.0, 1.0, 0.0};
    auto closed = [&](double t) {
      const double T = path.T0 + Tdot * t, s = path.s0 + sdot * t;
      return path.regime == Regime::Reverse ? xi_reverse_unclamped(T, s, 1.0, kP) : xi_forward_unclamped(T, s, 0.0, kP);
    };
    auto rate = [&](double t) {
      const double T = path.T0 + Tdot * t, s = path.s0 + sdot * t;
      ASSERT_EQ(transformation_regime(T, s, Tdot, sdot, kP), path.regime);
      return;
    };
    double xi = closed(0.0);
    for (int i = 0; i < steps; ++i) {
      const double t = i * h;
      rate(t);
      auto f = [&](double tt) {
        const auto g = kinetic_gains(path.regime, path.T0 + Tdot * tt, path.s0 + sdot * tt, phase, kP);
        return g.eta_T * Tdot + g.eta_sigma * sdot;
      };
      xi += h / 6 * (f(t) + 4 * f(t + h / 2) + f(t + h));
    }
    const double expected = closed(duration);
    EXPECT_NEAR(xi, expected, 1e-3 * std::max(std::abs(expected), 1e-3));
  }
}

TEST(Material, StressRateLaw) {
  // sigma_dot = E eps_dot + theta T_dot - E eps_L xi_dot
  const double E = young_modulus(0.6, kP);
  EXPECT_DOUBLE_EQ(stress_rate(1e-3, 2.0, -0.1, 0.6, kP), E * 1e-3 + 0.55e6 * 2.0 + E * 0.04 * 0.1);
  EXPECT_EQ(stress_rate(0.0, 0.0, 0.0, 1.0, kP), 0.0);
}

TEST(Material, RegimeStrings) {
  for (auto r : {Regime::Neutral, Regime::Reverse, Regime::Forward}) EXPECT_EQ(regime_from_string(to_string(r)), r);
  EXPECT_FALSE(regime_from_string("heating").has_value());
}

TEST(Material, GainsVanishPastWindowEdges) {
  const PhaseState phase{};
  for (double T : {70.0, 90.0}) {
    const auto g = kinetic_gains(Regime::Reverse, T, 0.0, phase, kP);
    EXPECT_EQ(g.eta_T, 0.0);
    EXPECT_EQ(g.eta_sigma, 0.0);
  }
  for (double T : {40.0, 60.0}) {
    const auto g = kinetic_gains(Regime::Forward, T, 0.0, phase, kP);
    EXPECT_EQ(g.eta_T, 0.0);
    EXPECT_EQ(g.eta_sigma, 0.0);
  }
}
