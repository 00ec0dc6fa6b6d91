#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bpsma/study.hpp"

using namespace bpsma;

namespace {

ActuatorConfig k1_config() {
  auto c = reference_config();
  c.spring = BiasSpring{5120.0, 0.027, "k_1"};
  return c;
}

TimeSeries ramp(double dt) {
  TimeSeries s;
  const int n = static_cast<int>(std::lround(20.0 / dt));
  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    s.samples.push_back({t, 18.0, 1.0, 0.0, 0.0, 0.0, t, 0.0, 2.0, Regime::Neutral});
  }
  return s;
}

}  // namespace

TEST(Study, VoltageSweepIsIncreasing) {
  const auto r = voltage_sweep(k1_config(), {13.0, 14.0, 15.0}, 10.0, 15.0);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) EXPECT_TRUE(row.ok) << row.error;
  EXPECT_EQ(r.rows[0].value, 13.0);
  EXPECT_EQ(r.rows[2].value, 15.0);
  EXPECT_LT(r.rows[0].peak_force, r.rows[1].peak_force);
  EXPECT_LT(r.rows[1].peak_force, r.rows[2].peak_force);
  EXPECT_LT(r.rows[0].peak_T, r.rows[2].peak_T);
  EXPECT_LT(r.rows[0].energy_input, r.rows[2].energy_input);
}

TEST(Study, ZeroVoltageStaysAtEquilibrium) {
  const auto r = voltage_sweep(reference_config(), {0.0}, 10.0, 15.0);
  ASSERT_TRUE(r.rows[0].ok);
  EXPECT_NEAR(r.rows[0].peak_force, 0.0, 1e-9);
  EXPECT_EQ(r.rows[0].peak_T, 18.0);
  EXPECT_EQ(r.rows[0].energy_input, 0.0);
}

TEST(Study, SweepOfOneMatchesDirectRun) {
  const auto cfg = reference_config();
  const auto r = voltage_sweep(cfg, {15.0}, 10.0, 15.0);
  auto direct = summarize(simulate(cfg, parse_drive("15V@10s,0V@15s"), BlockedMode{}), cfg);
  direct.value = 15.0;
  EXPECT_EQ(r.rows[0], direct);

  const BiasSpring k2{4230.0, 0.027, "k_2"};
  const auto s = spring_sweep(cfg, {k2}, 15.0, 10.0, SpringLoadedMode{});
  auto c2 = cfg;
  c2.spring = k2;
  auto direct2 = summarize(simulate(c2, parse_drive("15V@10s"), SpringLoadedMode{}), c2);
  direct2.value = 4230.0;
  direct2.label = "k_2";
  EXPECT_EQ(s.rows[0], direct2);
}

TEST(Study, ParallelMatchesSequentialAndIsReproducible) {
  const auto cfg = reference_config();
  const std::vector<double> volts{15.0, 12.0, 14.0, 13.0};
  const auto a = voltage_sweep(cfg, volts, 5.0, 5.0);
  const auto b = voltage_sweep(cfg, volts, 5.0, 5.0);
  ASSERT_EQ(a.rows.size(), volts.size());
  EXPECT_EQ(a.rows, b.rows);
  for (std::size_t i = 0; i < volts.size(); ++i) {
    auto seq = summarize(simulate(cfg, DriveProfile{{{5.0, volts[i]}, {5.0, 0.0}}}, BlockedMode{}), cfg);
    seq.value = volts[i];
    EXPECT_EQ(a.rows[i], seq);
  }
}

TEST(Study, SpringSweepCatalogue) {
  const auto springs = catalogue_springs();
  ASSERT_EQ(springs.size(), 5u);
  const double expected[] = {5120.0, 4230.0, 3360.0, 2490.0, 1620.0};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(springs[i].K_x, expected[i]);
    EXPECT_EQ(springs[i].label, "k_" + std::to_string(i + 1));
  }
  const auto r = spring_sweep(reference_config(), springs, 15.0, 10.0);
  ASSERT_EQ(r.rows.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_TRUE(r.rows[i].ok) << r.rows[i].error;
    EXPECT_EQ(r.rows[i].label, springs[i].label);
    EXPECT_EQ(r.rows[i].value, springs[i].K_x);
  }
}

TEST(Study, EmptySweepsAreRejected) {
  EXPECT_THROW(voltage_sweep(reference_config(), {}, 10.0, 15.0), ConfigError);
  EXPECT_THROW(spring_sweep(reference_config(), {}, 15.0, 10.0), ConfigError);
}

TEST(Study, FailedRowsAreConfined) {
  auto cfg = reference_config();
  // A drive shorter than one step cannot be integrated.
  const auto r = voltage_sweep(cfg, {15.0, 14.0}, 1e-4, 0.0);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.rows[0].ok);
  EXPECT_FALSE(r.rows[0].error.empty());
  EXPECT_EQ(r.rows[1].value, 14.0);
}

TEST(Study, SweepCsvAndPlot) {
  SweepResult r{SweepParameter::SpringStiffness,
                {{3360.0, "k_3", true, 250.0, 100.0, 1e-3, 800.0, ""},
                 {1620.0, "k_5", false, 0.0, 0.0, 0.0, 0.0, "geometry violation, at t=1"}}};
  std::ostringstream os;
  write_sweep_csv(os, r);
  EXPECT_EQ(os.str(),
            "stiffness_N_per_m,label,ok,peak_force_N,peak_T_degC,peak_stroke_m,energy_input_J,error\n"
            "3360,k_3,true,250,100,0.001,800,\n"
            "1620,k_5,false,,,,,\"geometry violation, at t=1\"\n");
  const auto svg = render_sweep_plot(r);
  EXPECT_NE(svg.find("measured (prototype)"), std::string::npos);
  EXPECT_NE(svg.find("spring stiffness [N/mm]"), std::string::npos);
  EXPECT_NE(svg.find("peak force [N]"), std::string::npos);
  const auto anchors = experimental_anchors(SweepParameter::SpringStiffness);
  ASSERT_EQ(anchors.size(), 3u);
  EXPECT_EQ(anchors[1].force, 257.0);
}

TEST(Study, SustainedMetricsConstant) {
  auto s = ramp(0.01);
  for (auto& x : s.samples) x.F_a = 100.0;
  const auto m = sustained_force_metrics(s, 12.0);
  EXPECT_DOUBLE_EQ(m.force_at_switch, 100.0);
  EXPECT_DOUBLE_EQ(m.mean_sustained, 100.0);
  EXPECT_NEAR(m.std_sustained, 0.0, 1e-12);
  EXPECT_NEAR(m.delta, 0.0, 1e-12);
}

TEST(Study, SustainedMetricsRamp) {
  // F = t on (12, 20]: mean 16, std of a uniform spread 8 / sqrt(12).
  const auto m = sustained_force_metrics(ramp(0.001), 12.0);
  EXPECT_NEAR(m.force_at_switch, 12.0, 1e-9);
  EXPECT_NEAR(m.mean_sustained, 16.0, 1e-3);
  EXPECT_NEAR(m.delta, 4.0, 1e-3);
  EXPECT_NEAR(m.std_sustained, 8.0 / std::sqrt(12.0), 1e-3);
  // Between samples the switch force is interpolated.
  EXPECT_NEAR(sustained_force_metrics(ramp(0.01), 12.345).force_at_switch, 12.345, 1e-9);
}

TEST(Study, SustainedMetricsErrors) {
  const auto s = ramp(0.01);
  EXPECT_THROW(sustained_force_metrics(s, 20.0), AnalysisError);
  EXPECT_THROW(sustained_force_metrics(s, 25.0), AnalysisError);
  EXPECT_THROW(sustained_force_metrics(s, -1.0), AnalysisError);
  EXPECT_THROW(sustained_force_metrics(TimeSeries{}, 1.0), AnalysisError);
}

TEST(Study, SustainedMetricsInsensitiveToSampling) {
  auto coarse = reference_config();
  auto fine = coarse;
  fine.solver.output_interval = 1e-3;
  const auto drive = parse_drive("15V@12s,12.5V@8s");
  const auto a = sustained_force_metrics(simulate(coarse, drive, BlockedMode{}), 12.0);
  const auto b = sustained_force_metrics(simulate(fine, drive, BlockedMode{}), 12.0);
  EXPECT_NEAR(a.force_at_switch, b.force_at_switch, 5e-3 * std::abs(b.force_at_switch));
  EXPECT_NEAR(a.mean_sustained, b.mean_sustained, 5e-3 * std::abs(b.mean_sustained));
  EXPECT_NEAR(a.std_sustained, b.std_sustained, 5e-3 * std::abs(b.std_sustained) + 1e-9);
  EXPECT_GE(a.std_sustained, 0.0);
}
