#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "presets.hpp"
#include "report.hpp"
#include "sweep.hpp"

namespace levsq {
namespace {

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string field_error(const std::string& text) {
  try {
    parse_sweep_spec(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

TEST(SweepSpec, ParsesAxesFrequencyAndOutput) {
  const SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = cavity_A.kappa_over_omega_m\nstart = 0.5\nstop = 3\nn_points = 6\n"
      "[axis2]\npath = gas.pressure_pa\nstart = 1e-6\nstop = 1e-2\nn_points = 5\n"
      "scale = log\n"
      "[frequency]\nomega_min_over_omega_m = -1\nomega_max_over_omega_m = 1\nn_omega = 11\n"
      "[output]\npath = out.csv\n");
  EXPECT_EQ(s.axis1.path, "cavity_A.kappa_over_omega_m");
  EXPECT_EQ(s.axis1.values(), (std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5, 3.0}));
  ASSERT_TRUE(s.axis2);
  const auto v2 = s.axis2->values();
  ASSERT_EQ(v2.size(), 5u);
  EXPECT_DOUBLE_EQ(v2[0], 1e-6);
  EXPECT_NEAR(v2[2], 1e-4, 1e-18);
  EXPECT_DOUBLE_EQ(v2[4], 1e-2);
  ASSERT_TRUE(s.frequency);
  EXPECT_EQ(s.frequency->n_omega, 11);
  EXPECT_EQ(s.output_path, "out.csv");
}

TEST(SweepSpec, ErrorsNameTheField) {
  const std::string ok = "[axis1]\npath = gas.pressure_pa\nstart = 0\nstop = 1\n";
  EXPECT_EQ(field_error("[axis2]\npath = gas.pressure_pa\nstart = 0\nstop = 1\nn_points = 2\n"),
            "axis1");
  EXPECT_EQ(field_error(ok), "axis1.n_points");
  EXPECT_EQ(field_error(ok + "n_points = 2.5\n"), "axis1.n_points");
  EXPECT_EQ(field_error(ok + "n_points = 0\n"), "axis1.n_points");
  EXPECT_EQ(field_error(ok + "n_points = 3\nscale = cubic\n"), "axis1.scale");
  EXPECT_EQ(field_error(ok + "n_points = 3\nscale = log\n"), "axis1.start");
  EXPECT_EQ(field_error(ok + "n_points = 3\nstep = 1\n"), "axis1.step");
  EXPECT_EQ(field_error(ok + "n_points = 3\n[colour]\nx = 1\n"), "colour");
  EXPECT_EQ(field_error(ok + "n_points = 3\n[frequency]\nomega_min_over_omega_m = 1\n"
                             "omega_max_over_omega_m = 0\nn_omega = 5\n"),
            "frequency.omega_max_over_omega_m");
  EXPECT_EQ(field_error("[axis1]\npath = gas.pressure_pa\nstart = x\nstop = 1\nn_points = 2\n"),
            "axis1.start");
}

TEST(SweepSpec, AxisPathMustResolve) {
  const Config c = parse_config(single_mode_config_text());
  SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = tweezer_B.power_w\nstart = 0.1\nstop = 1\nn_points = 2\n");
  EXPECT_THROW(check_sweep_spec(s, c), ConfigError);
  s.axis1.path = "gas.colour";
  EXPECT_THROW(check_sweep_spec(s, c), ConfigError);
  s.axis1.path = "gas.pressure_pa";
  EXPECT_NO_THROW(check_sweep_spec(s, c));
}

TEST(Sweep, SinglePointAxis) {
  const Config c = parse_config(single_mode_config_text());
  const SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = gas.pressure_pa\nstart = 1e-4\nstop = 1\nn_points = 1\n"
      "[frequency]\nomega_min_over_omega_m = -1\nomega_max_over_omega_m = 1\nn_omega = 21\n");
  const auto rows = data_lines(run_sweep(c, s, {1, false}));
  ASSERT_EQ(rows.size(), 2u);
  const auto f = split(rows[1]);
  EXPECT_EQ(std::stod(f[0]), 1e-4);
  EXPECT_EQ(f.back(), "");
  EXPECT_EQ(f[9], "1");
}

TEST(Sweep, WorkerCountDoesNotChangeOutput) {
  const Config c = parse_config(two_mode_config_text());
  const SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = cavity_A.kappa_over_omega_m\nstart = 0.05\nstop = 1.5\nn_points = 5\n"
      "[axis2]\npath = cavity_B.kappa_over_omega_m\nstart = 0.1\nstop = 5\nn_points = 4\n"
      "[frequency]\nomega_min_over_omega_m = 0\nomega_max_over_omega_m = 2\nn_omega = 101\n");
  const std::string one = run_sweep(c, s, {1, false});
  EXPECT_EQ(one, run_sweep(c, s, {3, false}));
  EXPECT_EQ(data_lines(one).size(), 21u);
}

TEST(Sweep, PerPointFailuresAreRecorded) {
  const Config c = parse_config(single_mode_config_text());
  const SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = tweezer_A.power_w\nstart = -1\nstop = 0.05\nn_points = 2\n"
      "[frequency]\nomega_min_over_omega_m = -1\nomega_max_over_omega_m = 1\nn_omega = 11\n");
  const auto rows = data_lines(run_sweep(c, s, {1, false}));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NE(split(rows[1]).back(), "");
  EXPECT_EQ(split(rows[1])[1], "");
  EXPECT_EQ(split(rows[2]).back(), "");
}

TEST(Sweep, HeaderCarriesFingerprintAndOptionalTimestamp) {
  const Config c = parse_config(single_mode_config_text());
  const SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = gas.pressure_pa\nstart = 1e-4\nstop = 1e-3\nn_points = 2\n"
      "[frequency]\nomega_min_over_omega_m = -1\nomega_max_over_omega_m = 1\nn_omega = 11\n");
  const std::string with = run_sweep(c, s, {1, true});
  const std::string without = run_sweep(c, s, {1, false});
  EXPECT_NE(with.find("# config_fingerprint: " + fingerprint(c)), std::string::npos);
  EXPECT_NE(with.find("# generated_utc: "), std::string::npos);
  EXPECT_EQ(without.find("generated_utc"), std::string::npos);
  EXPECT_NE(without.find("calibrated default 9e-06 m"), std::string::npos);
  EXPECT_EQ(data_lines(with), data_lines(without));
}

TEST(ParallelFor, VisitsEveryIndexAndRethrows) {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 4, [&](int i) { hits[i] += 1; });
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  EXPECT_THROW(parallel_for(100, 3,
                            [](int i) {
                              if (i == 42) throw PhysicsError("boom");
                            }),
               PhysicsError);
}

TEST(Presets, NamesAndUnknown) {
  EXPECT_EQ(preset_names().size(), 8u);
  EXPECT_THROW(preset_config("fig9"), ConfigError);
  EXPECT_THROW(run_preset("fig9", {1, false}), ConfigError);
}

TEST(Presets, PowerSweepMatchesDirectDerivation) {
  const auto files = run_preset("fig2", {1, false});
  ASSERT_EQ(files.size(), 1u);
  EXPECT_EQ(files[0].name, "fig2.csv");
  const auto rows = data_lines(files[0].content);
  ASSERT_EQ(rows.size(), 11u);
  const auto header = split(rows[0]);
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) -
                                    header.begin());
  };
  ASSERT_LT(col("omega_m_rad_s"), header.size());
  Config c = preset_config("fig2");
  for (int i = 1; i <= 10; ++i) {
    const auto f = split(rows[i]);
    const double p = std::stod(f[0]);
    set_field(c, "tweezer_A.power_w", p);
    set_field(c, "tweezer_B.power_w", p);
    const SystemModel s = build_system(c);
    EXPECT_NEAR(std::stod(f[col("omega_m_rad_s")]), s.omega_m, 1e-12 * s.omega_m);
  }
}

TEST(Presets, KappaMapMatchesTwoAxisSweep) {
  const KappaMap map = kappa_map(4, 51, 2);
  const Config base = preset_config("fig6a");
  const SweepSpec s = parse_sweep_spec(
      "[axis1]\npath = cavity_A.kappa_over_omega_m\nstart = 0.05\nstop = 1.5\nn_points = 4\n"
      "[axis2]\npath = cavity_B.kappa_over_omega_m\nstart = 0.1\nstop = 5\nn_points = 4\n"
      "[frequency]\nomega_min_over_omega_m = 0\nomega_max_over_omega_m = 2\nn_omega = 51\n");
  const auto rows = data_lines(run_sweep(base, s, {1, false}));
  ASSERT_EQ(rows.size(), 17u);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const auto f = split(rows[1 + i * 4 + j]);
      const PointResult& p = map.at(i, j);
      EXPECT_EQ(std::stod(f[0]), map.kappa_a[i]);
      EXPECT_EQ(std::stod(f[1]), map.kappa_b[j]);
      if (p.ok) {
        EXPECT_EQ(f[10], p.stable ? "1" : "0");
        EXPECT_EQ(f[11], csv_number(p.min_s));
      } else {
        EXPECT_NE(f.back(), "");
      }
    }
  }
}

TEST(Presets, AllIsDeterministicAcrossWorkerCounts) {
  const auto a = run_preset("fig4a", {1, false});
  const auto b = run_preset("fig4a", {3, false});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].content, b[i].content);
  }
}

TEST(Reports, ValidateAndSpectrum) {
  const Config single = parse_config(single_mode_config_text());
  const ValidateOutcome v = validate_report(single);
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.text.find("ultra_strong_A"), std::string::npos);

  Config unstable = single;
  unstable.channels[0].cavity.kappa_over_omega_m = 0.1;
  const ValidateOutcome u = validate_report(unstable);
  EXPECT_EQ(u.code, 0);
  EXPECT_NE(u.text.find("stable: no"), std::string::npos);
  EXPECT_THROW(spectrum_csv(unstable, {}, {1, false}), PhysicsError);

  Config sphere = single;
  sphere.ellipsoid.a = sphere.ellipsoid.b;
  EXPECT_EQ(validate_report(sphere).code, 2);

  Config bad = single;
  bad.gas.accommodation = 2.0;
  EXPECT_EQ(validate_report(bad).code, 1);

  SpectrumRequest req;
  req.two_mode = true;
  EXPECT_THROW(spectrum_csv(single, req, {1, false}), ConfigError);
  req = {};
  req.omega_min = -1.0;
  req.omega_max = 1.0;
  req.n_omega = 5;
  EXPECT_EQ(data_lines(spectrum_csv(single, req, {1, false})).size(), 6u);
  EXPECT_EQ(data_lines(derive_report(single)).size() >= 2, true);
}

}  // namespace
}  // namespace levsq
