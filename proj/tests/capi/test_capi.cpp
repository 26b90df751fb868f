// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "levsq/levsq.h"

namespace {

std::string config_path(const char* name) {
  return std::string(LEVSQ_SOURCE_DIR) + "/configs/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string take(char* s) {
  std::string out = s ? s : "";
  levsq_free_string(s);
  return out;
}

struct ConfigHandle {
  levsq_config* p = nullptr;
  ~ConfigHandle() { levsq_config_free(p); }
};

struct SystemHandle {
  levsq_system* p = nullptr;
  ~SystemHandle() { levsq_system_free(p); }
};

TEST(CApi, LoadFingerprintAndFieldAccess) {
  ConfigHandle c;
  ASSERT_EQ(levsq_config_load(config_path("single_mode.ini").c_str(), &c.p), LEVSQ_OK);
  char* fp = nullptr;
  ASSERT_EQ(levsq_config_fingerprint(c.p, &fp), LEVSQ_OK);
  const std::string fingerprint = take(fp);
  EXPECT_EQ(fingerprint.size(), 16u);

  double v = 0.0;
  ASSERT_EQ(levsq_config_get(c.p, "tweezer_A.power_w", &v), LEVSQ_OK);
  EXPECT_EQ(v, 0.05);
  ASSERT_EQ(levsq_config_set(c.p, "tweezer_A.power_w", 0.1), LEVSQ_OK);
  ASSERT_EQ(levsq_config_fingerprint(c.p, &fp), LEVSQ_OK);
  EXPECT_NE(take(fp), fingerprint);

  EXPECT_EQ(levsq_config_get(c.p, "tweezer_B.power_w", &v), LEVSQ_ERR_CONFIG);
  EXPECT_STREQ(levsq_last_error_field(), "tweezer_B.power_w");

  char* canon = nullptr;
  ASSERT_EQ(levsq_config_canonical(c.p, &canon), LEVSQ_OK);
  ConfigHandle round;
  ASSERT_EQ(levsq_config_parse(take(canon).c_str(), &round.p), LEVSQ_OK);
  ASSERT_EQ(levsq_config_get(round.p, "tweezer_A.power_w", &v), LEVSQ_OK);
  EXPECT_EQ(v, 0.1);
}

TEST(CApi, ConfigErrorsNameTheField) {
  ConfigHandle c;
  std::string text = read_file(config_path("single_mode.ini"));
  text += "\n[gas]\n";
  EXPECT_NE(levsq_config_parse("[ellipsoid]\nsemi_axis_a_m = 1\n", &c.p), LEVSQ_OK);
  EXPECT_EQ(c.p, nullptr);
  EXPECT_NE(std::string(levsq_last_error()), "");

  EXPECT_EQ(levsq_config_load("/nonexistent/x.ini", &c.p), LEVSQ_ERR_CONFIG);

  ASSERT_EQ(levsq_config_load(config_path("single_mode.ini").c_str(), &c.p), LEVSQ_OK);
  ASSERT_EQ(levsq_config_set(c.p, "gas.accommodation", 1.5), LEVSQ_OK);
  char* report = nullptr;
  EXPECT_EQ(levsq_validate_report(c.p, &report), LEVSQ_ERR_CONFIG);
  EXPECT_STREQ(levsq_last_error_field(), "gas.accommodation");
  EXPECT_NE(take(report).find("status: invalid"), std::string::npos);
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(levsq_config_parse(nullptr, nullptr), LEVSQ_ERR_ARGUMENT);
  EXPECT_EQ(levsq_system_build(nullptr, nullptr), LEVSQ_ERR_ARGUMENT);
  double x = 0.0;
  int st = 0;
  EXPECT_EQ(levsq_stability(nullptr, &x, &st), LEVSQ_ERR_ARGUMENT);
  EXPECT_EQ(levsq_run_preset(nullptr, "/tmp", 1, 0, nullptr), LEVSQ_ERR_ARGUMENT);
  levsq_config_free(nullptr);
  levsq_system_free(nullptr);
  levsq_free_string(nullptr);
}

TEST(CApi, SystemFromConfigAndParams) {
  ConfigHandle c;
  ASSERT_EQ(levsq_config_load(config_path("single_mode.ini").c_str(), &c.p), LEVSQ_OK);
  SystemHandle s;
  ASSERT_EQ(levsq_system_build(c.p, &s.p), LEVSQ_OK);
  levsq_params p{};
  ASSERT_EQ(levsq_system_params(s.p, &p), LEVSQ_OK);
  EXPECT_NEAR(p.omega_m, 1.7977e6, 1e3);
  EXPECT_EQ(p.g_b, 0.0);

  double max_re = 0.0;
  int stable = 0;
  ASSERT_EQ(levsq_stability(s.p, &max_re, &stable), LEVSQ_OK);
  EXPECT_EQ(stable, 1);
  EXPECT_LT(max_re, 0.0);

  double s1 = 0.0;
  double theta = 0.0;
  ASSERT_EQ(levsq_single_mode(s.p, 0.0, &s1, &theta), LEVSQ_OK);
  EXPECT_GT(s1, 0.0);
  EXPECT_LT(s1, 1.0);
  double at = 0.0;
  ASSERT_EQ(levsq_squeezing_at_angle(s.p, 0.0, theta, &at), LEVSQ_OK);
  EXPECT_NEAR(at, s1, 1e-12);
  double sxx, syy, s2;
  EXPECT_EQ(levsq_two_mode(s.p, 0.0, &sxx, &syy, &s2), LEVSQ_OK);

  SystemHandle q;
  levsq_params vac{1e6, 1e3, 5.0, 0.0, 1e6, 1e6, 0.0, 1e6, -1e6};
  ASSERT_EQ(levsq_system_from_params(&vac, &q.p), LEVSQ_OK);
  ASSERT_EQ(levsq_single_mode(q.p, 0.3e6, &s1, &theta), LEVSQ_OK);
  EXPECT_NEAR(s1, 1.0, 1e-14);
  ASSERT_EQ(levsq_two_mode(q.p, 0.3e6, &sxx, &syy, &s2), LEVSQ_OK);
  EXPECT_NEAR(s2, 1.0, 1e-14);

  levsq_params bad = vac;
  bad.omega_m = -1.0;
  SystemHandle r;
  EXPECT_EQ(levsq_system_from_params(&bad, &r.p), LEVSQ_ERR_ARGUMENT);
}

TEST(CApi, UnstableSystemIsPhysicsError) {
  ConfigHandle c;
  ASSERT_EQ(levsq_config_load(config_path("single_mode.ini").c_str(), &c.p), LEVSQ_OK);
  ASSERT_EQ(levsq_config_set(c.p, "cavity_A.kappa_over_omega_m", 0.1), LEVSQ_OK);
  SystemHandle s;
  ASSERT_EQ(levsq_system_build(c.p, &s.p), LEVSQ_OK);
  double s1 = 0.0;
  double theta = 0.0;
  EXPECT_EQ(levsq_single_mode(s.p, 0.0, &s1, &theta), LEVSQ_ERR_PHYSICS);
  char* csv = nullptr;
  EXPECT_EQ(levsq_spectrum_csv(c.p, nullptr, 0, &csv), LEVSQ_ERR_PHYSICS);
  EXPECT_EQ(csv, nullptr);
  char* report = nullptr;
  EXPECT_EQ(levsq_verify(c.p, &report), LEVSQ_ERR_PHYSICS);
  levsq_free_string(report);
}

TEST(CApi, SpectrumCsvAndVerify) {
  ConfigHandle c;
  ASSERT_EQ(levsq_config_load(config_path("two_mode_red_blue.ini").c_str(), &c.p), LEVSQ_OK);
  levsq_spectrum_options opt{1, 1, 0.0, 2.0, 21};
  char* csv = nullptr;
  ASSERT_EQ(levsq_spectrum_csv(c.p, &opt, LEVSQ_FLAG_NO_TIMESTAMP, &csv), LEVSQ_OK);
  const std::string text = take(csv);
  EXPECT_EQ(text.find("generated_utc"), std::string::npos);
  EXPECT_NE(text.find("# config_fingerprint: "), std::string::npos);

  char* report = nullptr;
  EXPECT_EQ(levsq_verify(c.p, &report), LEVSQ_OK);
  const std::string r = take(report);
  EXPECT_NE(r.find("check_name,config_fingerprint,metric,tolerance,result"), std::string::npos);
  EXPECT_EQ(r.find(",fail"), std::string::npos);
}

TEST(CApi, SweepAndPresetWriteFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "levsq_capi_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto spec = dir / "spec.ini";
  const auto out = dir / "sweep.csv";
  {
    std::ofstream f(spec);
    f << "[axis1]\npath = gas.pressure_pa\nstart = 1e-6\nstop = 1e-2\nn_points = 3\n"
         "scale = log\n[frequency]\nomega_min_over_omega_m = -1\nomega_max_over_omega_m = 1\n"
         "n_omega = 11\n[output]\npath = "
      << out.string() << "\n";
  }
  ConfigHandle c;
  ASSERT_EQ(levsq_config_load(config_path("single_mode.ini").c_str(), &c.p), LEVSQ_OK);
  char* csv = nullptr;
  char* written = nullptr;
  ASSERT_EQ(levsq_run_sweep(c.p, spec.c_str(), 2, LEVSQ_FLAG_NO_TIMESTAMP, &csv, &written),
            LEVSQ_OK);
  EXPECT_EQ(take(written), out.string());
  EXPECT_EQ(read_file(out.string()), take(csv));

  EXPECT_EQ(levsq_run_sweep(c.p, (dir / "missing.ini").c_str(), 1, 0, &csv, &written),
            LEVSQ_ERR_CONFIG);

  char* manifest = nullptr;
  ASSERT_EQ(levsq_run_preset("fig2", (dir / "presets").c_str(), 1, LEVSQ_FLAG_NO_TIMESTAMP,
                             &manifest),
            LEVSQ_OK);
  const std::string m = take(manifest);
  EXPECT_NE(m.find("fig2.csv"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "presets" / "fig2.csv"));
  EXPECT_EQ(levsq_run_preset("fig99", (dir / "presets").c_str(), 1, 0, &manifest),
            LEVSQ_ERR_CONFIG);
  std::filesystem::remove_all(dir);
}

}  // namespace
