#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "config.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "presets.hpp"
#include "random_systems.hpp"
#include "spectra.hpp"
#include "verify.hpp"

namespace levsq {
namespace {

Ellipsoid reference_ellipsoid() { return {100e-9, 50e-9, 50e-9, 2200.0, 2.1}; }

double max_rel_diff(const std::array<cd, 6>& x, const std::array<cd, 6>& y) {
  double diff = 0.0;
  double norm = 0.0;
  for (int k = 0; k < 6; ++k) {
    diff = std::max(diff, std::abs(x[k] - y[k]));
    norm = std::max(norm, std::abs(y[k]));
  }
  return diff / norm;
}

TEST(GenericSolve, MatchesClosedFormSingleMode) {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 100; ++n) {
    const SystemModel s = testing::random_stable_system(rng, false);
    const SingleModeSolver solver(s);
    const double w = testing::uniform(rng, -4.0, 4.0) * s.omega_m;
    EXPECT_LT(max_rel_diff(oracle::solve_output_generic(s, w).a, solver.coefficients(w).w),
              1e-10);
  }
}

TEST(GenericSolve, MatchesClosedFormTwoMode) {
  std::mt19937_64 rng(42);
  for (int n = 0; n < 100; ++n) {
    const SystemModel s = testing::random_stable_system(rng, true);
    const TwoModeSolver solver(s);
    const double w = testing::uniform(rng, -4.0, 4.0) * s.omega_m;
    const oracle::GenericOutputs g = oracle::solve_output_generic(s, w);
    const auto [a, b] = solver.coefficients(w);
    EXPECT_LT(max_rel_diff(g.a, a.w), 1e-10);
    EXPECT_LT(max_rel_diff(g.b, b.w), 1e-10);
  }
}

TEST(Lyapunov, UncoupledThermalState) {
  SystemModel s;
  s.omega_m = 1e6;
  s.gamma_m = 1e4;
  s.n_bar = 17.0;
  s.mode_a = {0.0, 1e6, 1e6};
  s.mode_b = {0.0, 2e6, -1e6};
  const oracle::CovarianceMatrix c = oracle::lyapunov_covariance(s);
  EXPECT_NEAR(c.mechanical_occupation(), 17.0, 1e-9);
  EXPECT_NEAR(c.occupation_a(), 0.0, 1e-12);
  EXPECT_NEAR(c.occupation_b(), 0.0, 1e-12);
  EXPECT_NEAR(c.v(kB, kB).real(), 18.0, 1e-9);
  EXPECT_LT(c.relative_residual, oracle::kLyapunovResidual);
}

TEST(Lyapunov, HermitianAndPositive) {
  std::mt19937_64 rng(43);
  for (int n = 0; n < 50; ++n) {
    const oracle::CovarianceMatrix c =
        oracle::lyapunov_covariance(testing::random_stable_system(rng, true));
    EXPECT_LT((c.v - c.v.adjoint()).norm(), 1e-9 * c.v.norm());
    Eigen::SelfAdjointEigenSolver<Matrix6c> es(0.5 * (c.v + c.v.adjoint()));
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-9 * c.v.norm());
    EXPECT_GE(c.occupation_a(), -1e-12);
    EXPECT_LT(c.relative_residual, oracle::kLyapunovResidual);
  }
}

TEST(Lyapunov, AgreesWithIntegratedSpectrum) {
  testing::SystemRanges r;
  r.min_decay = 0.05;
  r.gamma_min = 0.05;
  r.gamma_max = 0.2;
  r.n_bar_max = 5.0;
  std::mt19937_64 rng(44);
  for (int n = 0; n < 4; ++n) {
    const SystemModel s = testing::random_stable_system(rng, true, r);
    const oracle::CovarianceMatrix c = oracle::lyapunov_covariance(s);
    const auto [na, nb] = spectral_occupations(s, 40.0, 16001);
    EXPECT_NEAR(na, c.occupation_a(), 1e-2 * c.occupation_a());
    EXPECT_NEAR(nb, c.occupation_b(), 1e-2 * c.occupation_b());
  }
}

TEST(Lyapunov, RejectsUnstable) {
  Config c = preset_config("fig3");
  c.channels[0].cavity.kappa_over_omega_m = 0.1;
  EXPECT_THROW(oracle::lyapunov_covariance(build_system(c)), PhysicsError);
}

TEST(PotentialCurvature, MatchesClosedFormFrequency) {
  for (const char* name : {"fig3", "fig5"}) {
    const Config c = preset_config(name);
    const Derivation d = derive(c);
    std::vector<double> amps;
    for (const auto& ch : d.channels) amps.push_back(ch.amplitude);
    const double w = oracle::potential_curvature_frequency(c.ellipsoid, amps);
    EXPECT_NEAR(w, d.system.omega_m, 1e-3 * d.system.omega_m) << name;
  }
}

TEST(PotentialCurvature, ScalesAsSquareRootOfPower) {
  const double e1 = 4.897e6;
  const double w1 = oracle::potential_curvature_frequency(reference_ellipsoid(), std::array{e1});
  const double w4 =
      oracle::potential_curvature_frequency(reference_ellipsoid(), std::array{2.0 * e1});
  EXPECT_NEAR(w4 / w1, 2.0, 1e-4);
}

TEST(PotentialCurvature, SphereHasNoTrap) {
  const Ellipsoid sphere{50e-9, 50e-9, 50e-9, 2200.0, 2.1};
  EXPECT_THROW(oracle::potential_curvature_frequency(sphere, std::array{4.897e6}),
               PhysicsError);
}

TEST(AngleScan, UncoupledIsShotNoise) {
  SystemModel s;
  s.omega_m = 1e6;
  s.gamma_m = 1e3;
  s.n_bar = 100.0;
  s.mode_a = {0.0, 1e6, 1e6};
  s.mode_b = {0.0, 1e6, 0.0};
  for (double x : {-1.0, 0.0, 2.0}) {
    EXPECT_NEAR(oracle::angle_scan(s, x * 1e6, 360).min_s, 1.0, 1e-13);
  }
}

TEST(AngleScan, BoundsOptimumFromAbove) {
  std::mt19937_64 rng(45);
  for (int n = 0; n < 30; ++n) {
    const SystemModel s = testing::random_stable_system(rng, false);
    const double w = testing::uniform(rng, -3.0, 3.0) * s.omega_m;
    const double s1 = SingleModeSolver(s).optimal(w).s1;
    const oracle::AngleScan scan = oracle::angle_scan(s, w, 720);
    EXPECT_GE(scan.min_s, s1 * (1.0 - 1e-10));
    EXPECT_GE(scan.argmin_theta, 0.0);
    EXPECT_LT(scan.argmin_theta, 3.1416);
  }
}

TEST(OracleSource, IndependentOfClosedForms) {
  std::ifstream in(std::string(LEVSQ_SOURCE_DIR) + "/src/core/oracle.cpp");
  ASSERT_TRUE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().find("spectra.hpp"), std::string::npos);
  EXPECT_EQ(ss.str().find("transfer_matrix"), std::string::npos);
  EXPECT_EQ(ss.str().find("uvw("), std::string::npos);
}

}  // namespace
}  // namespace levsq
