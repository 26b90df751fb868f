#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "constants.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "spectra.hpp"

namespace levsq {

namespace {

constexpr double kTrapTolerance = 1e-3;
constexpr double kCoefficientTolerance = 1e-10;
constexpr double kOccupationTolerance = 1e-2;
constexpr double kShotNoiseTolerance = 1e-12;
constexpr int kAngles = 720;
constexpr double kIntegrationHalfWidth = 40.0;
constexpr int kIntegrationPoints = 16001;

double relative_max_error(const std::array<cd, 6>& x, const std::array<cd, 6>& ref) {
  double err = 0.0;
  double scale = 0.0;
  for (int k = 0; k < 6; ++k) {
    err = std::max(err, std::abs(x[k] - ref[k]));
    scale = std::max(scale, std::abs(ref[k]));
  }
  return err / scale;
}

VerifyCheck make(const std::string& name, double metric, double tol) {
  return {name, metric, tol, metric <= tol};
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

std::string VerifyReport::csv() const {
  std::string out = csv_row({"check_name", "config_fingerprint", "metric", "tolerance", "result"});
  for (const auto& c : checks) {
    out += csv_row({c.name, fingerprint, csv_number(c.metric), csv_number(c.tolerance),
                    c.pass ? "pass" : "fail"});
  }
  return out;
}

std::pair<double, double> spectral_occupations(const SystemModel& sys, double half_width,
                                               int n_points) {
  const auto grid = linear_grid(-half_width, half_width, n_points);
  const double step = (grid[1] - grid[0]) * sys.omega_m;
  double na = 0.0;
  double nb = 0.0;
  std::optional<SingleModeSolver> s1;
  std::optional<TwoModeSolver> s2;
  if (sys.mode_b.g != 0.0) {
    s2.emplace(sys);
  } else {
    s1.emplace(sys);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
    const double omega = grid[i] * sys.omega_m;
    if (s1) {
      na += w * s1->occupation_density(omega);
    } else {
      const auto [a, b] = s2->occupation_density(omega);
      na += w * a;
      nb += w * b;
    }
  }
  const double norm = step / (2.0 * constants::kPi);
  return {na * norm, nb * norm};
}

VerifyReport verify_config(const Config& config) {
  VerifyReport report;
  report.fingerprint = fingerprint(config);
  const Derivation d = derive(config);
  const SystemModel& sys = d.system;
  const StabilityReport st = stability(sys);
  if (!st.stable) {
    throw PhysicsError("verification needs a steady state; max Re(eig) / omega_m = " +
                       std::to_string(st.max_real_eig / sys.omega_m));
  }
  const bool two_mode = config.two_channel();

  std::vector<double> amplitudes;
  for (const auto& ch : d.channels) amplitudes.push_back(ch.amplitude);
  const double curvature = oracle::potential_curvature_frequency(config.ellipsoid, amplitudes);
  report.checks.push_back(make("trap_frequency_vs_potential_curvature",
                               std::abs(curvature - sys.omega_m) / sys.omega_m,
                               kTrapTolerance));

  const auto grid = linear_grid(config.detection.omega_min_over_omega_m,
                                config.detection.omega_max_over_omega_m,
                                config.detection.n_omega);
  double coeff_err = 0.0;
  double angle_err = 0.0;
  double shot_err = 0.0;
  SystemModel bare = sys;
  bare.mode_a.g = 0.0;
  bare.mode_b.g = 0.0;
  // A bare mechanical mode with gamma_m = 0 has no steady state; the
  // normalization check only concerns the optics.
  if (bare.gamma_m <= 0.0) bare.gamma_m = 1e-6 * bare.omega_m;
  if (two_mode) {
    const TwoModeSolver solver(sys);
    const TwoModeSolver vacuum(bare);
    for (double x : grid) {
      const auto [a, b] = solver.coefficients(x * sys.omega_m);
      const auto ref = oracle::solve_output_generic(sys, x * sys.omega_m);
      coeff_err = std::max({coeff_err, relative_max_error(a.w, ref.a),
                            relative_max_error(b.w, ref.b)});
      shot_err = std::max(shot_err, std::abs(vacuum.spectrum(x * sys.omega_m).s2 - 1.0));
    }
  } else {
    const SingleModeSolver solver(sys);
    const SingleModeSolver vacuum(bare);
    for (double x : grid) {
      const auto c = solver.coefficients(x * sys.omega_m);
      const auto ref = oracle::solve_output_generic(sys, x * sys.omega_m);
      coeff_err = std::max(coeff_err, relative_max_error(c.w, ref.a));
      shot_err = std::max(shot_err, std::abs(vacuum.optimal(x * sys.omega_m).s1 - 1.0));
    }
    const int stride = std::max<int>(1, static_cast<int>(grid.size()) / 8);
    for (std::size_t i = 0; i < grid.size(); i += stride) {
      const double omega = grid[i] * sys.omega_m;
      const auto scan = oracle::angle_scan(sys, omega, kAngles);
      const double s1 = solver.optimal(omega).s1;
      // Grid offset at most pi / (2 n) from the optimum, where the
      // curvature of S_theta is 4 |S_aa|.
      const double half_step = constants::kPi / (2.0 * kAngles);
      const double bound = 4.0 * std::abs(solver.raw_spectra(omega).s_aa) * half_step * half_step;
      const double gap = scan.min_s - s1;
      // A scan undercutting the closed-form minimum is a hard failure.
      const double ratio = gap < -1e-12 ? std::numeric_limits<double>::infinity()
                                        : gap / (bound + 1e-15);
      angle_err = std::max(angle_err, ratio);
    }
  }
  report.checks.push_back(make("coefficients_vs_generic_solve", coeff_err, kCoefficientTolerance));
  if (!two_mode) {
    report.checks.push_back(make("angle_scan_gap_over_resolution_bound", angle_err, 1.0));
  }
  report.checks.push_back(make("shot_noise_normalization", shot_err, kShotNoiseTolerance));

  const oracle::CovarianceMatrix cov = oracle::lyapunov_covariance(sys);
  report.checks.push_back(
      make("lyapunov_residual", cov.relative_residual, oracle::kLyapunovResidual));
  const auto [na, nb] = spectral_occupations(sys, kIntegrationHalfWidth, kIntegrationPoints);
  double occ_err = std::abs(na - cov.occupation_a()) / cov.occupation_a();
  if (two_mode) occ_err = std::max(occ_err, std::abs(nb - cov.occupation_b()) / cov.occupation_b());
  report.checks.push_back(make("occupation_spectral_vs_lyapunov", occ_err, kOccupationTolerance));
  return report;
}

}  // namespace levsq
