#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace levsq {

namespace {

constexpr cd kI{0.0, 1.0};

}  // namespace

Matrix6c drift_matrix(const SystemModel& sys) {
  Matrix6c a = Matrix6c::Zero();
  const double w = sys.omega_m;
  a(kB, kB) = -sys.gamma_m / 2.0 - kI * w;
  a(kBdag, kBdag) = -sys.gamma_m / 2.0 + kI * w;

  const ChannelParams* modes[2] = {&sys.mode_a, &sys.mode_b};
  for (int j = 0; j < 2; ++j) {
    const ChannelParams& m = *modes[j];
    const int p = kA + 2 * j;
    const int q = p + 1;
    a(p, p) = -m.kappa / 2.0 - kI * m.detuning;
    a(q, q) = -m.kappa / 2.0 + kI * m.detuning;
    a(kB, p) = a(kB, q) = kI * m.g;
    a(kBdag, p) = a(kBdag, q) = -kI * m.g;
    a(p, kB) = a(p, kBdag) = kI * m.g;
    a(q, kB) = a(q, kBdag) = -kI * m.g;
  }
  return a;
}

StabilityReport stability(const SystemModel& sys) {
  Eigen::ComplexEigenSolver<Matrix6c> solver(drift_matrix(sys), false);
  if (solver.info() != Eigen::Success) {
    throw PhysicsError("eigenvalue solver did not converge for the drift matrix");
  }
  StabilityReport report;
  report.max_real_eig = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 6; ++k) {
    const cd ev = solver.eigenvalues()(k);
    if (!std::isfinite(ev.real()) || !std::isfinite(ev.imag())) {
      throw PhysicsError("drift matrix has non-finite eigenvalues");
    }
    report.eigenvalues[k] = ev;
    report.max_real_eig = std::max(report.max_real_eig, ev.real());
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](cd x, cd y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() < y.imag();
  });
  report.stable = report.max_real_eig < 0.0;
  return report;
}

UVWCoefficients uvw(const SystemModel& sys, double omega) {
  const double g2 = sys.gamma_m / 2.0;
  const double ka = sys.mode_a.kappa / 2.0;
  const double kb = sys.mode_b.kappa / 2.0;
  const double da = sys.mode_a.detuning;
  const double db = sys.mode_b.detuning;
  return {cd(g2, sys.omega_m - omega), cd(g2, -(sys.omega_m + omega)),
          cd(ka, da - omega),          cd(ka, -(da + omega)),
          cd(kb, db - omega),          cd(kb, -(db + omega))};
}

Matrix6c transfer_matrix(const SystemModel& sys, double omega) {
  const UVWCoefficients c = uvw(sys, omega);
  Matrix6c j = Matrix6c::Zero();
  j(kB, kB) = c.u1;
  j(kBdag, kBdag) = c.u2;
  j(kA, kA) = c.v1;
  j(kAdag, kAdag) = c.v2;
  j(kBm, kBm) = c.w1;
  j(kBmdag, kBmdag) = c.w2;

  const double gs[2] = {sys.mode_a.g, sys.mode_b.g};
  for (int m = 0; m < 2; ++m) {
    const int p = kA + 2 * m;
    const int q = p + 1;
    const cd ig = kI * gs[m];
    j(kB, p) = j(kB, q) = -ig;
    j(kBdag, p) = j(kBdag, q) = ig;
    j(p, kB) = j(p, kBdag) = -ig;
    j(q, kB) = j(q, kBdag) = ig;
  }
  return j;
}

double transfer_rcond(const Matrix6c& j) {
  Eigen::PartialPivLU<Matrix6c> lu(j);
  return lu.rcond();
}

}  // namespace levsq
