#include "oracle.hpp"

#include <cmath>
#include <limits>

#include "constants.hpp"
#include "errors.hpp"

namespace levsq::oracle {

namespace {

std::array<double, 6> noise_weights(double n_bar) {
  return {n_bar + 1.0, n_bar, 1.0, 0.0, 1.0, 0.0};
}

}  // namespace

GenericOutputs solve_output_generic(const SystemModel& sys, double omega) {
  const Matrix6c j = cd(0.0, -omega) * Matrix6c::Identity() - drift_matrix(sys);
  Eigen::FullPivLU<Matrix6c> lu(j);
  if (!lu.isInvertible() || lu.rcond() < kSingularRcond) {
    throw PhysicsError("frequency-domain system matrix is singular");
  }
  const Matrix6c inv = lu.inverse();
  const double scale[6] = {std::sqrt(sys.gamma_m),      std::sqrt(sys.gamma_m),
                           std::sqrt(sys.mode_a.kappa), std::sqrt(sys.mode_a.kappa),
                           std::sqrt(sys.mode_b.kappa), std::sqrt(sys.mode_b.kappa)};
  GenericOutputs out;
  for (int k = 0; k < 6; ++k) {
    out.a[k] = scale[2] * inv(kA, k) * scale[k];
    out.b[k] = scale[4] * inv(kBm, k) * scale[k];
  }
  out.a[kA] -= 1.0;
  out.b[kBm] -= 1.0;
  return out;
}

CovarianceMatrix lyapunov_covariance(const SystemModel& sys) {
  // Work in units of omega_m; V is dimensionless and unchanged.
  const double unit = sys.omega_m;
  const Matrix6c a = drift_matrix(sys) / unit;
  Eigen::ComplexEigenSolver<Matrix6c> es(a, false);
  if (es.info() != Eigen::Success) throw PhysicsError("eigen-solver failed in Lyapunov solve");
  for (int k = 0; k < 6; ++k) {
    if (!(es.eigenvalues()(k).real() < 0.0)) {
      throw PhysicsError("unstable system has no steady-state covariance");
    }
  }

  Matrix6c d = Matrix6c::Zero();
  d(kB, kB) = sys.gamma_m * (sys.n_bar + 1.0) / unit;
  d(kBdag, kBdag) = sys.gamma_m * sys.n_bar / unit;
  d(kA, kA) = sys.mode_a.kappa / unit;
  d(kBm, kBm) = sys.mode_b.kappa / unit;

  // vec(A V + V A^H) = (I (x) A + conj(A) (x) I) vec(V), column-major vec.
  using Matrix36c = Eigen::Matrix<cd, 36, 36>;
  using Vector36c = Eigen::Matrix<cd, 36, 1>;
  Matrix36c k = Matrix36c::Zero();
  for (int col = 0; col < 6; ++col) {
    k.block<6, 6>(6 * col, 6 * col) += a;
    for (int row = 0; row < 6; ++row) {
      k.block<6, 6>(6 * row, 6 * col) +=
          std::conj(a(row, col)) * Matrix6c::Identity();
    }
  }
  Vector36c rhs;
  for (int col = 0; col < 6; ++col) {
    for (int row = 0; row < 6; ++row) rhs(6 * col + row) = -d(row, col);
  }
  const Vector36c x = k.fullPivLu().solve(rhs);

  CovarianceMatrix out;
  for (int col = 0; col < 6; ++col) {
    for (int row = 0; row < 6; ++row) out.v(row, col) = x(6 * col + row);
  }
  const Matrix6c residual = a * out.v + out.v * a.adjoint() + d;
  out.relative_residual = residual.norm() / d.norm();
  if (!(out.relative_residual < kLyapunovResidual)) {
    throw PhysicsError("Lyapunov residual " + std::to_string(out.relative_residual) +
                       " exceeds tolerance");
  }
  return out;
}

double potential_curvature_frequency(const Ellipsoid& ellipsoid,
                                     std::span<const double> amplitudes) {
  const Polarizability pol = polarizability(ellipsoid, depolarization_factors(ellipsoid));
  const Eigen::Matrix3d alpha0 =
      Eigen::Vector3d(pol.alpha_a, pol.alpha_b, pol.alpha_c).asDiagonal();
  double sum_sq = 0.0;
  for (double e0 : amplitudes) sum_sq += e0 * e0;

  // Tweezer polarized along x; the long axis sits on x at phi = 0.
  const Eigen::Vector3d pol_dir(1.0, 0.0, 0.0);
  auto potential = [&](double phi) {
    const double theta = 0.0;
    Eigen::Matrix3d ry;
    ry << std::cos(theta), 0.0, -std::sin(theta),
          0.0, 1.0, 0.0,
          std::sin(theta), 0.0, std::cos(theta);
    Eigen::Matrix3d rz;
    rz << std::cos(phi), std::sin(phi), 0.0,
          -std::sin(phi), std::cos(phi), 0.0,
          0.0, 0.0, 1.0;
    const Eigen::Matrix3d r = ry * rz;
    const Eigen::Matrix3d alpha = r.inverse() * alpha0 * r;
    // Time average of the squared tweezer field is E0^2 / 2.
    return -0.25 * sum_sq * pol_dir.dot(alpha * pol_dir);
  };

  const double h = 1e-4;
  const double curvature = (potential(h) - 2.0 * potential(0.0) + potential(-h)) / (h * h);
  if (!(curvature > 0.0)) throw PhysicsError("trap potential has no minimum at phi = 0");
  return std::sqrt(curvature / ellipsoid.inertia());
}

AngleScan angle_scan(const SystemModel& sys, double omega, int n_angles) {
  const GenericOutputs pos = solve_output_generic(sys, omega);
  const GenericOutputs neg = solve_output_generic(sys, -omega);
  const auto n = noise_weights(sys.n_bar);
  AngleScan best{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < n_angles; ++i) {
    const double theta = constants::kPi * i / n_angles;
    const cd phase = std::exp(cd(0.0, -theta));
    double s = 0.0;
    for (int k = 0; k < 6; ++k) {
      const cd x = phase * pos.a[k] + std::conj(phase * neg.a[k ^ 1]);
      s += n[k] * std::norm(x);
    }
    if (s < best.min_s) best = {s, theta};
  }
  return best;
}

}  // namespace levsq::oracle
