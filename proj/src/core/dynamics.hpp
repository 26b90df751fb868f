#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "model.hpp"

namespace levsq {

using cd = std::complex<double>;
using Matrix6c = Eigen::Matrix<cd, 6, 6>;
using Vector6c = Eigen::Matrix<cd, 6, 1>;

/// Basis order used everywhere: (b, b+, a_A, a_A+, a_B, a_B+).
enum BasisIndex : int { kB = 0, kBdag = 1, kA = 2, kAdag = 3, kBm = 4, kBmdag = 5 };

/// Index of the conjugate partner in the basis (0<->1, 2<->3, 4<->5).
constexpr int conjugate_index(int k) { return k ^ 1; }

Matrix6c drift_matrix(const SystemModel& sys);

struct StabilityReport {
  double max_real_eig = 0.0;  // rad/s
  bool stable = false;
  std::array<cd, 6> eigenvalues{};
};

/// Throws PhysicsError if the eigen-solver does not converge.
StabilityReport stability(const SystemModel& sys);

struct UVWCoefficients {
  cd u1, u2, v1, v2, w1, w2;
};

UVWCoefficients uvw(const SystemModel& sys, double omega);

/// J(omega) such that J x = (sqrt(gamma) b_in, sqrt(gamma) b_in+, ...).
Matrix6c transfer_matrix(const SystemModel& sys, double omega);

/// Reciprocal condition estimate below which J is treated as singular.
inline constexpr double kSingularRcond = 1e-13;

/// Reciprocal 1-norm condition number of J, from an LU factorization.
double transfer_rcond(const Matrix6c& j);

}  // namespace levsq
