#pragma once

#include <array>
#include <span>

#include "dynamics.hpp"
#include "model.hpp"

// Verification paths that share no code with the closed-form spectra.
namespace levsq::oracle {

/// Output-normalized weights of both cavity outputs, from a direct LU solve
/// of (-i omega - A) built from the drift matrix.
struct GenericOutputs {
  std::array<cd, 6> a{};
  std::array<cd, 6> b{};
};

/// Throws PhysicsError when the frequency-domain system is singular.
GenericOutputs solve_output_generic(const SystemModel& sys, double omega);

struct CovarianceMatrix {
  Matrix6c v;  // v(k, l) = <f_k f_l+>
  double relative_residual = 0.0;

  double mechanical_occupation() const { return v(kBdag, kBdag).real(); }
  double occupation_a() const { return v(kAdag, kAdag).real(); }
  double occupation_b() const { return v(kBmdag, kBmdag).real(); }
};

/// Residual bound, relative to ||D||, accepted from the Lyapunov solve.
inline constexpr double kLyapunovResidual = 1e-10;

/// Steady state of dV/dt = A V + V A^H + D. Throws PhysicsError for an
/// unstable system or a residual above kLyapunovResidual.
CovarianceMatrix lyapunov_covariance(const SystemModel& sys);

/// Trap frequency from a central second difference of the rotated-tensor
/// potential at phi = 0. Throws PhysicsError when the curvature is not
/// positive.
double potential_curvature_frequency(const Ellipsoid& ellipsoid,
                                     std::span<const double> amplitudes);

struct AngleScan {
  double min_s = 0.0;
  double argmin_theta = 0.0;
};

/// Homodyne spectrum on n_angles equally spaced angles in [0, pi), each
/// evaluated from the generic coefficients of mode A.
AngleScan angle_scan(const SystemModel& sys, double omega, int n_angles);

}  // namespace levsq::oracle
