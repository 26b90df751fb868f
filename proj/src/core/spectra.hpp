#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dynamics.hpp"

namespace levsq {

/// Output-normalized weights of one output mode on the six inputs
/// (b_in, b_in+, a_A_in, a_A_in+, a_B_in, a_B_in+), input-output relation
/// already applied.
struct TransferCoefficients {
  std::array<cd, 6> w{};
};

/// Whether a solver refuses unstable systems. Formal evaluation is only for
/// mapping spectra across the stability boundary.
enum class StabilityGate { kRequireStable, kFormal };

/// Noise weights <xi_k xi_k+>: n+1 on b_in, n on b_in+, vacuum optics.
std::array<double, 6> input_noise_weights(double n_bar);

struct RawSpectra {
  double s_a_adag = 0.0;
  double s_adag_a = 0.0;
  cd s_aa;
};

struct OptimalSqueezing {
  double s1 = 0.0;
  double theta = 0.0;  // [0, pi)
};

class SingleModeSolver {
 public:
  /// Requires mode_b.g == 0. Throws PhysicsError on an unstable system
  /// unless gate is kFormal.
  explicit SingleModeSolver(const SystemModel& sys,
                            StabilityGate gate = StabilityGate::kRequireStable);

  const SystemModel& system() const { return sys_; }
  const StabilityReport& stability_report() const { return stability_; }

  TransferCoefficients coefficients(double omega) const;
  RawSpectra raw_spectra(double omega) const;
  double at_angle(double omega, double theta) const;
  OptimalSqueezing optimal(double omega) const;

  /// Spectral density of <a_A+ a_A>; integrates to the occupation over
  /// d omega / (2 pi).
  double occupation_density(double omega) const;

 private:
  SystemModel sys_;
  StabilityReport stability_;
};

struct TwoModeSpectrum {
  double s_xx = 0.0;
  double s_yy = 0.0;
  double s2 = 0.0;
};

class TwoModeSolver {
 public:
  explicit TwoModeSolver(const SystemModel& sys,
                         StabilityGate gate = StabilityGate::kRequireStable);

  const SystemModel& system() const { return sys_; }
  const StabilityReport& stability_report() const { return stability_; }

  std::pair<TransferCoefficients, TransferCoefficients> coefficients(double omega) const;
  TwoModeSpectrum spectrum(double omega) const;

  /// Occupation densities of modes A and B.
  std::pair<double, double> occupation_density(double omega) const;

 private:
  SystemModel sys_;
  StabilityReport stability_;
};

/// Spectrum on a grid of omega / omega_m. For two-mode results `values`
/// holds S2 and theta_opt is empty.
struct SpectrumResult {
  std::vector<double> omega_grid;
  std::vector<double> values;
  std::vector<double> db;
  std::vector<double> theta_opt;
  std::vector<double> s_xx;
  std::vector<double> s_yy;
  bool stable = false;
  double max_real_eig = 0.0;  // rad/s
};

std::vector<double> linear_grid(double start, double stop, int n);

SpectrumResult single_mode_spectrum(const SingleModeSolver& solver,
                                    const std::vector<double>& omega_grid);
SpectrumResult two_mode_spectrum(const TwoModeSolver& solver,
                                 const std::vector<double>& omega_grid);

double to_db(double s);

}  // namespace levsq
