#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "model.hpp"

namespace levsq {

struct VerifyCheck {
  std::string name;
  double metric = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string fingerprint;
  std::vector<VerifyCheck> checks;

  bool all_pass() const;
  std::string csv() const;
};

/// Cross-checks the closed-form paths against the oracles for one
/// configuration. Throws PhysicsError if the system is unstable.
VerifyReport verify_config(const Config& config);

/// Cavity occupations from trapezoidal integration of the closed-form
/// intracavity spectra over omega/omega_m in [-half_width, half_width].
/// The second entry is zero for single-channel systems.
std::pair<double, double> spectral_occupations(const SystemModel& sys, double half_width,
                                               int n_points);

}  // namespace levsq
