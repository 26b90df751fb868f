#pragma once

#include <optional>
#include <string>

#include "config.hpp"

namespace levsq {

struct RunOptions {
  int workers = 0;  // 0 picks the hardware concurrency
  bool timestamp = true;
};

int resolve_workers(int requested);

/// Outcome code follows the CLI convention: 0 valid, 1 config error,
/// 2 physics error.
struct ValidateOutcome {
  int code = 0;
  std::string text;
};

ValidateOutcome validate_report(const Config& config);

/// Key-value block, a blank line, then a one-row CSV.
std::string derive_report(const Config& config);

struct SpectrumRequest {
  bool two_mode = false;
  std::optional<double> omega_min;  // units of omega_m
  std::optional<double> omega_max;
  std::optional<int> n_omega;
};

/// Throws PhysicsError if the system is unstable.
std::string spectrum_csv(const Config& config, const SpectrumRequest& request,
                         const RunOptions& options);

}  // namespace levsq
