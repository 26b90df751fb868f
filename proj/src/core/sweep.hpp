#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "report.hpp"
#include "spectra.hpp"

namespace levsq {

struct SweepAxis {
  std::string path;  // "section.key" of a numeric config field
  double start = 0.0;
  double stop = 0.0;
  int n_points = 0;
  bool log_scale = false;

  std::vector<double> values() const;
};

struct FrequencySpec {
  double omega_min_over_omega_m = 0.0;
  double omega_max_over_omega_m = 0.0;
  int n_omega = 0;
};

struct SweepSpec {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::optional<FrequencySpec> frequency;  // falls back to [detection]
  std::string output_path;                 // empty: caller decides
};

/// Sections [axis1], optional [axis2], [frequency], [output]. Throws
/// ConfigError naming "section.key".
SweepSpec parse_sweep_spec(std::string_view text);
SweepSpec load_sweep_spec(const std::string& path);

/// Throws ConfigError if an axis path does not resolve against config.
void check_sweep_spec(const SweepSpec& spec, const Config& config);

/// Everything a sweep records about one configuration. Spectra are always
/// evaluated formally; `stable` says whether they describe a steady state.
struct PointResult {
  bool ok = false;
  std::string error;
  bool two_mode = false;
  bool waist_calibrated = false;
  SystemModel system;
  double max_real_eig = 0.0;  // rad/s
  bool stable = false;
  double min_s = 0.0;
  double argmin_omega = 0.0;  // units of omega_m
  double theta_at_min = 0.0;  // single-mode only
  SpectrumResult spectrum;    // filled when requested
};

PointResult evaluate_point(const Config& config, const std::vector<double>& omega_grid,
                           bool keep_spectrum);

/// Runs fn(i) for i in [0, n) on `workers` threads. Results must be written
/// by index; the first exception is rethrown after all workers stop.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

std::string run_sweep(const Config& config, const SweepSpec& spec, const RunOptions& options);

}  // namespace levsq
