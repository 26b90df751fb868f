#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"
#include "sweep.hpp"

namespace levsq {

/// fig2, fig3, fig4a, fig4b, fig5, fig6a, fig6b, fig7.
const std::vector<std::string>& preset_names();

/// Frozen base configuration of a preset. Throws ConfigError("preset")
/// for an unknown name.
Config preset_config(const std::string& name);

/// Text of the two frozen base configurations, as shipped in configs/.
std::string single_mode_config_text();
std::string two_mode_config_text();

/// One configuration per value of `path`, all on the same grid.
struct CurveFamily {
  std::string path;
  std::vector<double> values;
  std::vector<PointResult> points;
};

CurveFamily run_family(const Config& base, const std::string& path,
                       const std::vector<double>& values, const std::vector<double>& omega_grid,
                       int workers);

/// Two-mode (kappa_A, kappa_B) map at the fig6 settings, row-major with
/// kappa_B fastest.
struct KappaMap {
  std::vector<double> kappa_a;
  std::vector<double> kappa_b;
  std::vector<PointResult> points;

  const PointResult& at(std::size_t i, std::size_t j) const {
    return points[i * kappa_b.size() + j];
  }
};

KappaMap kappa_map(int n_kappa, int n_omega, int workers);

struct PresetFile {
  std::string name;
  std::string content;
};

/// Runs one preset, or all of them for "all".
std::vector<PresetFile> run_preset(const std::string& name, const RunOptions& options);

}  // namespace levsq
