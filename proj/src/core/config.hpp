#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace levsq {

/// Cavity waist used when a configuration omits it. The waist is never
/// published numerically; this value is a calibration (see README).
inline constexpr double kDefaultCavityWaist = 9e-6;

struct TweezerSettings {
  double wavelength_m = 0.0;
  double power_w = 0.0;
  double waist_m = 0.0;
  double detuning_over_omega_m = 0.0;
};

struct CavitySettings {
  double kappa_over_omega_m = 0.0;
  double length_m = 0.0;
  double waist_m = kDefaultCavityWaist;
  double phase_rad = 0.0;
  bool waist_defaulted = true;
};

struct ChannelSettings {
  char label = 'A';
  TweezerSettings tweezer;
  CavitySettings cavity;
};

/// Frequency grid for spectra, in units of omega_m.
struct DetectionSettings {
  double omega_min_over_omega_m = -4.0;
  double omega_max_over_omega_m = 4.0;
  int n_omega = 2001;
};

struct GasSettings {
  double pressure_pa = 0.0;
  double gas_temperature_k = 300.0;
  double molecular_mass_amu = 28.97;
  double accommodation = 0.9;
  double bath_temperature_k = 300.0;
};

struct Config {
  Ellipsoid ellipsoid;
  std::vector<ChannelSettings> channels;  // 'A' first, optional 'B'
  GasSettings gas;
  DetectionSettings detection;

  bool two_channel() const { return channels.size() == 2; }
  ChannelSettings* channel(char label);
  const ChannelSettings* channel(char label) const;
};

struct ValidationIssue {
  std::string field;
  std::string message;
};

/// Parses the sectioned key-value format. Syntax problems, unknown keys and
/// missing required fields throw ConfigError; range checks are left to
/// validate().
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

std::vector<ValidationIssue> validate(const Config& config);

/// Deterministic serialization: fixed section/key order, 17 significant
/// digits. Round-trips through parse_config.
std::string canonical_text(const Config& config);

/// First 16 hex digits of SHA-256 over canonical_text().
std::string fingerprint(const Config& config);

/// Numeric field access by "section.key" path, e.g. "tweezer_B.power_w".
double get_field(const Config& config, std::string_view path);
void set_field(Config& config, std::string_view path, double value);
std::vector<std::string> field_paths(const Config& config);

}  // namespace levsq
