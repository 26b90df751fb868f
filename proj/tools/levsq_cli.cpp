#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "levsq/levsq.h"

namespace {

int exit_code(levsq_status s) {
  switch (s) {
    case LEVSQ_OK: return 0;
    case LEVSQ_ERR_PHYSICS: return 2;
    case LEVSQ_ERR_VERIFY: return 3;
    default: return 1;
  }
}

int report_error(levsq_status s) {
  std::string msg = levsq_last_error();
  // Config errors already carry their field as a prefix.
  std::cerr << "levsq: error: " << msg << "\n";
  return exit_code(s);
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  levsq_free_string(s);
  return out;
}

struct ConfigHandle {
  levsq_config* ptr = nullptr;
  ~ConfigHandle() { levsq_config_free(ptr); }
};

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "levsq: error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezing spectra of a levitated nano-ellipsoid in a bichromatic cavity"};
  app.require_subcommand(1);

  std::string config_path;
  std::string spec_path;
  std::string preset_name;
  std::string out_dir = ".";
  std::string output;
  bool two_mode = false;
  bool no_timestamp = false;
  int workers = 0;
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  std::optional<int> n_omega;

  auto* validate = app.add_subcommand("validate", "check a configuration and print derived parameters");
  validate->add_option("config", config_path, "configuration file")->required();

  auto* derive = app.add_subcommand("derive", "print the derived-parameter report");
  derive->add_option("config", config_path, "configuration file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "write a squeezing spectrum as CSV");
  spectrum->add_option("config", config_path, "configuration file")->required();
  spectrum->add_flag("--two-mode", two_mode, "two-mode spectrum (needs channel B)");
  spectrum->add_option("--omega-min", omega_min, "grid start, units of omega_m");
  spectrum->add_option("--omega-max", omega_max, "grid stop, units of omega_m");
  spectrum->add_option("--n-omega", n_omega, "number of grid points");
  spectrum->add_option("-o,--output", output, "output file (default stdout)");
  spectrum->add_flag("--no-timestamp", no_timestamp, "omit the timestamp comment line");

  auto* sweep = app.add_subcommand("sweep", "run a one- or two-axis parameter sweep");
  sweep->add_option("config", config_path, "configuration file")->required();
  sweep->add_option("spec", spec_path, "sweep specification file")->required();
  sweep->add_option("-w,--workers", workers, "worker threads (default: all cores)");
  sweep->add_flag("--no-timestamp", no_timestamp, "omit the timestamp comment line");

  auto* preset = app.add_subcommand("preset", "reproduce a figure as CSV tables");
  preset->add_option("name", preset_name, "fig2|fig3|fig4a|fig4b|fig5|fig6a|fig6b|fig7|all")
      ->required();
  preset->add_option("--out-dir", out_dir, "output directory");
  preset->add_option("-w,--workers", workers, "worker threads (default: all cores)");
  preset->add_flag("--no-timestamp", no_timestamp, "omit the timestamp comment line");

  auto* verify = app.add_subcommand("verify", "cross-check a configuration against the oracles");
  verify->add_option("config", config_path, "configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  const unsigned flags = no_timestamp ? LEVSQ_FLAG_NO_TIMESTAMP : 0u;

  if (preset->parsed()) {
    char* manifest = nullptr;
    const levsq_status s =
        levsq_run_preset(preset_name.c_str(), out_dir.c_str(), workers, flags, &manifest);
    if (s != LEVSQ_OK) return report_error(s);
    std::cout << take(manifest);
    return 0;
  }

  ConfigHandle cfg;
  if (levsq_status s = levsq_config_load(config_path.c_str(), &cfg.ptr); s != LEVSQ_OK) {
    return report_error(s);
  }

  if (validate->parsed()) {
    char* text = nullptr;
    const levsq_status s = levsq_validate_report(cfg.ptr, &text);
    std::cout << take(text);
    return exit_code(s);
  }
  if (derive->parsed()) {
    char* text = nullptr;
    const levsq_status s = levsq_derive_report(cfg.ptr, &text);
    if (s != LEVSQ_OK) return report_error(s);
    std::cout << take(text);
    return 0;
  }
  if (spectrum->parsed()) {
    levsq_spectrum_options opts{};
    opts.two_mode = two_mode ? 1 : 0;
    if (omega_min || omega_max) {
      double lo = 0.0;
      double hi = 0.0;
      levsq_config_get(cfg.ptr, "detection.omega_min_over_omega_m", &lo);
      levsq_config_get(cfg.ptr, "detection.omega_max_over_omega_m", &hi);
      opts.has_range = 1;
      opts.omega_min_over_omega_m = omega_min.value_or(lo);
      opts.omega_max_over_omega_m = omega_max.value_or(hi);
    }
    opts.n_omega = n_omega.value_or(0);
    char* csv = nullptr;
    const levsq_status s = levsq_spectrum_csv(cfg.ptr, &opts, flags, &csv);
    if (s != LEVSQ_OK) return report_error(s);
    return write_output(output, take(csv)) ? 0 : 1;
  }
  if (sweep->parsed()) {
    char* csv = nullptr;
    char* written = nullptr;
    const levsq_status s =
        levsq_run_sweep(cfg.ptr, spec_path.c_str(), workers, flags, &csv, &written);
    if (s != LEVSQ_OK) return report_error(s);
    const std::string text = take(csv);
    const std::string path = take(written);
    if (path.empty()) {
      std::cout << text;
    } else {
      std::cout << path << "\n";
    }
    return 0;
  }
  if (verify->parsed()) {
    char* text = nullptr;
    const levsq_status s = levsq_verify(cfg.ptr, &text);
    std::cout << take(text);
    if (s != LEVSQ_OK && s != LEVSQ_ERR_VERIFY) return report_error(s);
    return exit_code(s);
  }
  return 1;
}
