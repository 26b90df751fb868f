#include "presets.hpp"

#include <limits>

#include <fmt/format.h>

#include "constants.hpp"
#include "csv.hpp"
#include "errors.hpp"

namespace levsq {

namespace {

// Single-mode reference settings on the stable kappa_A = 2 omega_m curve.
constexpr const char* kSingleModeIni = R"([ellipsoid]
semi_axis_a_m = 100e-9
semi_axis_b_m = 50e-9
semi_axis_c_m = 50e-9
density_kg_m3 = 2200
relative_permittivity = 2.1

[tweezer_A]
wavelength_m = 780e-9
power_w = 0.05
waist_m = 1e-6
detuning_over_omega_m = 1

[cavity_A]
kappa_over_omega_m = 2
length_m = 1e-3

[gas]
pressure_pa = 1e-4
gas_temperature_k = 300
accommodation = 0.9
bath_temperature_k = 300

[detection]
omega_min_over_omega_m = -4
omega_max_over_omega_m = 4
n_omega = 2001
)";

// Two-mode reference settings, red-blue drive.
constexpr const char* kTwoModeIni = R"([ellipsoid]
semi_axis_a_m = 100e-9
semi_axis_b_m = 50e-9
semi_axis_c_m = 50e-9
density_kg_m3 = 2200
relative_permittivity = 2.1

[tweezer_A]
wavelength_m = 780e-9
power_w = 0.05
waist_m = 1e-6
detuning_over_omega_m = 1

[cavity_A]
kappa_over_omega_m = 0.3
length_m = 1e-3

[tweezer_B]
wavelength_m = 980e-9
power_w = 0.05
waist_m = 1e-6
detuning_over_omega_m = -1

[cavity_B]
kappa_over_omega_m = 3
length_m = 1e-3

[gas]
pressure_pa = 1e-4
gas_temperature_k = 300
accommodation = 0.9
bath_temperature_k = 300

[detection]
omega_min_over_omega_m = 0
omega_max_over_omega_m = 2
n_omega = 2001
)";

constexpr int kMapPoints = 50;
constexpr int kGridPoints = 2001;

bool waist_calibrated(const Config& c) {
  for (const auto& ch : c.channels) {
    if (ch.cavity.waist_defaulted) return true;
  }
  return false;
}

std::vector<double> grid_of(const Config& c) {
  return linear_grid(c.detection.omega_min_over_omega_m, c.detection.omega_max_over_omega_m,
                     c.detection.n_omega);
}

CsvMetadata meta_for(const std::string& kind, const Config& base, const RunOptions& options) {
  CsvMetadata meta;
  meta.kind = kind;
  meta.fingerprint = fingerprint(base);
  meta.waist_calibrated = waist_calibrated(base);
  meta.timestamp = options.timestamp;
  return meta;
}

// Long-format spectra plus a per-curve summary.
std::vector<PresetFile> family_files(const std::string& name, const Config& base,
                                     const CurveFamily& fam, const RunOptions& options,
                                     const std::vector<std::string>& notes) {
  const bool two_mode = base.two_channel();
  CsvMetadata meta = meta_for(name + " spectra", base, options);
  meta.notes = notes;
  meta.notes.push_back("swept parameter: " + fam.path);
  meta.notes.push_back("stable=0 curves are formal evaluations beyond the stability boundary");

  std::string spectra = csv_header(meta);
  if (two_mode) {
    spectra += csv_row({fam.path, "stable", "omega_over_omega_m", "S_XX", "S_YY", "S2", "S2_db"});
  } else {
    spectra += csv_row({fam.path, "stable", "omega_over_omega_m", "S_value", "S_db",
                        "theta_opt_rad"});
  }
  meta.kind = name + " summary";
  std::string summary = csv_header(meta);
  const char* ref_name = two_mode ? "S2_at_omega_m" : "S1_at_omega_0";
  const double ref_omega = two_mode ? 1.0 : 0.0;
  summary += csv_row({fam.path, "stable", "max_real_eig_over_omega_m", ref_name,
                      std::string(ref_name) + "_db", "min_S", "min_S_db",
                      "argmin_omega_over_omega_m", "error"});

  for (std::size_t c = 0; c < fam.values.size(); ++c) {
    const PointResult& p = fam.points[c];
    const std::string v = csv_number(fam.values[c]);
    if (!p.ok) {
      summary += csv_row({v, "", "", "", "", "", "", "", csv_text(p.error)});
      continue;
    }
    const SpectrumResult& s = p.spectrum;
    const std::string st = p.stable ? "1" : "0";
    double ref = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < s.omega_grid.size(); ++i) {
      if (s.omega_grid[i] == ref_omega) ref = s.values[i];
      if (two_mode) {
        spectra += csv_row({v, st, csv_number(s.omega_grid[i]), csv_number(s.s_xx[i]),
                            csv_number(s.s_yy[i]), csv_number(s.values[i]),
                            csv_number(s.db[i])});
      } else {
        spectra += csv_row({v, st, csv_number(s.omega_grid[i]), csv_number(s.values[i]),
                            csv_number(s.db[i]), csv_number(s.theta_opt[i])});
      }
    }
    summary += csv_row({v, st, csv_number(p.max_real_eig / p.system.omega_m), csv_number(ref),
                        csv_number(to_db(ref)), csv_number(p.min_s), csv_number(to_db(p.min_s)),
                        csv_number(p.argmin_omega), ""});
  }
  return {{name + "_spectra.csv", spectra}, {name + "_summary.csv", summary}};
}

std::vector<PresetFile> family_preset(const std::string& name, const std::string& path,
                                      const std::vector<double>& values,
                                      const RunOptions& options,
                                      const std::vector<std::string>& notes = {}) {
  const Config base = preset_config(name);
  const CurveFamily fam = run_family(base, path, values, grid_of(base), options.workers);
  return family_files(name, base, fam, options, notes);
}

std::vector<PresetFile> fig2(const RunOptions& options) {
  const Config base = preset_config("fig2");
  std::string out = csv_header(meta_for("fig2", base, options));
  out += csv_row({"P_t_w", "omega_m_rad_s", "omega_m_over_2pi_hz", "g_A_rad_s", "g_B_rad_s",
                  "g_A_over_omega_m", "g_B_over_omega_m", "g_intrinsic_A_over_g_A"});
  for (double p : linear_grid(0.01, 0.1, 10)) {
    Config c = base;
    set_field(c, "tweezer_A.power_w", p);
    set_field(c, "tweezer_B.power_w", p);
    const Derivation d = derive(c);
    const SystemModel& s = d.system;
    out += csv_row({csv_number(p), csv_number(s.omega_m),
                    csv_number(s.omega_m / (2.0 * constants::kPi)), csv_number(s.mode_a.g),
                    csv_number(s.mode_b.g), csv_number(s.mode_a.g / s.omega_m),
                    csv_number(s.mode_b.g / s.omega_m),
                    csv_number(d.channels[0].g_intrinsic / d.channels[0].g_scattering)});
  }
  return {{"fig2.csv", out}};
}

std::vector<PresetFile> fig6_files(const std::string& which, const KappaMap& map,
                                   const RunOptions& options) {
  const Config base = preset_config(which);
  std::vector<PresetFile> files;
  if (which == "fig6a") {
    CsvMetadata meta = meta_for("fig6a", base, options);
    meta.notes.push_back("min over omega/omega_m in [0, 2] of S2; stable=0 cells are formal");
    std::string a = csv_header(meta);
    a += csv_row({"kappa_A_over_omega_m", "kappa_B_over_omega_m", "min_S2", "min_S2_db",
                  "argmin_omega_over_omega_m", "stable", "error"});
    for (std::size_t i = 0; i < map.kappa_a.size(); ++i) {
      for (std::size_t j = 0; j < map.kappa_b.size(); ++j) {
        const PointResult& p = map.at(i, j);
        const std::string ka = csv_number(map.kappa_a[i]);
        const std::string kb = csv_number(map.kappa_b[j]);
        if (!p.ok) {
          a += csv_row({ka, kb, "", "", "", "", csv_text(p.error)});
        } else {
          a += csv_row({ka, kb, csv_number(p.min_s), csv_number(to_db(p.min_s)),
                        csv_number(p.argmin_omega), p.stable ? "1" : "0", ""});
        }
      }
    }
    files.push_back({"fig6a.csv", a});
  } else {
    std::string b = csv_header(meta_for("fig6b", base, options));
    b += csv_row({"kappa_A_over_omega_m", "kappa_B_over_omega_m", "max_real_eig_over_omega_m",
                  "stable"});
    const double wm = build_system(base).omega_m;
    for (std::size_t i = 0; i < map.kappa_a.size(); ++i) {
      for (std::size_t j = 0; j < map.kappa_b.size(); ++j) {
        const PointResult& p = map.at(i, j);
        // Stability does not depend on the spectrum; recompute if the
        // spectral evaluation itself failed.
        StabilityReport st;
        if (p.ok) {
          st.max_real_eig = p.max_real_eig;
          st.stable = p.stable;
        } else {
          Config c = base;
          set_field(c, "cavity_A.kappa_over_omega_m", map.kappa_a[i]);
          set_field(c, "cavity_B.kappa_over_omega_m", map.kappa_b[j]);
          st = stability(build_system(c));
        }
        b += csv_row({csv_number(map.kappa_a[i]), csv_number(map.kappa_b[j]),
                      csv_number(st.max_real_eig / wm), st.stable ? "1" : "0"});
      }
    }
    files.push_back({"fig6b.csv", b});
  }
  return files;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2",  "fig3",  "fig4a", "fig4b",
                                              "fig5",  "fig6a", "fig6b", "fig7"};
  return names;
}

std::string single_mode_config_text() { return kSingleModeIni; }
std::string two_mode_config_text() { return kTwoModeIni; }

Config preset_config(const std::string& name) {
  if (name == "fig3") return parse_config(kSingleModeIni);
  if (name == "fig4a" || name == "fig4b") {
    Config c = parse_config(kSingleModeIni);
    c.channels[0].cavity.kappa_over_omega_m = 3.0;
    if (name == "fig4b") c.gas.pressure_pa = 1e-2;
    return c;
  }
  if (name == "fig2" || name == "fig5" || name == "fig6a" || name == "fig6b") {
    return parse_config(kTwoModeIni);
  }
  if (name == "fig7") {
    Config c = parse_config(kTwoModeIni);
    c.channels[0].tweezer.power_w = 0.1;
    return c;
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

CurveFamily run_family(const Config& base, const std::string& path,
                       const std::vector<double>& values, const std::vector<double>& omega_grid,
                       int workers) {
  CurveFamily fam{path, values, std::vector<PointResult>(values.size())};
  parallel_for(static_cast<int>(values.size()), resolve_workers(workers), [&](int i) {
    Config c = base;
    set_field(c, path, values[i]);
    fam.points[i] = evaluate_point(c, omega_grid, true);
  });
  return fam;
}

KappaMap kappa_map(int n_kappa, int n_omega, int workers) {
  const Config base = preset_config("fig6a");
  KappaMap map;
  map.kappa_a = linear_grid(0.05, 1.5, n_kappa);
  map.kappa_b = linear_grid(0.1, 5.0, n_kappa);
  map.points.resize(map.kappa_a.size() * map.kappa_b.size());
  const auto grid = linear_grid(base.detection.omega_min_over_omega_m,
                                base.detection.omega_max_over_omega_m, n_omega);
  parallel_for(static_cast<int>(map.points.size()), resolve_workers(workers), [&](int idx) {
    Config c = base;
    c.channels[0].cavity.kappa_over_omega_m = map.kappa_a[idx / map.kappa_b.size()];
    c.channels[1].cavity.kappa_over_omega_m = map.kappa_b[idx % map.kappa_b.size()];
    map.points[idx] = evaluate_point(c, grid, false);
  });
  return map;
}

std::vector<PresetFile> run_preset(const std::string& name, const RunOptions& options) {
  if (name == "all") {
    std::vector<PresetFile> all;
    const KappaMap map = kappa_map(kMapPoints, kGridPoints, options.workers);
    for (const auto& n : preset_names()) {
      auto files = n.rfind("fig6", 0) == 0 ? fig6_files(n, map, options) : run_preset(n, options);
      for (auto& f : files) all.push_back(std::move(f));
    }
    return all;
  }
  if (name == "fig2") return fig2(options);
  if (name == "fig3") {
    return family_preset(name, "cavity_A.kappa_over_omega_m", {0.1, 0.5, 1.0, 2.0, 3.0}, options);
  }
  if (name == "fig4a") {
    return family_preset(name, "gas.pressure_pa", {1e-2, 1e-4, 1e-6}, options);
  }
  if (name == "fig4b") {
    return family_preset(name, "gas.bath_temperature_k", {0.0, 1.0, 10.0, 100.0, 300.0}, options);
  }
  if (name == "fig5") {
    return family_preset(name, "tweezer_B.detuning_over_omega_m", {1.0, -1.0}, options,
                         {"detuning_B = +1: red-red drive; -1: red-blue drive"});
  }
  if (name == "fig6a" || name == "fig6b") {
    return fig6_files(name, kappa_map(kMapPoints, kGridPoints, options.workers), options);
  }
  if (name == "fig7") {
    return family_preset(name, "tweezer_B.power_w", {0.05, 0.1, 0.15, 0.5}, options);
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace levsq
