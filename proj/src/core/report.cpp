#include "report.hpp"

#include <thread>

#include <fmt/format.h>

#include "constants.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "spectra.hpp"

namespace levsq {

namespace {

constexpr double kUltraStrongRatio = 0.1;

std::string kv(const std::string& key, double value) {
  return fmt::format("{}: {:.10g}\n", key, value);
}

bool any_waist_defaulted(const Config& config) {
  for (const auto& ch : config.channels) {
    if (ch.cavity.waist_defaulted) return true;
  }
  return false;
}

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ValidateOutcome validate_report(const Config& config) {
  ValidateOutcome out;
  const auto issues = validate(config);
  if (!issues.empty()) {
    out.code = 1;
    out.text = "status: invalid\n";
    for (const auto& issue : issues) {
      out.text += "error: " + issue.field + ": " + issue.message + "\n";
    }
    return out;
  }

  Derivation d;
  try {
    d = derive(config);
  } catch (const PhysicsError& e) {
    out.code = 2;
    out.text = std::string("status: physics error\nerror: ") + e.what() + "\n";
    return out;
  }
  const SystemModel& sys = d.system;
  const StabilityReport st = stability(sys);

  std::string& t = out.text;
  t += "status: valid\n";
  t += "config_fingerprint: " + fingerprint(config) + "\n";
  t += kv("omega_m_rad_s", sys.omega_m);
  t += kv("omega_m_over_2pi_hz", sys.omega_m / (2.0 * constants::kPi));
  t += kv("gamma_m_rad_s", sys.gamma_m);
  t += kv("n_bar", sys.n_bar);
  for (const auto& ch : d.channels) {
    const std::string s(1, ch.label);
    const double ratio = ch.g_scattering / sys.omega_m;
    t += kv("g_" + s + "_rad_s", ch.g_scattering);
    t += kv("g_" + s + "_over_omega_m", ratio);
    t += kv("g_intrinsic_" + s + "_over_g_" + s, ch.g_intrinsic / ch.g_scattering);
    t += "ultra_strong_" + s + ": " + (std::abs(ratio) > kUltraStrongRatio ? "yes" : "no") + "\n";
    t += "cavity_waist_" + s + ": " +
         (ch.waist_defaulted ? "calibrated default" : "configured") + "\n";
  }
  t += std::string("stable: ") + (st.stable ? "yes" : "no") + "\n";
  t += kv("max_real_eig_over_omega_m", st.max_real_eig / sys.omega_m);
  for (const auto& w : d.warnings) t += "warning: " + w + "\n";
  return out;
}

std::string derive_report(const Config& config) {
  const Derivation d = derive(config);
  const SystemModel& s = d.system;
  std::string t;
  t += "config_fingerprint: " + fingerprint(config) + "\n";
  t += kv("mass_kg", d.mass);
  t += kv("inertia_kgm2", d.inertia);
  t += kv("eccentricity", config.ellipsoid.eccentricity());
  t += kv("L_a", d.depolarization.la);
  t += kv("L_b", d.depolarization.lb);
  t += kv("L_c", d.depolarization.lc);
  t += kv("alpha_a_Cm2_per_V", d.polarizability.alpha_a);
  t += kv("alpha_b_Cm2_per_V", d.polarizability.alpha_b);
  t += kv("alpha_c_Cm2_per_V", d.polarizability.alpha_c);
  for (const auto& ch : d.channels) {
    const std::string l(1, ch.label);
    t += kv("E0_" + l + "_V_per_m", ch.amplitude);
    t += kv("omega_c_" + l + "_rad_s", ch.cavity.omega_c);
    t += kv("V_c_" + l + "_m3", ch.cavity.mode_volume());
    t += kv("g_" + l + "_rad_s", ch.g_scattering);
    t += kv("g_intrinsic_" + l + "_rad_s", ch.g_intrinsic);
  }
  t += kv("omega_m_rad_s", s.omega_m);
  t += kv("gamma_m_rad_s", s.gamma_m);
  t += kv("n_bar", s.n_bar);
  t += kv("xi0_rad", s.xi0);
  for (const auto& w : d.warnings) t += "warning: " + w + "\n";
  t += "\n";
  t += csv_row({"omega_m_rad_s", "gamma_m_rad_s", "n_bar", "g_A_rad_s", "g_B_rad_s",
                "kappa_A", "kappa_B", "Delta_A", "Delta_B", "xi0", "M_kg", "I_kgm2"});
  t += csv_row({csv_number(s.omega_m), csv_number(s.gamma_m), csv_number(s.n_bar),
                csv_number(s.mode_a.g), csv_number(s.mode_b.g), csv_number(s.mode_a.kappa),
                csv_number(s.mode_b.kappa), csv_number(s.mode_a.detuning),
                csv_number(s.mode_b.detuning), csv_number(s.xi0), csv_number(d.mass),
                csv_number(d.inertia)});
  return t;
}

std::string spectrum_csv(const Config& config, const SpectrumRequest& request,
                         const RunOptions& options) {
  Config cfg = config;
  if (request.omega_min) cfg.detection.omega_min_over_omega_m = *request.omega_min;
  if (request.omega_max) cfg.detection.omega_max_over_omega_m = *request.omega_max;
  if (request.n_omega) cfg.detection.n_omega = *request.n_omega;
  if (request.two_mode && !cfg.two_channel()) {
    throw ConfigError("tweezer_B", "a two-mode spectrum needs a second tweezer and cavity mode");
  }
  const bool two_mode = cfg.two_channel();
  const SystemModel sys = build_system(cfg);
  const auto grid = linear_grid(cfg.detection.omega_min_over_omega_m,
                                cfg.detection.omega_max_over_omega_m, cfg.detection.n_omega);

  CsvMetadata meta;
  meta.kind = two_mode ? "two-mode spectrum" : "single-mode spectrum";
  meta.fingerprint = fingerprint(cfg);
  meta.waist_calibrated = any_waist_defaulted(cfg);
  meta.timestamp = options.timestamp;

  std::string out;
  if (two_mode) {
    const TwoModeSolver solver(sys);
    const SpectrumResult r = two_mode_spectrum(solver, grid);
    out = csv_header(meta);
    out += csv_row({"omega_over_omega_m", "S_XX", "S_YY", "S2", "S2_db"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += csv_row({csv_number(grid[i]), csv_number(r.s_xx[i]), csv_number(r.s_yy[i]),
                      csv_number(r.values[i]), csv_number(r.db[i])});
    }
  } else {
    const SingleModeSolver solver(sys);
    const SpectrumResult r = single_mode_spectrum(solver, grid);
    out = csv_header(meta);
    out += csv_row({"omega_over_omega_m", "S_value", "S_db", "theta_opt_rad"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += csv_row({csv_number(grid[i]), csv_number(r.values[i]), csv_number(r.db[i]),
                      csv_number(r.theta_opt[i])});
    }
  }
  return out;
}

}  // namespace levsq
