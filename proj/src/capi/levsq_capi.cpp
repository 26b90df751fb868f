#include "levsq/levsq.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "presets.hpp"
#include "report.hpp"
#include "spectra.hpp"
#include "sweep.hpp"
#include "verify.hpp"

struct levsq_config {
  levsq::Config config;
};

struct levsq_system {
  levsq::SystemModel system;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_field;

levsq_status fail(levsq_status status, std::string message, std::string field = {}) {
  g_error = std::move(message);
  g_error_field = std::move(field);
  return status;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
levsq_status guarded(F&& body) {
  g_error.clear();
  g_error_field.clear();
  try {
    return body();
  } catch (const levsq::ConfigError& e) {
    return fail(LEVSQ_ERR_CONFIG, e.what(), e.field());
  } catch (const levsq::PhysicsError& e) {
    return fail(LEVSQ_ERR_PHYSICS, e.what());
  } catch (const IoError& e) {
    return fail(LEVSQ_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LEVSQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LEVSQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LEVSQ_ERR_INTERNAL, "unknown error");
  }
}

levsq::RunOptions run_options(int workers, unsigned flags) {
  levsq::RunOptions o;
  o.workers = workers;
  o.timestamp = (flags & LEVSQ_FLAG_NO_TIMESTAMP) == 0;
  return o;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw IoError("cannot write '" + path + "'");
}

#define LEVSQ_REQUIRE(ptr)                                                      \
  do {                                                                          \
    if ((ptr) == nullptr) return fail(LEVSQ_ERR_ARGUMENT, #ptr " is NULL");     \
  } while (0)

}  // namespace

extern "C" {

const char* levsq_last_error(void) { return g_error.c_str(); }
const char* levsq_last_error_field(void) { return g_error_field.c_str(); }
void levsq_free_string(char* s) { std::free(s); }

levsq_status levsq_config_load(const char* path, levsq_config** out) {
  LEVSQ_REQUIRE(path);
  LEVSQ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new levsq_config{levsq::load_config(path)};
    return LEVSQ_OK;
  });
}

levsq_status levsq_config_parse(const char* text, levsq_config** out) {
  LEVSQ_REQUIRE(text);
  LEVSQ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new levsq_config{levsq::parse_config(text)};
    return LEVSQ_OK;
  });
}

void levsq_config_free(levsq_config* config) { delete config; }

levsq_status levsq_config_get(const levsq_config* config, const char* path, double* value) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(path);
  LEVSQ_REQUIRE(value);
  return guarded([&] {
    *value = levsq::get_field(config->config, path);
    return LEVSQ_OK;
  });
}

levsq_status levsq_config_set(levsq_config* config, const char* path, double value) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(path);
  return guarded([&] {
    levsq::set_field(config->config, path, value);
    return LEVSQ_OK;
  });
}

levsq_status levsq_config_fingerprint(const levsq_config* config, char** out) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(out);
  return guarded([&] {
    *out = dup(levsq::fingerprint(config->config));
    return LEVSQ_OK;
  });
}

levsq_status levsq_config_canonical(const levsq_config* config, char** out) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(out);
  return guarded([&] {
    *out = dup(levsq::canonical_text(config->config));
    return LEVSQ_OK;
  });
}

levsq_status levsq_validate_report(const levsq_config* config, char** report) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(report);
  return guarded([&] {
    const levsq::ValidateOutcome v = levsq::validate_report(config->config);
    *report = dup(v.text);
    if (v.code == 1) {
      const auto issues = levsq::validate(config->config);
      return fail(LEVSQ_ERR_CONFIG, "configuration is invalid",
                  issues.empty() ? std::string() : issues.front().field);
    }
    if (v.code == 2) return fail(LEVSQ_ERR_PHYSICS, "no trap for this configuration");
    return LEVSQ_OK;
  });
}

levsq_status levsq_derive_report(const levsq_config* config, char** report) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(report);
  return guarded([&] {
    *report = dup(levsq::derive_report(config->config));
    return LEVSQ_OK;
  });
}

levsq_status levsq_system_build(const levsq_config* config, levsq_system** out) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new levsq_system{levsq::build_system(config->config)};
    return LEVSQ_OK;
  });
}

levsq_status levsq_system_from_params(const levsq_params* p, levsq_system** out) {
  LEVSQ_REQUIRE(p);
  LEVSQ_REQUIRE(out);
  *out = nullptr;
  if (!(p->omega_m > 0.0)) return fail(LEVSQ_ERR_ARGUMENT, "omega_m must be > 0");
  if (!(p->gamma_m >= 0.0)) return fail(LEVSQ_ERR_ARGUMENT, "gamma_m must be >= 0");
  if (!(p->n_bar >= 0.0)) return fail(LEVSQ_ERR_ARGUMENT, "n_bar must be >= 0");
  if (!(p->kappa_a > 0.0) || !(p->kappa_b > 0.0)) {
    return fail(LEVSQ_ERR_ARGUMENT, "kappa_a and kappa_b must be > 0");
  }
  return guarded([&] {
    levsq::SystemModel s;
    s.omega_m = p->omega_m;
    s.gamma_m = p->gamma_m;
    s.n_bar = p->n_bar;
    s.mode_a = {p->g_a, p->kappa_a, p->detuning_a};
    s.mode_b = {p->g_b, p->kappa_b, p->detuning_b};
    *out = new levsq_system{s};
    return LEVSQ_OK;
  });
}

void levsq_system_free(levsq_system* system) { delete system; }

levsq_status levsq_system_params(const levsq_system* system, levsq_params* out) {
  LEVSQ_REQUIRE(system);
  LEVSQ_REQUIRE(out);
  const levsq::SystemModel& s = system->system;
  *out = {s.omega_m,      s.gamma_m,     s.n_bar,           s.mode_a.g,       s.mode_a.kappa,
          s.mode_a.detuning, s.mode_b.g, s.mode_b.kappa, s.mode_b.detuning};
  return LEVSQ_OK;
}

levsq_status levsq_stability(const levsq_system* system, double* max_real_eig, int* stable) {
  LEVSQ_REQUIRE(system);
  LEVSQ_REQUIRE(max_real_eig);
  LEVSQ_REQUIRE(stable);
  return guarded([&] {
    const levsq::StabilityReport r = levsq::stability(system->system);
    *max_real_eig = r.max_real_eig;
    *stable = r.stable ? 1 : 0;
    return LEVSQ_OK;
  });
}

levsq_status levsq_single_mode(const levsq_system* system, double omega, double* s1,
                               double* theta_opt) {
  LEVSQ_REQUIRE(system);
  LEVSQ_REQUIRE(s1);
  return guarded([&] {
    const levsq::OptimalSqueezing o = levsq::SingleModeSolver(system->system).optimal(omega);
    *s1 = o.s1;
    if (theta_opt) *theta_opt = o.theta;
    return LEVSQ_OK;
  });
}

levsq_status levsq_squeezing_at_angle(const levsq_system* system, double omega, double theta,
                                      double* s) {
  LEVSQ_REQUIRE(system);
  LEVSQ_REQUIRE(s);
  return guarded([&] {
    *s = levsq::SingleModeSolver(system->system).at_angle(omega, theta);
    return LEVSQ_OK;
  });
}

levsq_status levsq_two_mode(const levsq_system* system, double omega, double* s_xx,
                            double* s_yy, double* s2) {
  LEVSQ_REQUIRE(system);
  LEVSQ_REQUIRE(s2);
  return guarded([&] {
    const levsq::TwoModeSpectrum t = levsq::TwoModeSolver(system->system).spectrum(omega);
    if (s_xx) *s_xx = t.s_xx;
    if (s_yy) *s_yy = t.s_yy;
    *s2 = t.s2;
    return LEVSQ_OK;
  });
}

levsq_status levsq_spectrum_csv(const levsq_config* config,
                                const levsq_spectrum_options* options, unsigned flags,
                                char** csv) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(csv);
  return guarded([&] {
    levsq::SpectrumRequest req;
    if (options) {
      req.two_mode = options->two_mode != 0;
      if (options->has_range) {
        req.omega_min = options->omega_min_over_omega_m;
        req.omega_max = options->omega_max_over_omega_m;
      }
      if (options->n_omega != 0) req.n_omega = options->n_omega;
    }
    *csv = dup(levsq::spectrum_csv(config->config, req, run_options(0, flags)));
    return LEVSQ_OK;
  });
}

levsq_status levsq_run_sweep(const levsq_config* config, const char* spec_path, int workers,
                             unsigned flags, char** csv, char** written_path) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(spec_path);
  LEVSQ_REQUIRE(csv);
  if (written_path) *written_path = nullptr;
  return guarded([&] {
    const levsq::SweepSpec spec = levsq::load_sweep_spec(spec_path);
    const std::string out = levsq::run_sweep(config->config, spec, run_options(workers, flags));
    if (!spec.output_path.empty()) {
      write_file(spec.output_path, out);
      if (written_path) *written_path = dup(spec.output_path);
    }
    *csv = dup(out);
    return LEVSQ_OK;
  });
}

levsq_status levsq_run_preset(const char* name, const char* out_dir, int workers,
                              unsigned flags, char** manifest) {
  LEVSQ_REQUIRE(name);
  LEVSQ_REQUIRE(out_dir);
  return guarded([&] {
    const auto files = levsq::run_preset(name, run_options(workers, flags));
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create '" + std::string(out_dir) + "': " + ec.message());
    std::string list;
    for (const auto& f : files) {
      const std::string path = (std::filesystem::path(out_dir) / f.name).string();
      write_file(path, f.content);
      list += path + "\n";
    }
    if (manifest) *manifest = dup(list);
    return LEVSQ_OK;
  });
}

levsq_status levsq_verify(const levsq_config* config, char** report) {
  LEVSQ_REQUIRE(config);
  LEVSQ_REQUIRE(report);
  return guarded([&] {
    const levsq::VerifyReport r = levsq::verify_config(config->config);
    *report = dup(r.csv());
    if (!r.all_pass()) return fail(LEVSQ_ERR_VERIFY, "one or more verification checks failed");
    return LEVSQ_OK;
  });
}

}  // extern "C"
