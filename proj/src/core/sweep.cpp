#include "sweep.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "csv.hpp"
#include "errors.hpp"

namespace levsq {

namespace {

using boost::property_tree::ptree;

double number_at(const ptree& section, const std::string& sec, const std::string& key) {
  const auto node = section.get_child_optional(key);
  const std::string path = sec + "." + key;
  if (!node) throw ConfigError(path, "required key missing");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(node->data(), &used);
  } catch (const std::exception&) {
    throw ConfigError(path, "not a number: '" + node->data() + "'");
  }
  if (node->data().find_first_not_of(" \t", used) != std::string::npos) {
    throw ConfigError(path, "not a number: '" + node->data() + "'");
  }
  if (!std::isfinite(v)) throw ConfigError(path, "value must be finite");
  return v;
}

int integer_at(const ptree& section, const std::string& sec, const std::string& key) {
  const double v = number_at(section, sec, key);
  if (v != std::floor(v) || std::abs(v) > 1e8) {
    throw ConfigError(sec + "." + key, "must be an integer");
  }
  return static_cast<int>(v);
}

void reject_unknown(const ptree& section, const std::string& sec,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, node] : section) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) throw ConfigError(sec + "." + key, "unknown key");
  }
}

SweepAxis parse_axis(const ptree& section, const std::string& sec) {
  reject_unknown(section, sec, {"path", "start", "stop", "n_points", "scale"});
  SweepAxis axis;
  const auto path = section.get_child_optional("path");
  if (!path || path->data().empty()) throw ConfigError(sec + ".path", "required key missing");
  axis.path = path->data();
  axis.start = number_at(section, sec, "start");
  axis.stop = number_at(section, sec, "stop");
  axis.n_points = integer_at(section, sec, "n_points");
  const std::string scale = section.get<std::string>("scale", "linear");
  if (scale == "log") {
    axis.log_scale = true;
  } else if (scale != "linear") {
    throw ConfigError(sec + ".scale", "must be 'linear' or 'log'");
  }
  if (axis.n_points < 1) throw ConfigError(sec + ".n_points", "must be >= 1");
  if (axis.n_points >= 2 && axis.start == axis.stop) {
    throw ConfigError(sec + ".stop", "must differ from start");
  }
  if (axis.log_scale && !(axis.start > 0.0 && axis.stop > 0.0)) {
    throw ConfigError(sec + ".start", "log-scaled axes need positive start and stop");
  }
  return axis;
}

std::string opt(bool ok, double v) { return ok ? csv_number(v) : std::string(); }

}  // namespace

std::vector<double> SweepAxis::values() const {
  if (n_points == 1) return {start};
  if (!log_scale) return linear_grid(start, stop, n_points);
  std::vector<double> out(static_cast<std::size_t>(n_points));
  const double ratio = std::log(stop / start);
  for (int i = 0; i < n_points; ++i) {
    out[i] = i == 0 ? start
             : i == n_points - 1 ? stop
                                 : start * std::exp(ratio * i / (n_points - 1));
  }
  return out;
}

SweepSpec parse_sweep_spec(std::string_view text) {
  ptree tree;
  try {
    std::istringstream in{std::string(text)};
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", "malformed sweep spec: " + e.message() + " (line " +
                              std::to_string(e.line()) + ")");
  }
  SweepSpec spec;
  bool have_axis1 = false;
  for (const auto& [name, body] : tree) {
    if (name == "axis1") {
      spec.axis1 = parse_axis(body, name);
      have_axis1 = true;
    } else if (name == "axis2") {
      spec.axis2 = parse_axis(body, name);
    } else if (name == "frequency") {
      reject_unknown(body, name, {"omega_min_over_omega_m", "omega_max_over_omega_m", "n_omega"});
      FrequencySpec f;
      f.omega_min_over_omega_m = number_at(body, name, "omega_min_over_omega_m");
      f.omega_max_over_omega_m = number_at(body, name, "omega_max_over_omega_m");
      f.n_omega = integer_at(body, name, "n_omega");
      if (f.n_omega < 2) throw ConfigError("frequency.n_omega", "must be >= 2");
      if (!(f.omega_min_over_omega_m < f.omega_max_over_omega_m)) {
        throw ConfigError("frequency.omega_max_over_omega_m", "must exceed omega_min_over_omega_m");
      }
      spec.frequency = f;
    } else if (name == "output") {
      reject_unknown(body, name, {"path"});
      spec.output_path = body.get<std::string>("path", "");
    } else {
      throw ConfigError(name, "unknown section in sweep spec");
    }
  }
  if (!have_axis1) throw ConfigError("axis1", "section required");
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open sweep spec '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_spec(buffer.str());
}

void check_sweep_spec(const SweepSpec& spec, const Config& config) {
  get_field(config, spec.axis1.path);
  if (spec.axis2) {
    get_field(config, spec.axis2->path);
    if (spec.axis2->path == spec.axis1.path) {
      throw ConfigError("axis2.path", "both axes sweep the same parameter");
    }
  }
}

PointResult evaluate_point(const Config& config, const std::vector<double>& omega_grid,
                           bool keep_spectrum) {
  PointResult r;
  r.two_mode = config.two_channel();
  for (const auto& ch : config.channels) r.waist_calibrated |= ch.cavity.waist_defaulted;
  try {
    r.system = build_system(config);
    SpectrumResult s;
    if (r.two_mode) {
      const TwoModeSolver solver(r.system, StabilityGate::kFormal);
      s = two_mode_spectrum(solver, omega_grid);
    } else {
      const SingleModeSolver solver(r.system, StabilityGate::kFormal);
      s = single_mode_spectrum(solver, omega_grid);
    }
    r.stable = s.stable;
    r.max_real_eig = s.max_real_eig;
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      if (s.values[i] < s.values[best]) best = i;
    }
    r.min_s = s.values[best];
    r.argmin_omega = s.omega_grid[best];
    if (!r.two_mode) r.theta_at_min = s.theta_opt[best];
    if (keep_spectrum) r.spectrum = std::move(s);
    r.ok = true;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string run_sweep(const Config& config, const SweepSpec& spec, const RunOptions& options) {
  check_sweep_spec(spec, config);
  const std::vector<double> v1 = spec.axis1.values();
  const std::vector<double> v2 = spec.axis2 ? spec.axis2->values() : std::vector<double>{0.0};
  const int n = static_cast<int>(v1.size() * v2.size());

  FrequencySpec freq{config.detection.omega_min_over_omega_m,
                     config.detection.omega_max_over_omega_m, config.detection.n_omega};
  if (spec.frequency) freq = *spec.frequency;
  const auto grid = linear_grid(freq.omega_min_over_omega_m, freq.omega_max_over_omega_m,
                                freq.n_omega);

  std::vector<std::string> rows(static_cast<std::size_t>(n));
  parallel_for(n, resolve_workers(options.workers), [&](int idx) {
    const std::size_t i = idx / v2.size();
    const std::size_t j = idx % v2.size();
    Config cfg = config;
    std::vector<std::string> fields;
    std::string error;
    try {
      set_field(cfg, spec.axis1.path, v1[i]);
      if (spec.axis2) set_field(cfg, spec.axis2->path, v2[j]);
    } catch (const std::exception& e) {
      error = e.what();
    }
    fields.push_back(csv_number(v1[i]));
    if (spec.axis2) fields.push_back(csv_number(v2[j]));

    PointResult p;
    if (error.empty()) {
      p = evaluate_point(cfg, grid, false);
      error = p.error;
    }
    const bool ok = error.empty();
    const SystemModel& s = p.system;
    const bool have_sys = ok && s.omega_m > 0.0;
    fields.push_back(opt(have_sys, s.omega_m));
    fields.push_back(opt(have_sys, s.gamma_m));
    fields.push_back(opt(have_sys, s.n_bar));
    fields.push_back(opt(have_sys, s.mode_a.g / s.omega_m));
    fields.push_back(opt(have_sys, s.mode_b.g / s.omega_m));
    fields.push_back(opt(have_sys, s.mode_a.kappa / s.omega_m));
    fields.push_back(opt(have_sys, s.mode_b.kappa / s.omega_m));
    fields.push_back(opt(ok, p.max_real_eig / s.omega_m));
    fields.push_back(ok ? (p.stable ? "1" : "0") : "");
    fields.push_back(opt(ok, p.min_s));
    fields.push_back(opt(ok, to_db(p.min_s)));
    fields.push_back(opt(ok, p.argmin_omega));
    fields.push_back(opt(ok && !p.two_mode, p.theta_at_min));
    fields.push_back(csv_text(error));
    rows[idx] = csv_row(fields);
  });

  CsvMetadata meta;
  meta.kind = "sweep";
  meta.fingerprint = fingerprint(config);
  for (const auto& ch : config.channels) meta.waist_calibrated |= ch.cavity.waist_defaulted;
  meta.timestamp = options.timestamp;
  meta.notes.push_back(std::string("spectrum: ") +
                       (config.two_channel() ? "two-mode S2" : "single-mode S1") +
                       ", evaluated formally; stable=0 rows have no steady state");
  std::string out = csv_header(meta);
  std::vector<std::string> header{spec.axis1.path};
  if (spec.axis2) header.push_back(spec.axis2->path);
  for (const char* h : {"omega_m_rad_s", "gamma_m_rad_s", "n_bar", "g_A_over_omega_m",
                        "g_B_over_omega_m", "kappa_A_over_omega_m", "kappa_B_over_omega_m",
                        "max_real_eig_over_omega_m", "stable", "min_S", "min_S_db",
                        "argmin_omega_over_omega_m", "theta_opt_at_min_rad", "error"}) {
    header.push_back(h);
  }
  out += csv_row(header);
  for (const auto& row : rows) out += row;
  return out;
}

}  // namespace levsq
