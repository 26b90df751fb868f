#include "config.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "errors.hpp"

namespace levsq {

namespace {

enum class Section { kEllipsoid, kTweezer, kCavity, kGas, kDetection };

struct Field {
  Section section;
  const char* key;
  bool required;
  double (*get)(const Config&, const ChannelSettings*);
  void (*set)(Config&, ChannelSettings*, double);
};

// Table order is the canonical key order.
const std::array kFields{
    Field{Section::kEllipsoid, "semi_axis_a_m", true,
          [](const Config& c, const ChannelSettings*) { return c.ellipsoid.a; },
          [](Config& c, ChannelSettings*, double v) { c.ellipsoid.a = v; }},
    Field{Section::kEllipsoid, "semi_axis_b_m", true,
          [](const Config& c, const ChannelSettings*) { return c.ellipsoid.b; },
          [](Config& c, ChannelSettings*, double v) { c.ellipsoid.b = v; }},
    Field{Section::kEllipsoid, "semi_axis_c_m", true,
          [](const Config& c, const ChannelSettings*) { return c.ellipsoid.c; },
          [](Config& c, ChannelSettings*, double v) { c.ellipsoid.c = v; }},
    Field{Section::kEllipsoid, "density_kg_m3", true,
          [](const Config& c, const ChannelSettings*) { return c.ellipsoid.density; },
          [](Config& c, ChannelSettings*, double v) { c.ellipsoid.density = v; }},
    Field{Section::kEllipsoid, "relative_permittivity", true,
          [](const Config& c, const ChannelSettings*) { return c.ellipsoid.relative_permittivity; },
          [](Config& c, ChannelSettings*, double v) { c.ellipsoid.relative_permittivity = v; }},

    Field{Section::kTweezer, "wavelength_m", true,
          [](const Config&, const ChannelSettings* ch) { return ch->tweezer.wavelength_m; },
          [](Config&, ChannelSettings* ch, double v) { ch->tweezer.wavelength_m = v; }},
    Field{Section::kTweezer, "power_w", true,
          [](const Config&, const ChannelSettings* ch) { return ch->tweezer.power_w; },
          [](Config&, ChannelSettings* ch, double v) { ch->tweezer.power_w = v; }},
    Field{Section::kTweezer, "waist_m", true,
          [](const Config&, const ChannelSettings* ch) { return ch->tweezer.waist_m; },
          [](Config&, ChannelSettings* ch, double v) { ch->tweezer.waist_m = v; }},
    Field{Section::kTweezer, "detuning_over_omega_m", false,
          [](const Config&, const ChannelSettings* ch) { return ch->tweezer.detuning_over_omega_m; },
          [](Config&, ChannelSettings* ch, double v) { ch->tweezer.detuning_over_omega_m = v; }},

    Field{Section::kCavity, "kappa_over_omega_m", true,
          [](const Config&, const ChannelSettings* ch) { return ch->cavity.kappa_over_omega_m; },
          [](Config&, ChannelSettings* ch, double v) { ch->cavity.kappa_over_omega_m = v; }},
    Field{Section::kCavity, "length_m", true,
          [](const Config&, const ChannelSettings* ch) { return ch->cavity.length_m; },
          [](Config&, ChannelSettings* ch, double v) { ch->cavity.length_m = v; }},
    Field{Section::kCavity, "waist_m", false,
          [](const Config&, const ChannelSettings* ch) { return ch->cavity.waist_m; },
          [](Config&, ChannelSettings* ch, double v) {
            ch->cavity.waist_m = v;
            ch->cavity.waist_defaulted = false;
          }},
    Field{Section::kCavity, "phase_rad", false,
          [](const Config&, const ChannelSettings* ch) { return ch->cavity.phase_rad; },
          [](Config&, ChannelSettings* ch, double v) { ch->cavity.phase_rad = v; }},

    Field{Section::kGas, "pressure_pa", true,
          [](const Config& c, const ChannelSettings*) { return c.gas.pressure_pa; },
          [](Config& c, ChannelSettings*, double v) { c.gas.pressure_pa = v; }},
    Field{Section::kGas, "gas_temperature_k", true,
          [](const Config& c, const ChannelSettings*) { return c.gas.gas_temperature_k; },
          [](Config& c, ChannelSettings*, double v) { c.gas.gas_temperature_k = v; }},
    Field{Section::kGas, "molecular_mass_amu", false,
          [](const Config& c, const ChannelSettings*) { return c.gas.molecular_mass_amu; },
          [](Config& c, ChannelSettings*, double v) { c.gas.molecular_mass_amu = v; }},
    Field{Section::kGas, "accommodation", true,
          [](const Config& c, const ChannelSettings*) { return c.gas.accommodation; },
          [](Config& c, ChannelSettings*, double v) { c.gas.accommodation = v; }},
    Field{Section::kGas, "bath_temperature_k", true,
          [](const Config& c, const ChannelSettings*) { return c.gas.bath_temperature_k; },
          [](Config& c, ChannelSettings*, double v) { c.gas.bath_temperature_k = v; }},

    Field{Section::kDetection, "omega_min_over_omega_m", false,
          [](const Config& c, const ChannelSettings*) { return c.detection.omega_min_over_omega_m; },
          [](Config& c, ChannelSettings*, double v) { c.detection.omega_min_over_omega_m = v; }},
    Field{Section::kDetection, "omega_max_over_omega_m", false,
          [](const Config& c, const ChannelSettings*) { return c.detection.omega_max_over_omega_m; },
          [](Config& c, ChannelSettings*, double v) { c.detection.omega_max_over_omega_m = v; }},
    Field{Section::kDetection, "n_omega", false,
          [](const Config& c, const ChannelSettings*) { return double(c.detection.n_omega); },
          [](Config& c, ChannelSettings*, double v) {
            if (v != std::floor(v) || v < 0 || v > 1e8) {
              throw ConfigError("detection.n_omega", "must be a non-negative integer");
            }
            c.detection.n_omega = static_cast<int>(v);
          }},
};

struct SectionName {
  Section kind;
  char label;  // 0 for non-channel sections
};

bool parse_section_name(const std::string& name, SectionName& out) {
  if (name == "ellipsoid") return out = {Section::kEllipsoid, 0}, true;
  if (name == "gas") return out = {Section::kGas, 0}, true;
  if (name == "detection") return out = {Section::kDetection, 0}, true;
  for (char label : {'A', 'B'}) {
    if (name == std::string("tweezer_") + label) return out = {Section::kTweezer, label}, true;
    if (name == std::string("cavity_") + label) return out = {Section::kCavity, label}, true;
  }
  return false;
}

std::string section_name(Section s, char label) {
  switch (s) {
    case Section::kEllipsoid: return "ellipsoid";
    case Section::kTweezer: return std::string("tweezer_") + label;
    case Section::kCavity: return std::string("cavity_") + label;
    case Section::kGas: return "gas";
    case Section::kDetection: return "detection";
  }
  return {};
}

double parse_number(const std::string& path, const std::string& raw) {
  const auto first = raw.find_first_not_of(" \t");
  const auto last = raw.find_last_not_of(" \t");
  if (first == std::string::npos) throw ConfigError(path, "empty value");
  const char* begin = raw.data() + first;
  const char* end = raw.data() + last + 1;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(path, "not a number: '" + raw + "'");
  }
  if (!std::isfinite(value)) throw ConfigError(path, "value must be finite");
  return value;
}

const Field* find_field(Section s, std::string_view key) {
  for (const Field& f : kFields) {
    if (f.section == s && key == f.key) return &f;
  }
  return nullptr;
}

}  // namespace

ChannelSettings* Config::channel(char label) {
  for (auto& ch : channels) {
    if (ch.label == label) return &ch;
  }
  return nullptr;
}

const ChannelSettings* Config::channel(char label) const {
  for (const auto& ch : channels) {
    if (ch.label == label) return &ch;
  }
  return nullptr;
}

Config parse_config(std::string_view text) {
  boost::property_tree::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", std::string("malformed configuration: ") + e.message() +
                              " (line " + std::to_string(e.line()) + ")");
  }

  Config config;
  bool seen_tweezer[2] = {false, false};
  bool seen_cavity[2] = {false, false};
  bool seen_detection_key[3] = {false, false, false};

  // Channels are created up front so that settings can be written in any
  // section order.
  for (const auto& [name, body] : tree) {
    SectionName sec;
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(name, "key outside of any section");
    }
    if (!parse_section_name(name, sec)) throw ConfigError(name, "unknown section");
    if (sec.kind == Section::kTweezer) seen_tweezer[sec.label - 'A'] = true;
    if (sec.kind == Section::kCavity) seen_cavity[sec.label - 'A'] = true;
  }
  for (char label : {'A', 'B'}) {
    const int i = label - 'A';
    if (seen_tweezer[i] != seen_cavity[i]) {
      throw ConfigError(std::string(seen_tweezer[i] ? "cavity_" : "tweezer_") + label,
                        "section required: every tweezer needs its cavity mode and vice versa");
    }
  }
  if (!seen_tweezer[0]) {
    throw ConfigError("tweezer_A", "at least one tweezer (channel A) is required");
  }
  for (char label : {'A', 'B'}) {
    if (!seen_tweezer[label - 'A']) continue;
    ChannelSettings ch;
    ch.label = label;
    ch.tweezer.detuning_over_omega_m = label == 'A' ? 1.0 : -1.0;
    config.channels.push_back(ch);
  }

  for (const auto& [name, body] : tree) {
    SectionName sec;
    parse_section_name(name, sec);
    ChannelSettings* ch = sec.label ? config.channel(sec.label) : nullptr;
    for (const auto& [key, node] : body) {
      const std::string path = name + "." + key;
      const Field* field = find_field(sec.kind, key);
      if (field == nullptr) throw ConfigError(path, "unknown key");
      field->set(config, ch, parse_number(path, node.data()));
      if (sec.kind == Section::kDetection) {
        seen_detection_key[field - find_field(Section::kDetection, "omega_min_over_omega_m")] = true;
      }
    }
    for (const Field& f : kFields) {
      if (f.section != sec.kind || !f.required) continue;
      if (body.find(f.key) == body.not_found()) {
        throw ConfigError(name + "." + f.key, "required key missing");
      }
    }
  }
  for (Section s : {Section::kEllipsoid, Section::kGas}) {
    if (tree.find(section_name(s, 0)) == tree.not_found()) {
      throw ConfigError(section_name(s, 0), "section required");
    }
  }

  // Two-mode spectra are conventionally shown over [0, 2] omega_m.
  if (config.two_channel()) {
    if (!seen_detection_key[0]) config.detection.omega_min_over_omega_m = 0.0;
    if (!seen_detection_key[1]) config.detection.omega_max_over_omega_m = 2.0;
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open configuration file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<ValidationIssue> validate(const Config& config) {
  std::vector<ValidationIssue> issues;
  auto require = [&](bool ok, std::string field, std::string message) {
    if (!ok) issues.push_back({std::move(field), std::move(message)});
  };

  const Ellipsoid& el = config.ellipsoid;
  require(el.a > 0.0, "ellipsoid.semi_axis_a_m", "must be > 0");
  require(el.b > 0.0, "ellipsoid.semi_axis_b_m", "must be > 0");
  require(el.c > 0.0, "ellipsoid.semi_axis_c_m", "must be > 0");
  require(el.a >= el.b, "ellipsoid.semi_axis_a_m", "must be >= semi_axis_b_m (prolate particle)");
  require(std::abs(el.b - el.c) <= 1e-12 * std::abs(el.b), "ellipsoid.semi_axis_c_m",
          "must equal semi_axis_b_m (spheroid)");
  require(el.density > 0.0, "ellipsoid.density_kg_m3", "must be > 0");
  require(el.relative_permittivity > 1.0, "ellipsoid.relative_permittivity", "must be > 1");

  require(!config.channels.empty(), "tweezer_A", "at least one tweezer is required");
  for (const ChannelSettings& ch : config.channels) {
    const std::string tw = section_name(Section::kTweezer, ch.label) + ".";
    const std::string cav = section_name(Section::kCavity, ch.label) + ".";
    require(ch.tweezer.wavelength_m > 0.0, tw + "wavelength_m", "must be > 0");
    require(ch.tweezer.power_w > 0.0, tw + "power_w", "must be > 0");
    require(ch.tweezer.waist_m > 0.0, tw + "waist_m", "must be > 0");
    require(ch.cavity.kappa_over_omega_m > 0.0, cav + "kappa_over_omega_m", "must be > 0");
    require(ch.cavity.length_m > 0.0, cav + "length_m", "must be > 0");
    require(ch.cavity.waist_m > 0.0, cav + "waist_m", "must be > 0");
  }

  const GasSettings& gas = config.gas;
  require(gas.pressure_pa >= 0.0, "gas.pressure_pa", "must be >= 0");
  require(gas.gas_temperature_k > 0.0, "gas.gas_temperature_k", "must be > 0");
  require(gas.molecular_mass_amu > 0.0, "gas.molecular_mass_amu", "must be > 0");
  require(gas.accommodation >= 0.0 && gas.accommodation <= 1.0, "gas.accommodation",
          "must lie in [0, 1]");
  require(gas.bath_temperature_k >= 0.0, "gas.bath_temperature_k", "must be >= 0");

  const DetectionSettings& det = config.detection;
  require(det.n_omega >= 2, "detection.n_omega", "must be >= 2");
  require(det.omega_min_over_omega_m < det.omega_max_over_omega_m,
          "detection.omega_max_over_omega_m", "must exceed omega_min_over_omega_m");
  return issues;
}

std::string canonical_text(const Config& config) {
  std::string out;
  auto emit_section = [&](Section s, const ChannelSettings* ch) {
    out += "[" + section_name(s, ch ? ch->label : 0) + "]\n";
    for (const Field& f : kFields) {
      if (f.section == s) out += fmt::format("{} = {:.17g}\n", f.key, f.get(config, ch));
    }
  };
  emit_section(Section::kEllipsoid, nullptr);
  for (const ChannelSettings& ch : config.channels) {
    emit_section(Section::kTweezer, &ch);
    emit_section(Section::kCavity, &ch);
  }
  emit_section(Section::kGas, nullptr);
  emit_section(Section::kDetection, nullptr);
  return out;
}

std::string fingerprint(const Config& config) {
  const std::string text = canonical_text(config);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < 8 && i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

namespace {

struct ResolvedPath {
  const Field* field = nullptr;
  char label = 0;
};

ResolvedPath resolve(const Config& config, std::string_view path) {
  const auto dot = path.find('.');
  if (dot == std::string_view::npos) {
    throw ConfigError(std::string(path), "parameter path must look like section.key");
  }
  SectionName sec;
  if (!parse_section_name(std::string(path.substr(0, dot)), sec)) {
    throw ConfigError(std::string(path), "unknown section in parameter path");
  }
  if (sec.label && config.channel(sec.label) == nullptr) {
    throw ConfigError(std::string(path), "channel not present in this configuration");
  }
  const Field* field = find_field(sec.kind, path.substr(dot + 1));
  if (field == nullptr) throw ConfigError(std::string(path), "unknown key in parameter path");
  return {field, sec.label};
}

}  // namespace

double get_field(const Config& config, std::string_view path) {
  const ResolvedPath r = resolve(config, path);
  return r.field->get(config, r.label ? config.channel(r.label) : nullptr);
}

void set_field(Config& config, std::string_view path, double value) {
  const ResolvedPath r = resolve(config, path);
  r.field->set(config, r.label ? config.channel(r.label) : nullptr, value);
}

std::vector<std::string> field_paths(const Config& config) {
  std::vector<std::string> out;
  auto add = [&](Section s, char label) {
    for (const Field& f : kFields) {
      if (f.section == s) out.push_back(section_name(s, label) + "." + f.key);
    }
  };
  add(Section::kEllipsoid, 0);
  for (const auto& ch : config.channels) {
    add(Section::kTweezer, ch.label);
    add(Section::kCavity, ch.label);
  }
  add(Section::kGas, 0);
  add(Section::kDetection, 0);
  return out;
}

}  // namespace levsq
