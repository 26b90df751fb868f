#include "csv.hpp"

#include <chrono>
#include <cmath>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "config.hpp"

namespace levsq {

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.16e}", x);
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out + "\n";
}

std::string csv_header(const CsvMetadata& meta) {
  std::string out = "# levsq " + meta.kind + "\n";
  out += "# config_fingerprint: " + meta.fingerprint + "\n";
  if (meta.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    out += fmt::format("# generated_utc: {:%Y-%m-%dT%H:%M:%SZ}\n", fmt::gmtime(now));
  }
  if (meta.waist_calibrated) {
    out += fmt::format("# cavity_waist: calibrated default {:g} m (not a published value)\n",
                       kDefaultCavityWaist);
  }
  for (const auto& note : meta.notes) out += "# " + note + "\n";
  return out;
}

}  // namespace levsq
