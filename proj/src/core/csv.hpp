#pragma once

#include <string>
#include <vector>

namespace levsq {

/// 17 significant digits in scientific notation.
std::string csv_number(double x);

/// RFC-4180 quoting when the field needs it.
std::string csv_text(const std::string& s);

std::string csv_row(const std::vector<std::string>& fields);

struct CsvMetadata {
  std::string kind;
  std::string fingerprint;
  bool waist_calibrated = false;
  bool timestamp = true;
  std::vector<std::string> notes;
};

/// Comment lines ("# ...") that open every CSV.
std::string csv_header(const CsvMetadata& meta);

}  // namespace levsq
