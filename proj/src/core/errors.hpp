#pragma once

#include <stdexcept>
#include <string>

namespace levsq {

/// Invalid or incomplete configuration. `field()` names the offending
/// configuration path (e.g. "gas.pressure_pa") when one applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A physically meaningless request: no trap, no steady state, singular
/// response at the stability boundary, solver failure.
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levsq
