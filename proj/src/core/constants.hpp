#pragma once

#include <numbers>

// CODATA 2018 (SI exact where defined).
namespace levsq::constants {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kBoltzmann = 1.380649e-23;       // J/K
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

inline constexpr double kAirMolecularMassAmu = 28.97;

}  // namespace levsq::constants
