#pragma once

#include <span>
#include <string>
#include <vector>

namespace levsq {

struct Config;

/// Prolate spheroid (a >= b = c), SI units throughout.
struct Ellipsoid {
  double a = 0.0;  // semi-axes (m)
  double b = 0.0;
  double c = 0.0;
  double density = 0.0;  // kg/m^3
  double relative_permittivity = 0.0;

  double mass() const;
  double inertia() const;  // about a short axis
  double eccentricity() const;
};

struct DepolarizationFactors {
  double la = 0.0;
  double lb = 0.0;
  double lc = 0.0;
};

/// Static dipole polarizabilities along the semi-axes (C m^2/V).
struct Polarizability {
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  double alpha_c = 0.0;

  double anisotropy() const { return alpha_a - alpha_b; }
};

struct Tweezer {
  double wavelength = 0.0;  // m
  double power = 0.0;       // W, at focus
  double waist = 0.0;       // m

  double rayleigh_range() const;
  double optical_frequency() const;  // rad/s
};

struct CavityMode {
  double omega_c = 0.0;  // rad/s
  double kappa = 0.0;    // rad/s
  double length = 0.0;   // m
  double waist = 0.0;    // m
  double phase = 0.0;    // rad; 0 is the anti-node

  double mode_volume() const;
};

struct GasEnvironment {
  double pressure = 0.0;           // Pa
  double gas_temperature = 0.0;    // K
  double molecular_mass = 0.0;     // kg
  double accommodation = 0.0;      // [0, 1]
  double bath_temperature = 0.0;   // K, torsional bath
};

/// Coupling, decay and detuning of one cavity channel (all rad/s).
struct ChannelParams {
  double g = 0.0;
  double kappa = 0.0;
  double detuning = 0.0;
};

/// The reduced linear model consumed by dynamics and spectra. A
/// single-tweezer configuration is encoded with mode_b.g == 0.
struct SystemModel {
  double omega_m = 0.0;
  double gamma_m = 0.0;
  double n_bar = 0.0;
  double xi0 = 0.0;
  ChannelParams mode_a;
  ChannelParams mode_b;
};

DepolarizationFactors depolarization_factors(const Ellipsoid& ellipsoid);

Polarizability polarizability(const Ellipsoid& ellipsoid,
                              const DepolarizationFactors& factors);

/// Focal field amplitude E0 = sqrt(4P / (pi eps0 c w0^2)).
double tweezer_amplitude(const Tweezer& tweezer);

/// Torsional trap frequency from the summed squared focal amplitudes.
double torsional_frequency(std::span<const double> amplitudes,
                           const Polarizability& pol, double inertia);

double zero_point_fluctuation(double inertia, double omega_m);

double coherent_scattering_coupling(const Polarizability& pol, double amplitude,
                                    double xi0, const CavityMode& cavity);

double intrinsic_coupling(const Polarizability& pol, double xi0,
                          const CavityMode& cavity);

/// Free-molecular torsional damping rate (rad/s).
double gas_damping(const GasEnvironment& gas, const Ellipsoid& ellipsoid);

double thermal_occupation(double omega_m, double temperature);

// Shape functions of the torsional gas damping, exposed for testing. The
// specular term is returned premultiplied by e^4 since f3 alone cancels
// catastrophically near e = 0.
double damping_shape_f1(double e);
double damping_shape_f2(double e);
double damping_shape_e4f3(double e);

/// Per-channel intermediate values of the derivation chain.
struct ChannelDerivation {
  char label = 'A';
  Tweezer tweezer;
  CavityMode cavity;
  double amplitude = 0.0;  // V/m
  double g_scattering = 0.0;
  double g_intrinsic = 0.0;
  bool waist_defaulted = false;
};

struct Derivation {
  SystemModel system;
  double mass = 0.0;
  double inertia = 0.0;
  DepolarizationFactors depolarization;
  Polarizability polarizability;
  std::vector<ChannelDerivation> channels;
  std::vector<std::string> warnings;
};

/// Full derivation chain from a validated configuration. Throws ConfigError
/// naming the offending field, or PhysicsError when there is no trap.
Derivation derive(const Config& config);

SystemModel build_system(const Config& config);

}  // namespace levsq
