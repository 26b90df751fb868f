#pragma once

#include <cmath>
#include <random>

#include "dynamics.hpp"
#include "model.hpp"

namespace levsq::testing {

struct SystemRanges {
  double omega_m = 1.0e6;
  double gamma_min = 1e-4;  // all rates in units of omega_m
  double gamma_max = 1e-1;
  double kappa_min = 0.1;
  double kappa_max = 5.0;
  double g_max = 0.6;
  double n_bar_max = 50.0;
  double min_decay = 0.0;  // reject systems whose slowest mode decays slower
};

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline double random_detuning(std::mt19937_64& rng) {
  const double mag = uniform(rng, 0.2, 2.0);
  return uniform(rng, 0.0, 1.0) < 0.5 ? mag : -mag;
}

/// Random stable system; two_mode selects a coupled B channel.
inline SystemModel random_stable_system(std::mt19937_64& rng, bool two_mode,
                                        const SystemRanges& r = {}) {
  const double w = r.omega_m;
  for (;;) {
    SystemModel s;
    s.omega_m = w;
    s.gamma_m = log_uniform(rng, r.gamma_min, r.gamma_max) * w;
    s.n_bar = uniform(rng, 0.0, r.n_bar_max);
    s.mode_a = {uniform(rng, 0.0, r.g_max) * w, uniform(rng, r.kappa_min, r.kappa_max) * w,
                random_detuning(rng) * w};
    s.mode_b = {two_mode ? uniform(rng, 0.0, r.g_max) * w : 0.0,
                uniform(rng, r.kappa_min, r.kappa_max) * w, random_detuning(rng) * w};
    const StabilityReport st = stability(s);
    if (st.stable && -st.max_real_eig >= r.min_decay * w) return s;
  }
}

}  // namespace levsq::testing
