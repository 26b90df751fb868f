#include "spectra.hpp"

#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace levsq {

namespace {

constexpr cd kI{0.0, 1.0};

// Relative size of a transfer denominator, against the magnitude of its
// terms, below which the point is treated as a boundary singularity.
constexpr double kDenominatorFloor = 1e-13;

void check_denominator(cd z, double scale) {
  if (!(std::abs(z) > kDenominatorFloor * scale)) {
    throw PhysicsError("transfer denominator vanishes (system at the stability boundary)");
  }
}

StabilityReport gate_system(const SystemModel& sys, StabilityGate gate) {
  StabilityReport report = stability(sys);
  if (gate == StabilityGate::kRequireStable && !report.stable) {
    throw PhysicsError("system is unstable: max Re(eig) / omega_m = " +
                       std::to_string(report.max_real_eig / sys.omega_m) +
                       "; no steady state exists");
  }
  return report;
}

// Mechanical thermal occupation of each input in <xi_k+ xi_k> order, as
// seen by the intracavity occupation.
std::array<double, 6> occupation_weights(double n_bar) {
  return {n_bar, n_bar + 1.0, 0.0, 1.0, 0.0, 1.0};
}

double occupation_from_output(const TransferCoefficients& c, int own, double kappa,
                              double n_bar) {
  const auto m = occupation_weights(n_bar);
  double sum = 0.0;
  for (int k = 0; k < 6; ++k) {
    const cd r = (c.w[k] + (k == own ? 1.0 : 0.0)) / std::sqrt(kappa);
    sum += m[k] * std::norm(r);
  }
  return sum;
}

}  // namespace

std::array<double, 6> input_noise_weights(double n_bar) {
  return {n_bar + 1.0, n_bar, 1.0, 0.0, 1.0, 0.0};
}

double to_db(double s) { return -10.0 * std::log10(s); }

SingleModeSolver::SingleModeSolver(const SystemModel& sys, StabilityGate gate) : sys_(sys) {
  if (sys.mode_b.g != 0.0) {
    throw PhysicsError("single-mode spectra need a decoupled B channel (g_B = 0)");
  }
  stability_ = gate_system(sys, gate);
}

TransferCoefficients SingleModeSolver::coefficients(double omega) const {
  const UVWCoefficients c = uvw(sys_, omega);
  const double g = sys_.mode_a.g;
  const double g2 = g * g;
  const double sk = std::sqrt(sys_.mode_a.kappa);
  const double sg = std::sqrt(sys_.gamma_m);

  const cd du = c.u1 - c.u2;
  const cd coupled = g2 * du * (c.v1 - c.v2);
  const cd bare = c.u1 * c.u2 * c.v1 * c.v2;
  const cd z = coupled + bare;
  check_denominator(z, std::abs(coupled) + std::abs(bare));

  const cd m1 = kI * sg * g * c.u2 * c.v2 / z;
  const cd m2 = kI * sg * g * c.u1 * c.v2 / z;
  const cd m3 = sk * (g2 * du + c.u1 * c.u2 * c.v2) / z;
  const cd m4 = sk * g2 * du / z;

  TransferCoefficients out;
  out.w = {sk * m1, sk * m2, sk * m3 - 1.0, sk * m4, 0.0, 0.0};
  return out;
}

RawSpectra SingleModeSolver::raw_spectra(double omega) const {
  const TransferCoefficients pos = coefficients(omega);
  const TransferCoefficients neg = coefficients(-omega);
  const auto n = input_noise_weights(sys_.n_bar);
  RawSpectra s;
  for (int k = 0; k < 6; ++k) {
    const int kb = conjugate_index(k);
    s.s_a_adag += n[k] * std::norm(pos.w[k]);
    s.s_adag_a += n[k] * std::norm(neg.w[kb]);
    s.s_aa += n[k] * pos.w[k] * neg.w[kb];
  }
  return s;
}

double SingleModeSolver::at_angle(double omega, double theta) const {
  const RawSpectra s = raw_spectra(omega);
  return s.s_a_adag + s.s_adag_a + 2.0 * (std::exp(cd(0.0, -2.0 * theta)) * s.s_aa).real();
}

OptimalSqueezing SingleModeSolver::optimal(double omega) const {
  const RawSpectra s = raw_spectra(omega);
  const double mag = std::abs(s.s_aa);
  OptimalSqueezing out;
  out.s1 = s.s_a_adag + s.s_adag_a - 2.0 * mag;
  if (mag > 0.0) {
    double theta = 0.5 * std::arg(-s.s_aa);
    if (theta < 0.0) theta += constants::kPi;
    if (theta >= constants::kPi) theta -= constants::kPi;
    out.theta = theta;
  }
  return out;
}

double SingleModeSolver::occupation_density(double omega) const {
  return occupation_from_output(coefficients(omega), kA, sys_.mode_a.kappa, sys_.n_bar);
}

TwoModeSolver::TwoModeSolver(const SystemModel& sys, StabilityGate gate) : sys_(sys) {
  stability_ = gate_system(sys, gate);
}

std::pair<TransferCoefficients, TransferCoefficients> TwoModeSolver::coefficients(
    double omega) const {
  const UVWCoefficients c = uvw(sys_, omega);
  const double ga = sys_.mode_a.g;
  const double gb = sys_.mode_b.g;
  const double ka = sys_.mode_a.kappa;
  const double kb = sys_.mode_b.kappa;
  const double sg = std::sqrt(sys_.gamma_m);
  const double sab = std::sqrt(ka * kb);

  const cd du = c.u1 - c.u2;
  const cd dv = c.v1 - c.v2;
  const cd dw = c.w1 - c.w2;
  const cd w12 = c.w1 * c.w2;
  const cd v12 = c.v1 * c.v2;
  const cd term_b = du * gb * gb * v12 * dw;
  const cd term_a = du * ga * ga * dv * w12;
  const cd bare = c.u1 * c.u2 * v12 * w12;
  const cd z = term_b + term_a + bare;
  check_denominator(z, std::abs(term_a) + std::abs(term_b) + std::abs(bare));

  TransferCoefficients a;
  const cd pa = kI * std::sqrt(ka) * sg * ga / z;
  a.w[0] = pa * c.u2 * c.v2 * w12;
  a.w[1] = pa * c.u1 * c.v2 * w12;
  a.w[2] = ka * (du * (gb * gb * c.v2 * dw + ga * ga * w12) + c.u1 * c.u2 * c.v2 * w12) / z - 1.0;
  a.w[3] = ka * ga * ga * du * w12 / z;
  a.w[4] = sab * ga * gb * du * c.v2 * c.w2 / z;
  a.w[5] = sab * ga * gb * du * c.v2 * c.w1 / z;

  TransferCoefficients b;
  const cd pb = kI * std::sqrt(kb) * sg * gb / z;
  b.w[0] = pb * c.u2 * v12 * c.w2;
  b.w[1] = pb * c.u1 * v12 * c.w2;
  b.w[2] = sab * ga * gb * du * c.v2 * c.w2 / z;
  b.w[3] = sab * ga * gb * du * c.v1 * c.w2 / z;
  b.w[4] = kb * (du * (gb * gb * v12 + ga * ga * dv * c.w2) + c.u1 * c.u2 * v12 * c.w2) / z - 1.0;
  b.w[5] = kb * gb * gb * du * v12 / z;
  return {a, b};
}

TwoModeSpectrum TwoModeSolver::spectrum(double omega) const {
  const auto [a_pos, b_pos] = coefficients(omega);
  const auto [a_neg, b_neg] = coefficients(-omega);
  const auto n = input_noise_weights(sys_.n_bar);
  TwoModeSpectrum s;
  for (int k = 0; k < 6; ++k) {
    const int kb = conjugate_index(k);
    const cd a_plus = a_pos.w[k] + std::conj(a_neg.w[kb]);
    const cd b_plus = b_pos.w[k] + std::conj(b_neg.w[kb]);
    const cd a_minus = a_pos.w[k] - std::conj(a_neg.w[kb]);
    const cd b_minus = b_pos.w[k] - std::conj(b_neg.w[kb]);
    const cd x = 0.5 * (a_plus + b_plus);
    const cd y = (a_minus - b_minus) / (2.0 * kI);
    s.s_xx += n[k] * std::norm(x);
    s.s_yy += n[k] * std::norm(y);
  }
  s.s2 = s.s_xx + s.s_yy;
  return s;
}

std::pair<double, double> TwoModeSolver::occupation_density(double omega) const {
  const auto [a, b] = coefficients(omega);
  return {occupation_from_output(a, kA, sys_.mode_a.kappa, sys_.n_bar),
          occupation_from_output(b, kBm, sys_.mode_b.kappa, sys_.n_bar)};
}

std::vector<double> linear_grid(double start, double stop, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[i] = i == n - 1 ? stop : start + (stop - start) * i / (n - 1);
  }
  return grid;
}

SpectrumResult single_mode_spectrum(const SingleModeSolver& solver,
                                    const std::vector<double>& omega_grid) {
  SpectrumResult r;
  r.omega_grid = omega_grid;
  r.stable = solver.stability_report().stable;
  r.max_real_eig = solver.stability_report().max_real_eig;
  const double wm = solver.system().omega_m;
  for (double x : omega_grid) {
    const OptimalSqueezing o = solver.optimal(x * wm);
    r.values.push_back(o.s1);
    r.db.push_back(to_db(o.s1));
    r.theta_opt.push_back(o.theta);
  }
  return r;
}

SpectrumResult two_mode_spectrum(const TwoModeSolver& solver,
                                 const std::vector<double>& omega_grid) {
  SpectrumResult r;
  r.omega_grid = omega_grid;
  r.stable = solver.stability_report().stable;
  r.max_real_eig = solver.stability_report().max_real_eig;
  const double wm = solver.system().omega_m;
  for (double x : omega_grid) {
    const TwoModeSpectrum s = solver.spectrum(x * wm);
    r.s_xx.push_back(s.s_xx);
    r.s_yy.push_back(s.s_yy);
    r.values.push_back(s.s2);
    r.db.push_back(to_db(s.s2));
  }
  return r;
}

}  // namespace levsq
