#include "dispcav/cavity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dispcav/errors.hpp"

namespace dispcav::cavity {

namespace {

constexpr double kDenominatorFloor = 1e-15;

// Runs the node-wise kernel and rejects near-singular denominators after the
// fact, naming the first offending node.  Throwing from inside the parallel
// region would terminate, so magnitudes are collected and scanned serially.
template <typename Kernel>
SpectralField solve_nodewise(const CavityParams& p, const SpectralField& input, Exec exec,
                             Kernel&& kernel) {
  validate(p);
  hg::validate_finite(input);
  SpectralField out;
  out.grid = input.grid;
  out.values.assign(input.values.size(), cplx(0.0, 0.0));
  std::vector<double> den_mag(input.values.size(), 1.0);
  par::for_each_index(input.values.size(), exec, [&](std::size_t i) {
    const cplx den = kernel(input.grid.nodes[i]);
    den_mag[i] = std::abs(den);
    out.values[i] = p.sqrt_t * input.values[i] / den;
  });
  for (std::size_t i = 0; i < den_mag.size(); ++i)
    if (den_mag[i] < kDenominatorFloor)
      throw numerical_error("steady state: near-singular denominator at node " +
                            std::to_string(i) + " (|den| = " + std::to_string(den_mag[i]) + ")");
  return out;
}

}  // namespace

CavityParams make_params(double sqrt_r, double length_mm, double round_trip_fs,
                         double gvd_fs2_per_mm, double pulse_duration_fs) {
  CavityParams p;
  p.sqrt_r = sqrt_r;
  p.sqrt_t = std::sqrt(std::max(0.0, 1.0 - sqrt_r * sqrt_r));
  p.length_mm = length_mm;
  p.round_trip_fs = round_trip_fs;
  p.gvd_fs2_per_mm = gvd_fs2_per_mm;
  p.pulse_duration_fs = pulse_duration_fs;
  validate(p);
  return p;
}

void validate(const CavityParams& p) {
  if (!(p.sqrt_r > 0.0 && p.sqrt_r < 1.0))
    throw std::invalid_argument("CavityParams: sqrt_r must lie in (0,1), got " +
                                std::to_string(p.sqrt_r));
  const double closure = p.sqrt_r * p.sqrt_r + p.sqrt_t * p.sqrt_t;
  if (std::abs(closure - 1.0) > 1e-12)
    throw std::invalid_argument("CavityParams: lossless mirror requires R + T = 1, got " +
                                std::to_string(closure));
  if (!(p.length_mm > 0.0)) throw std::invalid_argument("CavityParams: length must be positive");
  if (!(p.round_trip_fs > 0.0))
    throw std::invalid_argument("CavityParams: round-trip time must be positive");
  if (!(p.pulse_duration_fs > 0.0))
    throw std::invalid_argument("CavityParams: pulse duration must be positive");
}

double n_gamma(double sqrt_r) {
  if (!(sqrt_r > 0.0 && sqrt_r < 1.0))
    throw std::invalid_argument("n_gamma: sqrt_r must lie in (0,1), got " + std::to_string(sqrt_r));
  return sqrt_r / (2.0 * (1.0 - sqrt_r));
}

double n_d(double pulse_duration_fs, double gvd_fs2_per_mm, double length_mm) {
  const double denom = gvd_fs2_per_mm * length_mm;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return pulse_duration_fs * pulse_duration_fs / denom;
}

DimensionlessNumbers dimensionless(const CavityParams& p) {
  DimensionlessNumbers d;
  d.n_gamma = n_gamma(p.sqrt_r);
  d.n_d = n_d(p.pulse_duration_fs, p.gvd_fs2_per_mm, p.length_mm);
  d.ratio = std::isinf(d.n_d) ? 0.0 : d.n_gamma / d.n_d;
  return d;
}

SpectralField steady_state_full(const CavityParams& p, const SpectralField& input, Exec exec) {
  const double tau = p.pulse_duration_fs;
  const double half_k2_l = 0.5 * p.gvd_fs2_per_mm * p.length_mm;
  const double sqrt_r = p.sqrt_r;
  return solve_nodewise(p, input, exec, [=](double x) {
    const double w = x / tau;
    const double phi = half_k2_l * w * w;
    return cplx(1.0, 0.0) - sqrt_r * std::polar(1.0, phi);
  });
}

SpectralField steady_state_linearized(const CavityParams& p, const SpectralField& input,
                                      Exec exec) {
  const double tau = p.pulse_duration_fs;
  const double half_k2_l = 0.5 * p.gvd_fs2_per_mm * p.length_mm;
  const double sqrt_r = p.sqrt_r;
  return solve_nodewise(p, input, exec, [=](double x) {
    const double w = x / tau;
    const double phi = half_k2_l * w * w;
    return cplx(1.0 - sqrt_r, -sqrt_r * phi);
  });
}

SpectralField steady_state_maclaurin(const CavityParams& p, const SpectralField& input, int terms,
                                     MaclaurinDiagnostics* diag, Exec exec) {
  if (terms < 1) throw std::invalid_argument("steady_state_maclaurin: need at least one term");
  validate(p);
  hg::validate_finite(input);
  const DimensionlessNumbers dims = dimensionless(p);
  const double pref = p.sqrt_t / (1.0 - p.sqrt_r);

  SpectralField out;
  out.grid = input.grid;
  out.values.assign(input.values.size(), cplx(0.0, 0.0));
  std::vector<double> node_max_term(input.values.size(), 0.0);
  std::vector<double> node_ratio(input.values.size(), 0.0);
  par::for_each_index(input.values.size(), exec, [&](std::size_t i) {
    const double x = input.grid.nodes[i];
    const cplx ratio(0.0, dims.ratio * x * x);
    const cplx base = pref * input.values[i];
    cplx term = base;
    cplx sum = term;
    double max_term = std::abs(term);
    for (int k = 1; k < terms; ++k) {
      term *= ratio;
      sum += term;
      max_term = std::max(max_term, std::abs(term));
    }
    out.values[i] = sum;
    node_max_term[i] = max_term;
    node_ratio[i] = std::abs(ratio);
  });
  if (diag) {
    diag->max_term_abs = 0.0;
    diag->max_node_ratio = 0.0;
    for (std::size_t i = 0; i < node_max_term.size(); ++i) {
      diag->max_term_abs = std::max(diag->max_term_abs, node_max_term[i]);
      diag->max_node_ratio = std::max(diag->max_node_ratio, node_ratio[i]);
    }
  }
  return out;
}

ModeAmplitudes cavity_mode_amplitudes(const CavityParams& p, const SpectralField& input,
                                      int n_max, Fidelity level, int maclaurin_terms) {
  SpectralField solved;
  switch (level) {
    case Fidelity::full: solved = steady_state_full(p, input); break;
    case Fidelity::linearized: solved = steady_state_linearized(p, input); break;
    case Fidelity::maclaurin:
      solved = steady_state_maclaurin(p, input, maclaurin_terms);
      break;
  }
  return hg::project(solved, n_max);
}

}  // namespace dispcav::cavity
