#pragma once
// Hermite-Gaussian spectral modes on the dimensionless relative frequency
// axis, with Gauss-Hermite quadrature for the overlap integrals.
#include <complex>
#include <span>
#include <vector>

#include "dispcav/parallel.hpp"

namespace dispcav::hg {

using cplx = std::complex<double>;

enum class GridKind { gauss_hermite, uniform };

// Quadrature grid over the dimensionless relative frequency.  `weights`
// follow the Gauss-Hermite convention: sum_i weights[i] * p(nodes[i])
// reproduces the integral of p(x) exp(-x^2) exactly for polynomials p of
// degree <= 2Q-1.  `modified_weights` carry the exp(x_i^2) factor folded back
// in (computed stably, not by exponentiating), so a function sampled directly
// at the nodes integrates as sum_i modified_weights[i] * f(nodes[i]) whenever
// f decays like the modes do.
struct FrequencyGrid {
  GridKind kind = GridKind::gauss_hermite;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> modified_weights;

  std::size_t size() const { return nodes.size(); }
};

struct SpectralField {
  FrequencyGrid grid;
  std::vector<cplx> values;
};

struct ModeAmplitudes {
  std::vector<cplx> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

// Q-point Gauss-Hermite rule.  Throws numerical_error if the node solver does
// not converge or Q is large enough that the raw weights underflow (both mean
// the requested Q is out of the supported range).
FrequencyGrid gauss_hermite_grid(int q);

// Equally spaced grid with trapezoid weights; accepted by the node-wise
// solvers and by synthesize, rejected by project.
FrequencyGrid uniform_grid(double lo, double hi, int count);

// max(64, 2 * n_max + 8): integrands built from the first n_max modes and up
// to two powers of x^2 are polynomials times the Gaussian weight, so this
// size integrates them exactly up to rounding.
int default_quadrature_size(int n_max);

void validate(const FrequencyGrid& grid);
void validate_finite(const SpectralField& field);

// Real mode profile: the normalized Hermite function
//   psi_n(x) = (sqrt(pi) 2^n n!)^(-1/2) H_n(x) exp(-x^2/2)
// evaluated with the normalized three-term recurrence (no factorials, stable
// through at least n = 256).
std::vector<double> mode_profile(int n, std::span<const double> nodes);
double mode_profile_at(int n, double x);

// Global per-mode phase i^n.  Kept separate from the real profile so parity
// and realness stay directly assertable; mode_eval folds it back in.
cplx mode_phase(int n);

// Complex mode samples i^n psi_n(x).
std::vector<cplx> mode_eval(int n, const FrequencyGrid& grid);

// Profiles for modes 0..n_max-1, row-major n_max x grid.size().
std::vector<double> mode_profile_matrix(int n_max, const FrequencyGrid& grid,
                                        Exec exec = Exec::parallel);

// Projection convention: coefficients are overlap integrals against the real
// profiles, coeffs[m] = integral field(x) psi_m(x) dx.  The i^m phase of the
// mode definition is a global unimodular factor per mode and is deliberately
// kept out of the projection kernel; with it folded in, project(synthesize(c))
// would pick up alternating signs instead of returning c, and mode-space
// solver comparisons would mix two phase conventions.  Requires a
// gauss_hermite grid with at least n_max + 4 points.
ModeAmplitudes project(const SpectralField& field, int n_max,
                       Exec exec = Exec::parallel);

// field(x) = sum_n coeffs[n] psi_n(x), summed in ascending n per node.
SpectralField synthesize(const ModeAmplitudes& coeffs, const FrequencyGrid& grid,
                         Exec exec = Exec::parallel);

}  // namespace dispcav::hg
