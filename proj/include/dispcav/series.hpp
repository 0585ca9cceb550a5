#pragma once
// Intracavity mode amplitudes by the matrix power series
//   sum_M (-i diag(N_gamma)/N_D O)^M a_in
// with per-mode decay numbers, convergence diagnostics and the critical mode
// order of the per-mode validity condition.
#include <complex>
#include <optional>
#include <vector>

#include "dispcav/coupling.hpp"
#include "dispcav/hg_basis.hpp"

namespace dispcav::series {

using cplx = std::complex<double>;
using hg::ModeAmplitudes;

enum class DecayKind { constant, linear, quadratic, exponential, table };

// Per-mode round-trip decay numbers N_gamma_n as a function of mode order
// (inversely proportional to the per-mode decay rate).
struct DecayProfile {
  DecayKind kind = DecayKind::constant;
  double n_gamma0 = 1.0;
  double beta = 0.0;
  std::vector<double> table;  // table kind: explicit values, length n_max
  int n_max = 1;

  bool operator==(const DecayProfile&) const = default;
};

// constant: N0; linear: N0/(1+beta n); quadratic: N0/(1+beta n^2);
// exponential: N0 exp(-beta n); table: as given.  Nonpositive results are
// rejected with the offending mode order.
double decay_number(const DecayProfile& profile, int n);
std::vector<double> decay_numbers(const DecayProfile& profile);

struct SeriesDiagnostics {
  int terms_used = 0;
  double last_term_norm = 0.0;
  bool converged = false;
  // First order of a sustained (three consecutive) growth of term norms;
  // -1 when no divergence was declared.
  int divergence_order = -1;
  double spectral_radius_estimate = 0.0;
  std::vector<double> per_mode_ratio;
};

struct SeriesResult {
  ModeAmplitudes amplitudes;
  SeriesDiagnostics diagnostics;
};

// Accumulates terms t_0 = a_in, t_{j+1} = (-i/n_d) diag(n_gamma) O t_j until
// the added term's max-norm falls below tol or max_terms terms were added.
// Divergence is declared after three consecutive growing term norms, provided
// the spectral-radius estimate allows divergence at all (below radius one the
// terms must eventually decay, and transient max-norm rises from
// eigencomponent interference are not divergence).  The partial sum is still
// returned, with converged == false.
//
// The input must be supported on modes <= dim-4 (relative tolerance 1e-12):
// the band-2 coupling walks support outward one rung per order, so the top
// modes of a truncated ladder lose their up-coupling and would silently
// absorb boundary error.
SeriesResult series_solve(const coupling::CouplingMatrix& o,
                          const std::vector<double>& n_gamma, double n_d,
                          const ModeAmplitudes& input, int max_terms, double tol);

// Smallest mode order violating the constant-profile condition
// |N_gamma/N_D| (n + 1/2) >= 1, by the closed ceiling form
// ceil((2 N_D - N_gamma) / (2 N_gamma)).  nullopt when n_d <= 0: no finite
// threshold exists there.
std::optional<int> n_lim(double n_gamma, double n_d);

// Smallest violating order under an arbitrary profile, scanning the
// per-mode ratios (with the n = 1 substitution); nullopt if none below
// profile.n_max.  The ceiling formula above is the constant-profile special
// case of this scan.
std::optional<int> first_violating_mode(const DecayProfile& profile, double n_d);

// |n_gamma[n]/n_d O_nn|, except n = 1 where the nearest off-diagonal |O_13|
// replaces the diagonal (the diagonal does not dominate that row).
std::vector<double> per_mode_ratios(const std::vector<double>& n_gamma, double n_d);

// Ratios plus a power-iteration estimate of the spectral radius of
// diag(n_gamma)/n_d O.  Throws numerical_error if the power iteration fails
// to settle within 10k steps.
SeriesDiagnostics convergence_check(const coupling::CouplingMatrix& o,
                                    const std::vector<double>& n_gamma, double n_d);

}  // namespace dispcav::series
