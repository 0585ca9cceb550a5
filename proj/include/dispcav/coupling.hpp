#pragma once
// Dimensionless dispersive coupling matrix between Hermite-Gaussian modes:
// band structure n, n +/- 2 with diagonal -(n + 1/2).
#include <vector>

#include "dispcav/hg_basis.hpp"

namespace dispcav::coupling {

struct CouplingMatrix {
  int dim = 0;
  std::vector<double> entries;  // row-major dim x dim

  double operator()(int n, int m) const {
    return entries[static_cast<std::size_t>(n) * dim + m];
  }
};

// -(n+1/2) delta_{nm} - (sqrt((n-1)n)/2) delta_{n,m+2}
//                     - (sqrt((n+1)(n+2))/2) delta_{n,m-2}
double element(int n, int m);

CouplingMatrix build(int n_max);

// (A B) with fixed summation order; both dims must agree.
CouplingMatrix square(const CouplingMatrix& m);

// Quadrature cross-check of the matrix elements, integrating
// psi_n(x) x^2 psi_m(x) over the phase-stripped real profiles.  With the i^n
// mode phases folded in, the diagonal keeps its sign while the off-diagonal
// band flips relative to the phase-free integral, so no single factor would
// relate analytic and phased-quadrature values; on the real profiles the
// relation is one global sign, which quadrature_sign_relation measures.
double element_by_quadrature(int n, int m, int q_points);
double element_by_quadrature(int n, int m, const hg::FrequencyGrid& grid);

// integral psi_q(x) x^4 psi_p(x) dx by quadrature.  Equals the (q, p) entry
// of the squared coupling matrix: the global sign squares away.
double quartic_overlap(int q_mode, int p_mode, int q_points);
double quartic_overlap(int q_mode, int p_mode, const hg::FrequencyGrid& grid);

// The uniform sign factor s with element(n,m) == s * quadrature(n,m) across
// all nonzero entries n,m < n_max; throws numerical_error if the relation is
// not uniform to 1e-9.
int quadrature_sign_relation(int n_max, int q_points);

}  // namespace dispcav::coupling
