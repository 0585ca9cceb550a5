#pragma once
// Order-by-order perturbation theory for the steady-state mode-coupled
// equations, and its structural identity with the matrix power series.
#include <array>
#include <complex>
#include <vector>

#include "dispcav/cavity.hpp"
#include "dispcav/coupling.hpp"
#include "dispcav/hg_basis.hpp"
#include "dispcav/linalg.hpp"
#include "dispcav/series.hpp"

namespace dispcav::pt {

using cplx = std::complex<double>;
using hg::ModeAmplitudes;

// Steady-state inputs of the mode-resolved intracavity equations.  Drives are
// deterministic complex amplitudes per mode; noise statistics are out of
// scope.  The detuning is fixed at zero (resonant carrier), and the Fourier
// variable of the steady-state equations is an inert label here: with
// frequency-independent rates the equations decouple across it, so a single
// representative frequency is evaluated.
struct PTParams {
  std::vector<double> gamma;     // per-mode decay rates, 1/fs
  linalg::CMatrix coupling;      // C_nm, 1/fs
  std::vector<cplx> drive;       // f_n, amplitude/fs
  double gvd_parameter_fs = 0.0; // sqrt(R) k2 L / (2 T_R); bookkeeping only
  double detuning = 0.0;         // fixed 0
};

// C_nm = (gamma_n / 2) (N_gamma_n / N_D) O_nm, so 2 C_nm / gamma_n equals the
// series module's per-mode expansion parameter by construction.
linalg::CMatrix coupling_from_o(const std::vector<double>& gamma,
                                const std::vector<double>& n_gamma, double n_d,
                                const coupling::CouplingMatrix& o);

// Builds gamma (from the decay numbers and the round-trip time), C and the
// drive reproducing a given input amplitude vector: 2 f_n / gamma_n = a_n_in.
PTParams from_cavity(const cavity::CavityParams& p, const series::DecayProfile& profile,
                     const ModeAmplitudes& input, const coupling::CouplingMatrix& o);

// a_n^(0) = 2 f_n / gamma_n
ModeAmplitudes order0(const std::vector<cplx>& drive, const std::vector<double>& gamma);

// a_n^(1) = 2 f_n / gamma_n - i sum_m C_nm 4 f_m / gamma_n^2, as printed
// (gamma_n^2, not gamma_n gamma_m; the two agree for a mode-independent rate).
ModeAmplitudes order1(const std::vector<cplx>& drive, const std::vector<double>& gamma,
                      const linalg::CMatrix& c);

// a_n^(2) = 2 f_n/gamma_n - i sum_m (4 C_nm/gamma_n^2) f_m
//           - sum_{m,p} (8 C_nm C_mp/gamma_n^3) f_p, again as printed.
ModeAmplitudes order2(const std::vector<cplx>& drive, const std::vector<double>& gamma,
                      const linalg::CMatrix& c);

// The recursion a^(k) = (2/gamma_n)(f_n - i (C a^(k-1))_n) applied m times
// from a^(0).  At every order this equals the matrix-series truncation with
// diag(N_gamma_n), for any decay profile.
ModeAmplitudes iterate(const std::vector<cplx>& drive, const std::vector<double>& gamma,
                       const linalg::CMatrix& c, int m);

// Non-perturbative steady state: dense solve of (I + i diag(2/gamma) C) a = a^(0).
// Kept as an internal cross-check; the series itself is the object of study.
ModeAmplitudes steady_state_direct(const std::vector<cplx>& drive,
                                   const std::vector<double>& gamma,
                                   const linalg::CMatrix& c);

struct EquivalenceRow {
  int order = 0;
  double max_abs_diff = 0.0;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  // Printed low-order formulas vs the iterate at the same order.  Equal for a
  // mode-independent gamma; for mode-dependent rates the printed gamma_n
  // powers and the recursion disagree, and the difference is reported here
  // rather than reconciled.
  std::array<double, 3> printed_order_diff{0.0, 0.0, 0.0};
};

// Table of ||iterate(M) - series truncation(M)||_inf for M = 0..max_order,
// both pipelines computed from (drive, gamma, C) alone.
EquivalenceReport equivalence_report(const std::vector<cplx>& drive,
                                     const std::vector<double>& gamma,
                                     const linalg::CMatrix& c, int max_order);

}  // namespace dispcav::pt
