#pragma once
// Steady-state intracavity spectrum of the synchronously pumped dispersive
// ring cavity, at three fidelity levels: full exponential round-trip phase,
// linearized quadratic-phase exponent, and the truncated power series of the
// linearized solution.
#include <complex>

#include "dispcav/hg_basis.hpp"
#include "dispcav/parallel.hpp"

namespace dispcav::cavity {

using cplx = std::complex<double>;
using hg::ModeAmplitudes;
using hg::SpectralField;

// Mirror and medium parameters.  The carrier is assumed resonant: the
// constant round-trip phase is an integer multiple of 2 pi and is dropped,
// and so is the group-delay term (it does not alter the pulse shape).  The
// solvers work on the dimensionless frequency x = omega * tau_s; dimensional
// inputs are converted at this boundary.
struct CavityParams {
  double sqrt_r = 0.0;             // mirror amplitude reflectivity, in (0,1)
  double sqrt_t = 0.0;             // amplitude transmissivity, sqrt(1 - R)
  double length_mm = 0.0;          // cavity (medium) length
  double round_trip_fs = 0.0;      // round-trip time
  double gvd_fs2_per_mm = 0.0;     // quadratic dispersion coefficient
  double pulse_duration_fs = 0.0;  // input pulse duration tau_s

  bool operator==(const CavityParams&) const = default;
};

// Builds params with sqrt_t derived from a lossless input-output mirror.
CavityParams make_params(double sqrt_r, double length_mm, double round_trip_fs,
                         double gvd_fs2_per_mm, double pulse_duration_fs);
void validate(const CavityParams& p);

struct DimensionlessNumbers {
  double n_gamma = 0.0;  // round trips to 1/e intensity decay
  double n_d = 0.0;      // round trips to sqrt(2) dispersive broadening; +inf at zero GVD
  double ratio = 0.0;    // n_gamma / n_d
};

// sqrt(R) / (2 (1 - sqrt(R)))
double n_gamma(double sqrt_r);

// tau_s^2 / (k2 L); +/-infinity when k2 L == 0 (dispersionless regime).
// Negative for anomalous dispersion: callers needing a magnitude take one.
double n_d(double pulse_duration_fs, double gvd_fs2_per_mm, double length_mm);

DimensionlessNumbers dimensionless(const CavityParams& p);

enum class Fidelity { full, linearized, maclaurin };

// out(x) = sqrt(T) in(x) / (1 - sqrt(R) exp(i (k2/2) (x/tau_s)^2 L)).
// Throws numerical_error naming the node if any denominator magnitude drops
// below 1e-15 (unphysical parameters, not a delicate-but-valid case).
SpectralField steady_state_full(const CavityParams& p, const SpectralField& input,
                                Exec exec = Exec::parallel);

// Same with the exponential replaced by 1 + i (k2/2) (x/tau_s)^2 L.
SpectralField steady_state_linearized(const CavityParams& p, const SpectralField& input,
                                      Exec exec = Exec::parallel);

struct MaclaurinDiagnostics {
  double max_term_abs = 0.0;    // largest single-term magnitude over all nodes
  double max_node_ratio = 0.0;  // max over nodes of |n_gamma/n_d| x^2
};

// out(x) = sum_{k<terms} (i (n_gamma/n_d) x^2)^k  sqrt(T)/(1-sqrt(R)) in(x).
// Divergence at large |x| is the caller's concern; diagnostics carry the
// largest term magnitude seen.
SpectralField steady_state_maclaurin(const CavityParams& p, const SpectralField& input,
                                     int terms, MaclaurinDiagnostics* diag = nullptr,
                                     Exec exec = Exec::parallel);

// project(steady_state_<level>(p, input), n_max).  The sqrt(T)/(1-sqrt(R))
// prefactor lives in the solution itself, matching the convention in which
// the input amplitude vector already carries it.
ModeAmplitudes cavity_mode_amplitudes(const CavityParams& p, const SpectralField& input,
                                      int n_max, Fidelity level, int maclaurin_terms = 16);

}  // namespace dispcav::cavity
