#pragma once
// Brute-force oracle: iterate the per-round-trip map to its fixed point and
// compare against the analytic steady state.
#include <vector>

#include "dispcav/cavity.hpp"
#include "dispcav/dispersion.hpp"
#include "dispcav/hg_basis.hpp"

namespace dispcav::roundtrip {

using hg::SpectralField;

// Per-trip spectral phase.  gvd_only applies the quadratic term alone;
// full_sellmeier evaluates k(omega) L from the fit and projects out the
// constant and linear-in-frequency parts by least squares over the grid
// (resonant carrier and co-moving frame, matching the analytic treatment).
struct PhaseModel {
  enum class Kind { gvd_only, full_sellmeier };

  Kind kind = Kind::gvd_only;
  double gvd_fs2_per_mm = 0.0;   // gvd_only
  material::SellmeierFit fit{};  // full_sellmeier
  double lambda0_um = 0.0;       // full_sellmeier
};

PhaseModel gvd_phase(double gvd_fs2_per_mm);
PhaseModel sellmeier_phase(const material::SellmeierFit& fit, double lambda0_um);

std::vector<double> phase_profile(const PhaseModel& model, const cavity::CavityParams& p,
                                  const hg::FrequencyGrid& grid);

// out = sqrt(R) field e^{i phi} + sqrt(T) input.  Grids must match.
SpectralField roundtrip_step(const SpectralField& field, const cavity::CavityParams& p,
                             const PhaseModel& model, const SpectralField& input,
                             Exec exec = Exec::parallel);

struct SteadyStateResult {
  SpectralField field;
  int iterations = 0;
};

// Iterates from a cold cavity (zero field; the fixed point is unique for
// sqrt(R) < 1, so the start only affects the transient).  Stops when the
// contraction-mapping error bound
//     max-node step change * sqrt(R) / (1 - sqrt(R))
// drops to tol times the peak injected amplitude max|sqrt(T) input|.  For
// sqrt(R) = 0.9 and tol = 1e-8 this takes ceil(ln(tol (1-sqrt(R))) / ln
// sqrt(R)) = 197 trips, independent of the input scale.  Throws
// numerical_error with the residual bound if max_iter is reached.
SteadyStateResult iterate_to_steady(const cavity::CavityParams& p, const PhaseModel& model,
                                    const SpectralField& input, double tol, int max_iter,
                                    std::vector<double>* delta_trace = nullptr);

struct Residual {
  double value = 0.0;
  bool reference_was_zero = false;  // value is then the absolute norm
};

// Relative L2 distance ||field - reference|| / ||reference||, fixed
// summation order.
Residual residual(const SpectralField& field, const SpectralField& reference);

// Relative L2 distance to `reference` after each of n_iters trips from a
// cold cavity.
std::vector<double> convergence_trace(const cavity::CavityParams& p, const PhaseModel& model,
                                      const SpectralField& input, const SpectralField& reference,
                                      int n_iters);

}  // namespace dispcav::roundtrip
