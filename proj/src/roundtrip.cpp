#include "dispcav/roundtrip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dispcav/errors.hpp"
#include "dispcav/linalg.hpp"

namespace dispcav::roundtrip {

using hg::cplx;

PhaseModel gvd_phase(double gvd_fs2_per_mm) {
  PhaseModel m;
  m.kind = PhaseModel::Kind::gvd_only;
  m.gvd_fs2_per_mm = gvd_fs2_per_mm;
  return m;
}

PhaseModel sellmeier_phase(const material::SellmeierFit& fit, double lambda0_um) {
  PhaseModel m;
  m.kind = PhaseModel::Kind::full_sellmeier;
  m.fit = fit;
  m.lambda0_um = lambda0_um;
  return m;
}

std::vector<double> phase_profile(const PhaseModel& model, const cavity::CavityParams& p,
                                  const hg::FrequencyGrid& grid) {
  cavity::validate(p);
  const std::size_t q = grid.size();
  std::vector<double> phi(q, 0.0);
  if (model.kind == PhaseModel::Kind::gvd_only) {
    const double half_k2_l = 0.5 * model.gvd_fs2_per_mm * p.length_mm;
    for (std::size_t i = 0; i < q; ++i) {
      const double w = grid.nodes[i] / p.pulse_duration_fs;
      phi[i] = half_k2_l * w * w;
    }
    return phi;
  }

  // Full dispersion relation k(omega) L, with the constant and linear-in-
  // frequency parts removed in the carrier frame: the resonance condition
  // nullifies k(omega0) L and the co-moving frame absorbs the group delay
  // k'(omega0) omega L.  Subtracting the analytic carrier value and slope
  // (rather than a grid fit) keeps the quadratic term aligned with the
  // gvd_only model, with no spurious constant detuning.
  const double omega0 = 2.0 * std::numbers::pi * material::kSpeedOfLightUmPerFs / model.lambda0_um;
  const double n0 = material::refractive_index(model.fit, model.lambda0_um);
  const double dn0 = material::index_derivatives(model.fit, model.lambda0_um).d1;
  const double k0 = n0 * omega0 / material::kSpeedOfLightMmPerFs;  // rad/mm
  // dk/domega = (n - lambda dn/dlambda) / c, the group slowness, fs/mm
  const double k0_slope = (n0 - model.lambda0_um * dn0) / material::kSpeedOfLightMmPerFs;
  for (std::size_t i = 0; i < q; ++i) {
    const double rel = grid.nodes[i] / p.pulse_duration_fs;  // rad/fs
    const double omega = omega0 + rel;
    if (!(omega > 0.0))
      throw std::invalid_argument("phase_profile: grid reaches nonpositive absolute frequency");
    const double lambda_um = 2.0 * std::numbers::pi * material::kSpeedOfLightUmPerFs / omega;
    const double k = material::refractive_index(model.fit, lambda_um) * omega /
                     material::kSpeedOfLightMmPerFs;  // rad/mm
    phi[i] = (k - k0 - k0_slope * rel) * p.length_mm;
  }
  return phi;
}

SpectralField roundtrip_step(const SpectralField& field, const cavity::CavityParams& p,
                             const PhaseModel& model, const SpectralField& input, Exec exec) {
  if (field.grid.nodes != input.grid.nodes)
    throw std::invalid_argument("roundtrip_step: field and input grids differ");
  hg::validate_finite(field);
  hg::validate_finite(input);
  const std::vector<double> phi = phase_profile(model, p, field.grid);
  SpectralField out;
  out.grid = field.grid;
  out.values.assign(field.values.size(), cplx(0.0, 0.0));
  par::for_each_index(field.values.size(), exec, [&](std::size_t i) {
    out.values[i] = p.sqrt_r * field.values[i] * std::polar(1.0, phi[i]) +
                    p.sqrt_t * input.values[i];
  });
  return out;
}

SteadyStateResult iterate_to_steady(const cavity::CavityParams& p, const PhaseModel& model,
                                    const SpectralField& input, double tol, int max_iter,
                                    std::vector<double>* delta_trace) {
  if (!(tol > 0.0)) throw std::invalid_argument("iterate_to_steady: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("iterate_to_steady: max_iter must be positive");
  cavity::validate(p);
  hg::validate_finite(input);

  const std::size_t q = input.grid.size();
  const std::vector<double> phi = phase_profile(model, p, input.grid);
  std::vector<cplx> multiplier(q);
  std::vector<cplx> injected(q);
  double scale = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    multiplier[i] = p.sqrt_r * std::polar(1.0, phi[i]);
    injected[i] = p.sqrt_t * input.values[i];
    scale = std::max(scale, std::abs(injected[i]));
  }

  // Contraction-mapping stop rule: the distance to the fixed point is bounded
  // by (step change) * sqrt(R)/(1-sqrt(R)); converged once that bound falls
  // to tol * scale.  Input-scale invariant, and for a cold start the count is
  // ceil(ln(tol (1-sqrt(R))) / ln sqrt(R)).
  const double bound_factor = p.sqrt_r / (1.0 - p.sqrt_r);

  SteadyStateResult res;
  res.field.grid = input.grid;
  res.field.values.assign(q, cplx(0.0, 0.0));
  std::vector<double> delta(q, 0.0);
  if (delta_trace) delta_trace->clear();

  for (int it = 1; it <= max_iter; ++it) {
    par::for_each_index(q, Exec::parallel, [&](std::size_t i) {
      const cplx next = multiplier[i] * res.field.values[i] + injected[i];
      delta[i] = std::abs(next - res.field.values[i]);
      res.field.values[i] = next;
    });
    double max_delta = 0.0;
    for (std::size_t i = 0; i < q; ++i) max_delta = std::max(max_delta, delta[i]);
    if (delta_trace) delta_trace->push_back(max_delta);
    res.iterations = it;
    if (max_delta * bound_factor <= tol * scale) return res;
  }
  const double last_delta = *std::max_element(delta.begin(), delta.end());
  throw numerical_error("iterate_to_steady: no convergence after " + std::to_string(max_iter) +
                        " iterations (residual bound " +
                        std::to_string(last_delta * bound_factor) + ", target " +
                        std::to_string(tol * scale) + ")");
}

Residual residual(const SpectralField& field, const SpectralField& reference) {
  if (field.grid.nodes != reference.grid.nodes)
    throw std::invalid_argument("residual: grids differ");
  Residual r;
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    diff += std::norm(field.values[i] - reference.values[i]);
    ref += std::norm(reference.values[i]);
  }
  if (ref == 0.0) {
    r.reference_was_zero = true;
    r.value = std::sqrt(diff);
  } else {
    r.value = std::sqrt(diff / ref);
  }
  return r;
}

std::vector<double> convergence_trace(const cavity::CavityParams& p, const PhaseModel& model,
                                      const SpectralField& input, const SpectralField& reference,
                                      int n_iters) {
  if (n_iters < 1) throw std::invalid_argument("convergence_trace: need at least one iteration");
  SpectralField state;
  state.grid = input.grid;
  state.values.assign(input.grid.size(), cplx(0.0, 0.0));
  std::vector<double> out;
  out.reserve(n_iters);
  for (int it = 0; it < n_iters; ++it) {
    state = roundtrip_step(state, p, model, input);
    out.push_back(residual(state, reference).value);
  }
  return out;
}

}  // namespace dispcav::roundtrip
