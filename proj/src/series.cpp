#include "dispcav/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dispcav/errors.hpp"
#include "dispcav/linalg.hpp"

namespace dispcav::series {

namespace {

// Symmetrized expansion matrix sqrt(g) O sqrt(g) / |n_d| with g = n_gamma:
// similar to diag(n_gamma)/n_d O, so it shares the spectral radius, and the
// power iteration gets a symmetric negative-definite matrix to chew on.
std::vector<double> symmetrized(const coupling::CouplingMatrix& o,
                                const std::vector<double>& n_gamma, double n_d) {
  const int n = o.dim;
  std::vector<double> root(n);
  for (int i = 0; i < n; ++i) root[i] = std::sqrt(n_gamma[i]);
  std::vector<double> s(static_cast<std::size_t>(n) * n, 0.0);
  const double scale = 1.0 / std::abs(n_d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s[static_cast<std::size_t>(i) * n + j] = root[i] * o(i, j) * root[j] * scale;
  return s;
}

void check_dimensions(const coupling::CouplingMatrix& o, const std::vector<double>& n_gamma) {
  if (static_cast<int>(n_gamma.size()) != o.dim)
    throw std::invalid_argument("series: decay vector length must match matrix dimension");
  for (std::size_t i = 0; i < n_gamma.size(); ++i)
    if (!(n_gamma[i] > 0.0))
      throw std::invalid_argument("series: nonpositive decay number at mode " + std::to_string(i));
}

}  // namespace

double decay_number(const DecayProfile& profile, int n) {
  if (n < 0 || n >= profile.n_max)
    throw std::invalid_argument("decay_number: mode order outside profile");
  double value = 0.0;
  switch (profile.kind) {
    case DecayKind::constant: value = profile.n_gamma0; break;
    case DecayKind::linear: value = profile.n_gamma0 / (1.0 + profile.beta * n); break;
    case DecayKind::quadratic:
      value = profile.n_gamma0 / (1.0 + profile.beta * n * n);
      break;
    case DecayKind::exponential: value = profile.n_gamma0 * std::exp(-profile.beta * n); break;
    case DecayKind::table:
      if (static_cast<int>(profile.table.size()) != profile.n_max)
        throw std::invalid_argument("decay_number: table length must equal n_max");
      value = profile.table[n];
      break;
  }
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument("decay_number: nonpositive decay number at mode " +
                                std::to_string(n));
  return value;
}

std::vector<double> decay_numbers(const DecayProfile& profile) {
  std::vector<double> out(profile.n_max);
  for (int n = 0; n < profile.n_max; ++n) out[n] = decay_number(profile, n);
  return out;
}

std::vector<double> per_mode_ratios(const std::vector<double>& n_gamma, double n_d) {
  if (n_d == 0.0) throw std::invalid_argument("per_mode_ratios: n_d must be nonzero");
  std::vector<double> out(n_gamma.size());
  for (std::size_t n = 0; n < n_gamma.size(); ++n) {
    const double diag = (n == 1) ? std::abs(coupling::element(1, 3))
                                 : std::abs(coupling::element(static_cast<int>(n),
                                                              static_cast<int>(n)));
    out[n] = std::abs(n_gamma[n] / n_d) * diag;
  }
  return out;
}

SeriesResult series_solve(const coupling::CouplingMatrix& o, const std::vector<double>& n_gamma,
                          double n_d, const ModeAmplitudes& input, int max_terms, double tol) {
  check_dimensions(o, n_gamma);
  if (n_d == 0.0) throw std::invalid_argument("series_solve: n_d must be nonzero");
  if (static_cast<int>(input.size()) != o.dim)
    throw std::invalid_argument("series_solve: input length must match matrix dimension");
  if (max_terms < 1) throw std::invalid_argument("series_solve: need at least one term");

  // The band-2 coupling walks support outward one rung per order; inputs with
  // weight on the top three modes would silently absorb truncation error.
  const double in_scale = linalg::max_norm(input.coeffs);
  for (int n = std::max(0, o.dim - 3); n < o.dim; ++n)
    if (std::abs(input.coeffs[n]) > 1e-12 * in_scale && in_scale > 0.0)
      throw std::invalid_argument(
          "series_solve: input must be supported on modes <= dim - 4 (mode " +
          std::to_string(n) + " is populated); enlarge the basis");

  SeriesResult res;
  res.diagnostics.per_mode_ratio = per_mode_ratios(n_gamma, n_d);
  const auto pit = linalg::power_iteration_symmetric(symmetrized(o, n_gamma, n_d), o.dim);
  res.diagnostics.spectral_radius_estimate = pit.value;

  // Divergence is declared on three consecutive growing term norms, gated on
  // the spectral-radius estimate: for a radius below one the terms must
  // eventually decay, and max-norm interference between eigencomponents can
  // produce short transient rises that the bare streak rule would misread.
  const bool divergence_possible = !pit.converged || pit.value >= 1.0;

  std::vector<cplx> term = input.coeffs;
  std::vector<cplx> sum = term;
  double prev_norm = linalg::max_norm(term);
  res.diagnostics.last_term_norm = prev_norm;
  res.diagnostics.terms_used = 1;
  if (prev_norm <= tol) res.diagnostics.converged = true;

  int growth_streak = 0;
  for (int j = 1; j < max_terms && !res.diagnostics.converged; ++j) {
    std::vector<cplx> ot = linalg::matvec_real(o.entries, o.dim, term);
    for (int i = 0; i < o.dim; ++i) term[i] = cplx(0.0, -n_gamma[i] / n_d) * ot[i];
    for (int i = 0; i < o.dim; ++i) sum[i] += term[i];
    const double norm = linalg::max_norm(term);
    res.diagnostics.terms_used = j + 1;
    res.diagnostics.last_term_norm = norm;
    if (norm > prev_norm) {
      if (++growth_streak == 3 && divergence_possible) {
        res.diagnostics.divergence_order = j - 2;
        break;
      }
    } else {
      growth_streak = 0;
    }
    if (norm <= tol) res.diagnostics.converged = true;
    prev_norm = norm;
  }
  res.amplitudes.coeffs = std::move(sum);
  return res;
}

std::optional<int> n_lim(double n_gamma, double n_d) {
  if (!(n_gamma > 0.0)) throw std::invalid_argument("n_lim: n_gamma must be positive");
  if (!(n_d > 0.0) || std::isinf(n_d)) return std::nullopt;
  return static_cast<int>(std::ceil((2.0 * n_d - n_gamma) / (2.0 * n_gamma)));
}

std::optional<int> first_violating_mode(const DecayProfile& profile, double n_d) {
  const std::vector<double> ratios = per_mode_ratios(decay_numbers(profile), n_d);
  for (std::size_t n = 0; n < ratios.size(); ++n)
    if (ratios[n] >= 1.0) return static_cast<int>(n);
  return std::nullopt;
}

SeriesDiagnostics convergence_check(const coupling::CouplingMatrix& o,
                                    const std::vector<double>& n_gamma, double n_d) {
  check_dimensions(o, n_gamma);
  if (n_d == 0.0) throw std::invalid_argument("convergence_check: n_d must be nonzero");
  SeriesDiagnostics diag;
  diag.per_mode_ratio = per_mode_ratios(n_gamma, n_d);
  const auto pit = linalg::power_iteration_symmetric(symmetrized(o, n_gamma, n_d), o.dim);
  if (!pit.converged)
    throw numerical_error("convergence_check: power iteration did not settle within " +
                          std::to_string(pit.iterations) + " steps");
  diag.spectral_radius_estimate = pit.value;
  diag.converged = true;
  return diag;
}

}  // namespace dispcav::series
