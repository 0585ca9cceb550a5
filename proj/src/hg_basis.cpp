#include "dispcav/hg_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dispcav/errors.hpp"

namespace dispcav::hg {

namespace {

double inv_quartic_root_pi() {
  static const double v = std::pow(std::numbers::pi, -0.25);
  return v;
}

// Normalized Hermite-function pair (psi_{q-1}(x), psi_q(x)) by the
// three-term recurrence psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}.
std::pair<double, double> hermite_pair(int q, double x) {
  double prev = 0.0;
  double cur = inv_quartic_root_pi() * std::exp(-0.5 * x * x);
  for (int k = 0; k < q; ++k) {
    const double next =
        std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL algorithm.
// d: diagonal, e: subdiagonal (size n-1).  Eigenvectors are not needed: the
// quadrature weights come from the Hermite-function values instead.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    for (;;) {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (iter++ == 50)
        throw numerical_error("gauss_hermite_grid: tridiagonal eigenvalue iteration stalled");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

int default_quadrature_size(int n_max) { return std::max(64, 2 * n_max + 8); }

FrequencyGrid gauss_hermite_grid(int q) {
  if (q < 2) throw std::invalid_argument("gauss_hermite_grid: need at least 2 nodes");

  // Jacobi matrix of the Hermite recurrence: zero diagonal, off-diagonal sqrt(k/2).
  std::vector<double> diag(q, 0.0), off(q - 1);
  for (int k = 1; k < q; ++k) off[k - 1] = std::sqrt(0.5 * k);
  std::vector<double> nodes = tridiagonal_eigenvalues(diag, off);

  // Polish with Newton steps on psi_q and enforce exact +/- symmetry.
  for (int i = 0; i < q / 2; ++i) {
    double x = 0.5 * (nodes[i] - nodes[q - 1 - i]);
    bool settled = false;
    for (int step = 0; step < 12; ++step) {
      const auto [pm1, pq] = hermite_pair(q, x);
      const double dpq = std::sqrt(2.0 * q) * pm1 - x * pq;
      const double dx = pq / dpq;
      x -= dx;
      if (std::abs(dx) <= 1e-14 * (1.0 + std::abs(x))) {
        settled = true;
        break;
      }
    }
    if (!settled)
      throw numerical_error("gauss_hermite_grid: node solver did not converge for Q=" +
                            std::to_string(q) + " (Q too large for the root-finder tolerance)");
    nodes[i] = x;
    nodes[q - 1 - i] = -x;
  }
  if (q % 2 == 1) nodes[q / 2] = 0.0;

  FrequencyGrid grid;
  grid.kind = GridKind::gauss_hermite;
  grid.nodes = std::move(nodes);
  grid.weights.resize(q);
  grid.modified_weights.resize(q);
  for (int i = 0; i < q; ++i) {
    const double x = grid.nodes[i];
    const auto [pm1, pq] = hermite_pair(q, x);
    (void)pq;
    // w_i exp(x_i^2) = 1 / (Q psi_{Q-1}(x_i)^2): O(1) everywhere, no overflow.
    grid.modified_weights[i] = 1.0 / (q * pm1 * pm1);
    grid.weights[i] = grid.modified_weights[i] * std::exp(-x * x);
  }
  validate(grid);
  return grid;
}

FrequencyGrid uniform_grid(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("uniform_grid: need at least 2 nodes");
  if (!(hi > lo)) throw std::invalid_argument("uniform_grid: hi must exceed lo");
  FrequencyGrid grid;
  grid.kind = GridKind::uniform;
  grid.nodes.resize(count);
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid.nodes[i] = lo + h * i;
  grid.weights.assign(count, h);
  grid.weights.front() = 0.5 * h;
  grid.weights.back() = 0.5 * h;
  grid.modified_weights = grid.weights;
  return grid;
}

void validate(const FrequencyGrid& grid) {
  const std::size_t n = grid.nodes.size();
  if (grid.weights.size() != n || grid.modified_weights.size() != n)
    throw std::invalid_argument("FrequencyGrid: node/weight size mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(grid.nodes[i] < grid.nodes[i + 1]))
      throw std::invalid_argument("FrequencyGrid: nodes not strictly increasing");
  if (grid.kind == GridKind::gauss_hermite) {
    for (std::size_t i = 0; i < n; ++i)
      if (!(grid.weights[i] > 0.0) || !std::isfinite(grid.weights[i]))
        throw numerical_error(
            "FrequencyGrid: nonpositive quadrature weight at node " + std::to_string(i) +
            " (Q too large: the Gaussian weight factor underflows)");
  }
}

void validate_finite(const SpectralField& field) {
  if (field.values.size() != field.grid.size())
    throw std::invalid_argument("SpectralField: value/grid size mismatch");
  for (std::size_t i = 0; i < field.values.size(); ++i)
    if (!std::isfinite(field.values[i].real()) || !std::isfinite(field.values[i].imag()))
      throw std::invalid_argument("SpectralField: non-finite value at node " + std::to_string(i));
}

double mode_profile_at(int n, double x) {
  if (n < 0) throw std::invalid_argument("mode_profile_at: negative mode order");
  double prev = 0.0;
  double cur = inv_quartic_root_pi() * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next =
        std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> mode_profile(int n, std::span<const double> nodes) {
  std::vector<double> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = mode_profile_at(n, nodes[i]);
  return out;
}

cplx mode_phase(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::vector<cplx> mode_eval(int n, const FrequencyGrid& grid) {
  if (n < 0) throw std::invalid_argument("mode_eval: negative mode order");
  if (grid.nodes.empty()) throw std::invalid_argument("mode_eval: empty grid");
  const cplx phase = mode_phase(n);
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = phase * mode_profile_at(n, grid.nodes[i]);
  return out;
}

std::vector<double> mode_profile_matrix(int n_max, const FrequencyGrid& grid, Exec exec) {
  if (n_max < 1) throw std::invalid_argument("mode_profile_matrix: n_max must be positive");
  const std::size_t q = grid.size();
  std::vector<double> prof(static_cast<std::size_t>(n_max) * q);
  // Each node runs the full recurrence over mode order; nodes are independent.
  par::for_each_index(q, exec, [&](std::size_t i) {
    const double x = grid.nodes[i];
    double prev = 0.0;
    double cur = inv_quartic_root_pi() * std::exp(-0.5 * x * x);
    prof[i] = cur;
    for (int k = 0; k + 1 < n_max; ++k) {
      const double next =
          std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
      prof[static_cast<std::size_t>(k + 1) * q + i] = cur;
    }
  });
  return prof;
}

ModeAmplitudes project(const SpectralField& field, int n_max, Exec exec) {
  if (field.grid.kind != GridKind::gauss_hermite)
    throw std::invalid_argument("project: requires a gauss_hermite grid (uniform grids rejected)");
  if (static_cast<int>(field.grid.size()) < n_max + 4)
    throw std::invalid_argument("project: grid must have at least n_max + 4 nodes");
  validate_finite(field);

  const std::size_t q = field.grid.size();
  const std::vector<double> prof = mode_profile_matrix(n_max, field.grid, exec);
  ModeAmplitudes out;
  out.coeffs.assign(n_max, cplx(0.0, 0.0));
  // Each coefficient is an independent dot product in fixed node order, so
  // the result cannot depend on how modes are partitioned across threads.
  par::for_each_index(static_cast<std::size_t>(n_max), exec, [&](std::size_t m) {
    const double* row = prof.data() + m * q;
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < q; ++i)
      acc += field.grid.modified_weights[i] * field.values[i] * row[i];
    out.coeffs[m] = acc;
  });
  return out;
}

SpectralField synthesize(const ModeAmplitudes& coeffs, const FrequencyGrid& grid, Exec exec) {
  for (std::size_t n = 0; n < coeffs.size(); ++n)
    if (!std::isfinite(coeffs.coeffs[n].real()) || !std::isfinite(coeffs.coeffs[n].imag()))
      throw std::invalid_argument("synthesize: non-finite coefficient at mode " +
                                  std::to_string(n));
  const int n_max = static_cast<int>(coeffs.size());
  SpectralField out;
  out.grid = grid;
  out.values.assign(grid.size(), cplx(0.0, 0.0));
  if (n_max == 0) return out;
  par::for_each_index(grid.size(), exec, [&](std::size_t i) {
    const double x = grid.nodes[i];
    double prev = 0.0;
    double cur = inv_quartic_root_pi() * std::exp(-0.5 * x * x);
    cplx acc = coeffs.coeffs[0] * cur;
    for (int k = 0; k + 1 < n_max; ++k) {
      const double next =
          std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
      acc += coeffs.coeffs[k + 1] * cur;
    }
    out.values[i] = acc;
  });
  return out;
}

}  // namespace dispcav::hg
