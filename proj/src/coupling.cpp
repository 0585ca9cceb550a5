#include "dispcav/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dispcav/errors.hpp"

namespace dispcav::coupling {

double element(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("coupling::element: negative mode order");
  if (n == m) return -(n + 0.5);
  if (n == m + 2) return -0.5 * std::sqrt(static_cast<double>(n - 1) * n);
  if (n == m - 2) return -0.5 * std::sqrt(static_cast<double>(n + 1) * (n + 2));
  return 0.0;
}

CouplingMatrix build(int n_max) {
  if (n_max < 1) throw std::invalid_argument("coupling::build: n_max must be positive");
  if (n_max > 256)
    throw std::invalid_argument("coupling::build: dense storage capped at n_max = 256");
  CouplingMatrix m;
  m.dim = n_max;
  m.entries.assign(static_cast<std::size_t>(n_max) * n_max, 0.0);
  for (int n = 0; n < n_max; ++n)
    for (int k = 0; k < n_max; ++k)
      m.entries[static_cast<std::size_t>(n) * n_max + k] = element(n, k);
  return m;
}

CouplingMatrix square(const CouplingMatrix& m) {
  CouplingMatrix out;
  out.dim = m.dim;
  out.entries.assign(static_cast<std::size_t>(m.dim) * m.dim, 0.0);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m.dim; ++k) acc += m(i, k) * m(k, j);
      out.entries[static_cast<std::size_t>(i) * m.dim + j] = acc;
    }
  return out;
}

double element_by_quadrature(int n, int m, const hg::FrequencyGrid& grid) {
  if (static_cast<int>(grid.size()) < n + m + 4)
    throw std::invalid_argument("element_by_quadrature: need Q >= n + m + 4");
  const std::vector<double> pn = hg::mode_profile(n, grid.nodes);
  const std::vector<double> pm = hg::mode_profile(m, grid.nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes[i];
    acc += grid.modified_weights[i] * pn[i] * x * x * pm[i];
  }
  return acc;
}

double element_by_quadrature(int n, int m, int q_points) {
  return element_by_quadrature(n, m, hg::gauss_hermite_grid(q_points));
}

double quartic_overlap(int q_mode, int p_mode, const hg::FrequencyGrid& grid) {
  if (static_cast<int>(grid.size()) < q_mode + p_mode + 8)
    throw std::invalid_argument("quartic_overlap: need Q >= q + p + 8");
  const std::vector<double> pq = hg::mode_profile(q_mode, grid.nodes);
  const std::vector<double> pp = hg::mode_profile(p_mode, grid.nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes[i];
    const double x2 = x * x;
    acc += grid.modified_weights[i] * pq[i] * x2 * x2 * pp[i];
  }
  return acc;
}

double quartic_overlap(int q_mode, int p_mode, int q_points) {
  return quartic_overlap(q_mode, p_mode, hg::gauss_hermite_grid(q_points));
}

int quadrature_sign_relation(int n_max, int q_points) {
  const hg::FrequencyGrid grid = hg::gauss_hermite_grid(q_points);
  int sign = 0;
  for (int n = 0; n < n_max; ++n) {
    for (int m = 0; m < n_max; ++m) {
      const double analytic = element(n, m);
      if (analytic == 0.0) continue;
      const double quad = element_by_quadrature(n, m, grid);
      if (std::abs(std::abs(analytic) - std::abs(quad)) > 1e-9)
        throw numerical_error("quadrature_sign_relation: magnitude mismatch at (" +
                              std::to_string(n) + "," + std::to_string(m) + ")");
      const int s = (analytic * quad > 0.0) ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign)
        throw numerical_error("quadrature_sign_relation: sign relation not uniform at (" +
                              std::to_string(n) + "," + std::to_string(m) + ")");
    }
  }
  return sign == 0 ? 1 : sign;
}

}  // namespace dispcav::coupling
