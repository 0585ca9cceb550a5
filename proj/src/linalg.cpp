#include "dispcav/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "dispcav/errors.hpp"

namespace dispcav::linalg {

CMatrix czeros(int n) {
  CMatrix m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
  return m;
}

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size(), cplx(0.0, 0.0));
  for (int i = 0; i < a.n; ++i) {
    cplx acc(0.0, 0.0);
    const cplx* row = a.a.data() + static_cast<std::size_t>(i) * a.n;
    for (int j = 0; j < a.n; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> matvec_real(const std::vector<double>& a, int n, const std::vector<cplx>& v) {
  std::vector<cplx> out(v.size(), cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    const double* row = a.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> solve(CMatrix a, std::vector<cplx> b) {
  const int n = a.n;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      double m = std::abs(a.at(r, col));
      if (m > best) {
        best = m;
        pivot = r;
      }
    }
    if (best == 0.0) throw numerical_error("linalg::solve: singular pivot");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    const cplx inv_piv = cplx(1.0, 0.0) / a.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const cplx f = a.at(r, col) * inv_piv;
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = b[r];
    for (int j = r + 1; j < n; ++j) acc -= a.at(r, j) * b[j];
    b[r] = acc / a.at(r, r);
  }
  return b;
}

PowerIteration power_iteration_symmetric(const std::vector<double>& a, int n,
                                         double tol, int max_iter) {
  PowerIteration res;
  if (n == 0) {
    res.converged = true;
    return res;
  }
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n, 0.0);
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      const double* row = a.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) acc += row[j] * v[j];
      w[i] = acc;
    }
    double rayleigh = 0.0, norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      rayleigh += v[i] * w[i];
      norm2 += w[i] * w[i];
    }
    const double norm = std::sqrt(norm2);
    res.iterations = it;
    if (norm == 0.0) {  // exact null vector: spectral radius along v is 0
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (std::abs(rayleigh - lambda) <= tol * std::max(1.0, std::abs(rayleigh))) {
      res.value = std::abs(rayleigh);
      res.converged = true;
      return res;
    }
    lambda = rayleigh;
  }
  res.value = std::abs(lambda);
  res.converged = false;
  return res;
}

double max_norm(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double diff = 0.0, ref = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    diff += std::norm(a[i] - b[i]);
    ref += std::norm(b[i]);
  }
  if (ref == 0.0) return std::sqrt(diff);
  return std::sqrt(diff / ref);
}

}  // namespace dispcav::linalg
