#pragma once
#include <complex>
#include <vector>

namespace dispcav::linalg {

using cplx = std::complex<double>;

struct CMatrix {
  int n = 0;
  std::vector<cplx> a;  // row-major n x n

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

CMatrix czeros(int n);

// Products with a fixed (row-major, ascending column) summation order so the
// results are reproducible bit for bit.
std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& v);
std::vector<cplx> matvec_real(const std::vector<double>& a, int n, const std::vector<cplx>& v);

// Dense solve with partial pivoting; throws numerical_error on a singular pivot.
std::vector<cplx> solve(CMatrix a, std::vector<cplx> b);

struct PowerIteration {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Largest-magnitude eigenvalue of a real symmetric matrix (row-major n x n).
PowerIteration power_iteration_symmetric(const std::vector<double>& a, int n,
                                         double tol = 1e-12, int max_iter = 10000);

double max_norm(const std::vector<cplx>& v);
double l2_norm(const std::vector<cplx>& v);

// Relative L2 distance ||a - b|| / ||b||; falls back to the absolute norm
// when b is identically zero.
double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace dispcav::linalg
