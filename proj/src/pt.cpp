#include "dispcav/pt.hpp"

#include <cmath>
#include <stdexcept>

#include "dispcav/errors.hpp"

namespace dispcav::pt {

namespace {

void check_sizes(const std::vector<cplx>& drive, const std::vector<double>& gamma) {
  if (drive.size() != gamma.size())
    throw std::invalid_argument("pt: drive and gamma must have the same length");
  for (double g : gamma)
    if (!(g > 0.0)) throw std::invalid_argument("pt: decay rates must be positive");
}

}  // namespace

linalg::CMatrix coupling_from_o(const std::vector<double>& gamma,
                                const std::vector<double>& n_gamma, double n_d,
                                const coupling::CouplingMatrix& o) {
  if (static_cast<int>(gamma.size()) != o.dim || static_cast<int>(n_gamma.size()) != o.dim)
    throw std::invalid_argument("coupling_from_o: dimension mismatch");
  if (n_d == 0.0) throw std::invalid_argument("coupling_from_o: n_d must be nonzero");
  linalg::CMatrix c = linalg::czeros(o.dim);
  for (int n = 0; n < o.dim; ++n)
    for (int m = 0; m < o.dim; ++m)
      c.at(n, m) = cplx(0.5 * gamma[n] * (n_gamma[n] / n_d) * o(n, m), 0.0);
  return c;
}

PTParams from_cavity(const cavity::CavityParams& p, const series::DecayProfile& profile,
                     const ModeAmplitudes& input, const coupling::CouplingMatrix& o) {
  cavity::validate(p);
  if (static_cast<int>(input.size()) != o.dim)
    throw std::invalid_argument("pt::from_cavity: input length must match matrix dimension");
  PTParams out;
  const std::vector<double> n_gamma = series::decay_numbers(profile);
  if (static_cast<int>(n_gamma.size()) != o.dim)
    throw std::invalid_argument("pt::from_cavity: profile length must match matrix dimension");
  out.gamma.resize(o.dim);
  for (int n = 0; n < o.dim; ++n) out.gamma[n] = 1.0 / (n_gamma[n] * p.round_trip_fs);
  const double n_d = cavity::n_d(p.pulse_duration_fs, p.gvd_fs2_per_mm, p.length_mm);
  out.coupling = coupling_from_o(out.gamma, n_gamma, n_d, o);
  out.drive.resize(o.dim);
  for (int n = 0; n < o.dim; ++n) out.drive[n] = 0.5 * out.gamma[n] * input.coeffs[n];
  out.gvd_parameter_fs =
      p.sqrt_r * p.gvd_fs2_per_mm * p.length_mm / (2.0 * p.round_trip_fs);
  out.detuning = 0.0;
  return out;
}

ModeAmplitudes order0(const std::vector<cplx>& drive, const std::vector<double>& gamma) {
  check_sizes(drive, gamma);
  ModeAmplitudes out;
  out.coeffs.resize(drive.size());
  for (std::size_t n = 0; n < drive.size(); ++n) out.coeffs[n] = (2.0 / gamma[n]) * drive[n];
  return out;
}

ModeAmplitudes order1(const std::vector<cplx>& drive, const std::vector<double>& gamma,
                      const linalg::CMatrix& c) {
  check_sizes(drive, gamma);
  const std::vector<cplx> cf = linalg::matvec(c, drive);
  ModeAmplitudes out;
  out.coeffs.resize(drive.size());
  const cplx mi(0.0, -1.0);
  for (std::size_t n = 0; n < drive.size(); ++n)
    out.coeffs[n] = (2.0 / gamma[n]) * drive[n] + mi * 4.0 * cf[n] / (gamma[n] * gamma[n]);
  return out;
}

ModeAmplitudes order2(const std::vector<cplx>& drive, const std::vector<double>& gamma,
                      const linalg::CMatrix& c) {
  check_sizes(drive, gamma);
  const std::vector<cplx> cf = linalg::matvec(c, drive);
  const std::vector<cplx> ccf = linalg::matvec(c, cf);
  ModeAmplitudes out;
  out.coeffs.resize(drive.size());
  const cplx mi(0.0, -1.0);
  for (std::size_t n = 0; n < drive.size(); ++n) {
    const double g = gamma[n];
    out.coeffs[n] = (2.0 / g) * drive[n] + mi * 4.0 * cf[n] / (g * g) - 8.0 * ccf[n] / (g * g * g);
  }
  return out;
}

ModeAmplitudes iterate(const std::vector<cplx>& drive, const std::vector<double>& gamma,
                       const linalg::CMatrix& c, int m) {
  check_sizes(drive, gamma);
  if (m < 0) throw std::invalid_argument("pt::iterate: negative order");
  ModeAmplitudes state = order0(drive, gamma);
  const cplx mi(0.0, -1.0);
  for (int step = 0; step < m; ++step) {
    const std::vector<cplx> ca = linalg::matvec(c, state.coeffs);
    for (std::size_t n = 0; n < drive.size(); ++n)
      state.coeffs[n] = (2.0 / gamma[n]) * (drive[n] + mi * ca[n]);
  }
  return state;
}

ModeAmplitudes steady_state_direct(const std::vector<cplx>& drive,
                                   const std::vector<double>& gamma,
                                   const linalg::CMatrix& c) {
  check_sizes(drive, gamma);
  const int n = c.n;
  // (gamma_n/2) a + i C a = f, scaled by 2/gamma_n row-wise:
  // (I + i diag(2/gamma) C) a = a^(0)
  linalg::CMatrix a = linalg::czeros(n);
  const cplx im(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a.at(i, j) = im * (2.0 / gamma[i]) * c.at(i, j);
    a.at(i, i) += 1.0;
  }
  std::vector<cplx> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = (2.0 / gamma[i]) * drive[i];
  ModeAmplitudes out;
  out.coeffs = linalg::solve(std::move(a), std::move(rhs));
  return out;
}

EquivalenceReport equivalence_report(const std::vector<cplx>& drive,
                                     const std::vector<double>& gamma,
                                     const linalg::CMatrix& c, int max_order) {
  check_sizes(drive, gamma);
  if (max_order < 0) throw std::invalid_argument("equivalence_report: negative order");
  const std::size_t n = drive.size();

  // Matrix-series side: terms of (-i diag(2/gamma) C)^j applied to a^(0).
  std::vector<cplx> a0(n);
  for (std::size_t i = 0; i < n; ++i) a0[i] = (2.0 / gamma[i]) * drive[i];
  std::vector<cplx> term = a0;
  std::vector<cplx> truncation = a0;

  // Iterate side, advanced order by order in lockstep.
  ModeAmplitudes iter = order0(drive, gamma);

  EquivalenceReport report;
  report.rows.reserve(max_order + 1);
  const cplx mi(0.0, -1.0);
  for (int order = 0; order <= max_order; ++order) {
    if (order > 0) {
      const std::vector<cplx> ct = linalg::matvec(c, term);
      for (std::size_t i = 0; i < n; ++i) term[i] = mi * (2.0 / gamma[i]) * ct[i];
      for (std::size_t i = 0; i < n; ++i) truncation[i] += term[i];

      const std::vector<cplx> ca = linalg::matvec(c, iter.coeffs);
      for (std::size_t i = 0; i < n; ++i)
        iter.coeffs[i] = (2.0 / gamma[i]) * (drive[i] + mi * ca[i]);
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diff = std::max(diff, std::abs(iter.coeffs[i] - truncation[i]));
    report.rows.push_back({order, diff});
  }

  const ModeAmplitudes printed[3] = {order0(drive, gamma), order1(drive, gamma, c),
                                     order2(drive, gamma, c)};
  for (int k = 0; k < 3; ++k) {
    const ModeAmplitudes it = iterate(drive, gamma, c, k);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diff = std::max(diff, std::abs(printed[k].coeffs[i] - it.coeffs[i]));
    report.printed_order_diff[k] = diff;
  }
  return report;
}

}  // namespace dispcav::pt
