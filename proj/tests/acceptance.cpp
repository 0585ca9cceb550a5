// Acceptance suite: one check per shipped guarantee, each printed as a single
// PASS/FAIL line with its runtime against the stated budget.  Exits nonzero
// if anything fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dispcav/cavity.hpp"
#include "dispcav/cli.hpp"
#include "dispcav/config.hpp"
#include "dispcav/coupling.hpp"
#include "dispcav/dispersion.hpp"
#include "dispcav/hg_basis.hpp"
#include "dispcav/linalg.hpp"
#include "dispcav/pt.hpp"
#include "dispcav/roundtrip.hpp"
#include "dispcav/series.hpp"
#include "dispcav/validity.hpp"

using namespace dispcav;
using hg::cplx;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  const char* summary;
  double limit_ms;
  std::function<void(std::vector<std::string>&)> body;
};

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
  if (!ok) failures.push_back(what);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

hg::SpectralField gaussian_input(const hg::FrequencyGrid& g) {
  hg::SpectralField f;
  f.grid = g;
  const std::vector<double> p0 = hg::mode_profile(0, g.nodes);
  f.values.assign(p0.begin(), p0.end());
  return f;
}

std::vector<cplx> random_support(std::mt19937& rng, int n, int support) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cplx> v(n, cplx(0, 0));
  for (int i = 0; i < support; ++i) v[i] = {dist(rng), dist(rng)};
  return v;
}

std::string g_config_path;  // argv[1], optional

// ---------------------------------------------------------------- criteria

void c1_sellmeier_gvd(std::vector<std::string>& f) {
  const material::SellmeierFit fit = material::bibo();
  volatile double warm = material::gvd(fit, 0.795);
  (void)warm;
  const auto t0 = std::chrono::steady_clock::now();
  const double k2 = material::gvd(fit, 0.795);
  const double call_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  expect(f, std::abs(k2 - 136.0) <= 0.03 * 136.0,
         "gvd(0.795um) = " + fmt_double(k2) + " outside 136 +/- 3%");
  expect(f, call_ms < 1.0, "single evaluation took " + fmt_double(call_ms) + " ms");
}

void c2_coupling_fidelity(std::vector<std::string>& f) {
  const hg::FrequencyGrid grid = hg::gauss_hermite_grid(88);
  int sign = 0;
  bool uniform = true;
  double worst_mag = 0.0;
  for (int n = 0; n <= 40; ++n)
    for (int m = 0; m <= 40; ++m) {
      const double a = coupling::element(n, m);
      const double q = coupling::element_by_quadrature(n, m, grid);
      worst_mag = std::max(worst_mag, std::abs(std::abs(a) - std::abs(q)));
      if (a != 0.0) {
        const int s = a * q > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) uniform = false;
      }
    }
  expect(f, worst_mag <= 1e-9,
         "analytic vs quadrature magnitude gap " + fmt_double(worst_mag) + " > 1e-9");
  expect(f, uniform, "sign relation between analytic and quadrature values is not uniform");

  const coupling::CouplingMatrix o2 = coupling::square(coupling::build(24));
  const hg::FrequencyGrid grid4 = hg::gauss_hermite_grid(52);
  double worst_quartic = 0.0;
  for (int q = 0; q <= 20; ++q)
    for (int p = 0; p <= 20; ++p)
      worst_quartic =
          std::max(worst_quartic, std::abs(coupling::quartic_overlap(q, p, grid4) - o2(q, p)));
  expect(f, worst_quartic <= 1e-10,
         "quartic overlap vs squared matrix gap " + fmt_double(worst_quartic) + " > 1e-10");
}

void c3_structural_equivalence(std::vector<std::string>& f) {
  const int n_max = 16;
  const coupling::CouplingMatrix o = coupling::build(n_max);
  const double n_gamma0 = 4.5, n_d = 368.0, t_r = 1.3e7;
  const std::vector<double> ng(n_max, n_gamma0);
  std::vector<double> gamma(n_max);
  for (int i = 0; i < n_max; ++i) gamma[i] = 1.0 / (ng[i] * t_r);
  const linalg::CMatrix c = pt::coupling_from_o(gamma, ng, n_d, o);

  std::mt19937 rng(42);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<cplx> amps = random_support(rng, n_max, n_max - 4);
    std::vector<cplx> drive(n_max);
    for (int i = 0; i < n_max; ++i) drive[i] = 0.5 * gamma[i] * amps[i];
    hg::ModeAmplitudes a_in;
    a_in.coeffs = amps;
    for (int order = 0; order <= 8; ++order) {
      const hg::ModeAmplitudes it = pt::iterate(drive, gamma, c, order);
      const auto ser = series::series_solve(o, ng, n_d, a_in, order + 1, 0.0);
      for (int i = 0; i < n_max; ++i)
        worst = std::max(worst, std::abs(it.coeffs[i] - ser.amplitudes.coeffs[i]));
    }
  }
  expect(f, worst <= 1e-13,
         "perturbation iterate vs matrix-series truncation max gap " + fmt_double(worst));
}

void c4_series_vs_exact(std::vector<std::string>& f) {
  // Large enough basis and rule to push the truncation and quadrature floors
  // well below the geometric stretch being measured.  The input decays over
  // the lower half of the basis: a single-mode input would spend its entire
  // observable error range filling the band ladder and never expose the
  // asymptotic spectral-radius rate the fit targets, while support near the
  // top of the basis would leak across the truncation boundary immediately.
  const int n_max = 24;
  const hg::FrequencyGrid grid = hg::gauss_hermite_grid(96);
  hg::ModeAmplitudes broad;
  broad.coeffs.assign(n_max, cplx(0, 0));
  for (int n = 0; n < n_max / 2; ++n)
    broad.coeffs[n] = cplx(std::pow(0.8, n), (n % 2 ? -0.3 : 0.2) * std::pow(0.8, n));
  const hg::SpectralField in = hg::synthesize(broad, grid);
  const coupling::CouplingMatrix o = coupling::build(n_max);
  const std::vector<double> ng(n_max, 4.5);

  for (double target : {0.1, 0.3, 0.5}) {
    const double n_d = 4.5 * (n_max - 0.5) / target;
    const double k2 = 100.0 * 100.0 / (n_d * 2.0);
    const cavity::CavityParams p = cavity::make_params(0.9, 2.0, 1.3e7, k2, 100.0);
    const hg::ModeAmplitudes reference =
        cavity::cavity_mode_amplitudes(p, in, n_max, cavity::Fidelity::linearized);
    hg::ModeAmplitudes a_in = hg::project(in, n_max);
    const double pref = p.sqrt_t / (1.0 - p.sqrt_r);
    for (auto& v : a_in.coeffs) v *= pref;

    const double rho =
        series::convergence_check(o, ng, n_d).spectral_radius_estimate;

    std::vector<double> errs;
    double floor = 1e300;
    for (int order = 0; order <= 64; ++order) {
      const auto res = series::series_solve(o, ng, n_d, a_in, order + 1, 0.0);
      errs.push_back(linalg::rel_l2(res.amplitudes.coeffs, reference.coeffs));
      floor = std::min(floor, errs.back());
    }
    // monotone decrease until the series reaches the comparison floor (basis
    // truncation / quadrature of the rational exact solution)
    bool monotone = true;
    for (std::size_t m = 0; m + 1 < errs.size(); ++m)
      if (errs[m] > 100.0 * floor && errs[m] > 1e-11 && errs[m + 1] >= errs[m])
        monotone = false;
    expect(f, monotone,
           "error vs exact not monotone at max ratio " + fmt_double(target));

    // fitted geometric ratio over the deepest clean stretch above the floor,
    // where the decay rate has settled to its asymptotic value
    std::vector<double> xs, ys;
    for (std::size_t m = 0; m < errs.size(); ++m)
      if (errs[m] <= 1e-4 && errs[m] > std::max(10.0 * floor, 1e-12)) {
        xs.push_back(static_cast<double>(m));
        ys.push_back(std::log(errs[m]));
      }
    while (xs.size() > 6) {
      xs.erase(xs.begin());
      ys.erase(ys.begin());
    }
    if (xs.size() < 4) {
      expect(f, false, "too few points to fit a ratio at target " + fmt_double(target));
      continue;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double slope = (xs.size() * sxy - sx * sy) / (xs.size() * sxx - sx * sx);
    const double fitted = std::exp(slope);
    expect(f, fitted >= 0.5 * rho && fitted <= 2.0 * rho,
           "fitted ratio " + fmt_double(fitted) + " vs spectral radius " + fmt_double(rho) +
               " beyond 2x at target " + fmt_double(target));
  }
}

void c5_divergence_boundary(std::vector<std::string>& f) {
  std::mt19937 rng(2025);
  std::uniform_real_distribution<double> g0(1.0, 10.0);
  std::uniform_int_distribution<int> nstar(2, 12);

  int divergent_checked = 0, convergent_checked = 0;
  while (divergent_checked < 25) {
    const double n_gamma0 = g0(rng);
    const int violating = nstar(rng);
    const double n_d = n_gamma0 * (violating + 0.5) * 0.9;  // ratio > 1 at `violating`
    const int n_max = 2 * violating + 6;
    const coupling::CouplingMatrix o = coupling::build(n_max);
    const std::vector<double> ng(n_max, n_gamma0);
    hg::ModeAmplitudes in;
    in.coeffs = random_support(rng, n_max, 4);
    const auto res = series::series_solve(o, ng, n_d, in, 64, 1e-12);
    expect(f, !res.diagnostics.converged && res.diagnostics.divergence_order >= 0,
           "divergence not reported at max ratio " +
               fmt_double(n_gamma0 / n_d * (n_max - 0.5)));
    ++divergent_checked;
  }
  // Convergent branch: max per-mode ratio <= 0.9 AND spectral radius < 1.
  // The off-diagonal band pushes the radius ~1.3x above the largest diagonal
  // ratio, so ratios are drawn low enough that both conditions can hold; the
  // radius is still verified draw by draw.
  std::uniform_real_distribution<double> ratio_draw(0.2, 0.65);
  while (convergent_checked < 25) {
    const double n_gamma0 = g0(rng);
    const int n_max = 2 * nstar(rng) + 6;
    const double n_d = n_gamma0 * (n_max - 0.5) / ratio_draw(rng);
    const coupling::CouplingMatrix o = coupling::build(n_max);
    const std::vector<double> ng(n_max, n_gamma0);
    const double rho = series::convergence_check(o, ng, n_d).spectral_radius_estimate;
    if (rho >= 0.999) continue;  // the criterion's convergent branch needs rho < 1
    hg::ModeAmplitudes in;
    in.coeffs = random_support(rng, n_max, 4);
    const auto res = series::series_solve(o, ng, n_d, in, 20000, 1e-10);
    expect(f, res.diagnostics.converged,
           "convergence not reported at rho = " + fmt_double(rho));
    ++convergent_checked;
  }
}

void c6_critical_mode_order(std::vector<std::string>& f) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> g0(0.05, 50.0), d0(0.1, 500.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double ng = g0(rng), nd = d0(rng);
    int scan = 0;
    while ((ng / nd) * (scan + 0.5) < 1.0) ++scan;
    const auto lim = series::n_lim(ng, nd);
    expect(f, lim.has_value() && lim.value() == scan,
           "n_lim(" + fmt_double(ng) + ", " + fmt_double(nd) + ") != brute scan");
  }
}

void c7_roundtrip_oracle(std::vector<std::string>& f) {
  const cavity::CavityParams p = cavity::make_params(0.9, 2.0, 1.3e7, 136.0, 100.0);
  const hg::FrequencyGrid grid = hg::gauss_hermite_grid(64);
  const hg::SpectralField in = gaussian_input(grid);
  const roundtrip::PhaseModel model = roundtrip::gvd_phase(p.gvd_fs2_per_mm);

  const auto res = roundtrip::iterate_to_steady(p, model, in, 1e-8, 100000);
  expect(f, std::abs(res.iterations - 197) <= 5,
         "iterations = " + std::to_string(res.iterations) + ", expected 197 +/- 5");

  const hg::SpectralField analytic = cavity::steady_state_full(p, in);
  const double r = roundtrip::residual(res.field, analytic).value;
  expect(f, r <= 1e-6, "fixed point vs analytic steady state: " + fmt_double(r) + " > 1e-6");

  const hg::SpectralField once = roundtrip::roundtrip_step(analytic, p, model, in);
  const double idem = roundtrip::residual(once, analytic).value;
  expect(f, idem <= 1e-12, "analytic steady state moved by " + fmt_double(idem) + " > 1e-12");
}

void c8_basis_integrity(std::vector<std::string>& f) {
  const hg::FrequencyGrid grid = hg::gauss_hermite_grid(88);
  const std::vector<double> prof = hg::mode_profile_matrix(41, grid);
  double worst = 0.0;
  for (int n = 0; n <= 40; ++n)
    for (int m = 0; m <= 40; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        acc += grid.modified_weights[i] * prof[n * grid.size() + i] * prof[m * grid.size() + i];
      worst = std::max(worst, std::abs(acc - (n == m ? 1.0 : 0.0)));
    }
  expect(f, worst <= 1e-10, "orthonormality defect " + fmt_double(worst) + " > 1e-10");

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst_rt = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    hg::ModeAmplitudes c;
    c.coeffs.resize(40);
    for (auto& v : c.coeffs) v = {dist(rng), dist(rng)};
    const hg::ModeAmplitudes back = hg::project(hg::synthesize(c, grid), 40);
    for (int m = 0; m < 40; ++m)
      worst_rt = std::max(worst_rt, std::abs(back.coeffs[m] - c.coeffs[m]));
  }
  expect(f, worst_rt <= 1e-10,
         "project(synthesize(c)) defect " + fmt_double(worst_rt) + " > 1e-10");
}

void c9_validity_map(std::vector<std::string>& f) {
  validity::MapSpec spec;
  spec.x = {validity::AxisName::mode_order, 0.0, 24.0, 0};
  spec.y = {validity::AxisName::n_d, 10.0, 100.0, 19};
  spec.profile.kind = series::DecayKind::constant;
  spec.profile.n_gamma0 = 4.5;
  spec.profile.n_max = 32;
  const validity::RatioGrid grid = validity::evaluate(spec);

  // nesting of the sub-level regions for the stated thresholds
  const std::vector<double> levels = {1.0, 0.5, 0.2, 0.1};
  std::size_t prev = 0;
  bool nested = true;
  for (double level : levels) {
    std::size_t count = 0;
    for (double v : grid.values)
      if (v >= level) ++count;
    if (count < prev) nested = false;
    prev = count;
  }
  expect(f, nested, "region counts do not nest across descending levels");

  // level-1 boundary along the mode axis == the critical order, per row
  bool boundary_ok = true;
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    const auto lim = series::n_lim(4.5, grid.ys[iy]);
    int first = -1;
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix)
      if (grid.at(ix, iy) >= 1.0) {
        first = static_cast<int>(grid.xs[ix]);
        break;
      }
    const int expected = (lim.has_value() && lim.value() <= 24) ? lim.value() : -1;
    if (first != expected) boundary_ok = false;
  }
  expect(f, boundary_ok, "level-1 boundary disagrees with the critical mode order");

  // the n = 1 substitution is visible in the evaluated grid
  const double r1 = validity::ratio_at(1, spec.profile, 36.76);
  expect(f,
         std::abs(r1 - 4.5 / 36.76 * std::sqrt(6.0) / 2.0) <= 1e-12 &&
             std::abs(r1 - 4.5 / 36.76 * 1.5) > 1e-3,
         "n = 1 ratio does not use the off-diagonal substitution");
}

void c10_end_to_end_compare(std::vector<std::string>& f) {
  cfg::RunConfig reference = cfg::reference_config();
  if (!g_config_path.empty()) {
    const cfg::RunConfig shipped = cfg::load_config(g_config_path);
    expect(f, shipped == reference, "shipped reference config drifted from the in-code one");
    reference = shipped;
  }
  const fs::path dir = fs::temp_directory_path() / "dispcav-acceptance" / "compare";
  fs::remove_all(dir);

  std::vector<std::string> args = {"compare", "--out", dir.string()};
  if (!g_config_path.empty()) {
    args.insert(args.begin(), {"--config", g_config_path});
  }
  const int rc = cli::run(args);
  expect(f, rc == 0, "compare exited with code " + std::to_string(rc));

  std::ifstream in(dir / "compare_residuals.csv");
  expect(f, in.good(), "compare_residuals.csv missing");
  std::string line;
  int pair_rows = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("solver_a", 0) == 0) continue;
    std::stringstream ls(line);
    std::string a, b, value;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    std::getline(ls, value, ',');
    if (a == "exact_full" || b == "exact_full") continue;  // informative rows
    ++pair_rows;
    worst = std::max(worst, std::stod(value));
  }
  expect(f, pair_rows == 6, "expected 6 pairwise residuals, found " + std::to_string(pair_rows));
  expect(f, worst <= 1e-6,
         "worst pairwise cross-solver residual " + fmt_double(worst) + " > 1e-6");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_config_path = argv[1];

  const std::vector<Criterion> criteria = {
      {1, "Sellmeier GVD at 795 nm within 3% of 136 fs^2/mm", 1.0, c1_sellmeier_gvd},
      {2, "coupling matrix: quadrature fidelity and completeness identity", 1000.0,
       c2_coupling_fidelity},
      {3, "PT iterate == matrix-series truncation to 1e-13 (M <= 8)", 1000.0,
       c3_structural_equivalence},
      {4, "series vs exact: monotone error, geometric ratio near spectral radius", 2000.0,
       c4_series_vs_exact},
      {5, "divergence reported above the per-mode threshold, convergence below", 5000.0,
       c5_divergence_boundary},
      {6, "critical mode order: ceiling formula == brute-force scan (100 draws)", 100.0,
       c6_critical_mode_order},
      {7, "round-trip oracle: 197 +/- 5 trips, fixed point matches analytic", 1000.0,
       c7_roundtrip_oracle},
      {8, "basis integrity: orthonormality and projection round trip", 1000.0,
       c8_basis_integrity},
      {9, "validity map: nesting, critical-order boundary, n = 1 substitution", 1000.0,
       c9_validity_map},
      {10, "end-to-end compare: all pairwise residuals <= 1e-6", 5000.0,
       c10_end_to_end_compare},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::vector<std::string> failures;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    // criterion 1 times the single evaluation inside its body, not the setup
    const bool in_time = c.id == 1 || ms < c.limit_ms;
    if (!in_time)
      failures.push_back("runtime " + fmt_double(ms) + " ms over the " +
                         fmt_double(c.limit_ms) + " ms budget");
    const bool ok = failures.empty();
    std::printf("criterion %02d  %s  %8.1f ms / %6.0f ms  %s\n", c.id, ok ? "PASS" : "FAIL", ms,
                c.limit_ms, c.summary);
    for (const std::string& msg : failures) std::printf("              - %s\n", msg.c_str());
    if (!ok) ++failed;
  }
  if (failed) {
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
