#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"

#include "dispcav/cavity.hpp"
#include "dispcav/errors.hpp"
#include "dispcav/linalg.hpp"
#include "dispcav/roundtrip.hpp"

using namespace dispcav;
using hg::cplx;

namespace {

cavity::CavityParams reference_params() {
  return cavity::make_params(0.9, 2.0, 1.3e7, 136.0, 100.0);
}

hg::SpectralField gaussian_input(const hg::FrequencyGrid& g) {
  hg::SpectralField f;
  f.grid = g;
  const std::vector<double> p0 = hg::mode_profile(0, g.nodes);
  f.values.assign(p0.begin(), p0.end());
  return f;
}

hg::SpectralField zero_field(const hg::FrequencyGrid& g) {
  hg::SpectralField f;
  f.grid = g;
  f.values.assign(g.size(), cplx(0, 0));
  return f;
}

}  // namespace

TEST_CASE("first injection into a cold cavity") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(32);
  const hg::SpectralField in = gaussian_input(g);
  const hg::SpectralField out =
      roundtrip::roundtrip_step(zero_field(g), p, roundtrip::gvd_phase(p.gvd_fs2_per_mm), in);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(out.values[i] == p.sqrt_t * in.values[i]);
}

TEST_CASE("undriven field decays geometrically") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(32);
  hg::SpectralField field = gaussian_input(g);
  const hg::SpectralField in = zero_field(g);
  const std::vector<cplx> initial = field.values;
  const roundtrip::PhaseModel model = roundtrip::gvd_phase(p.gvd_fs2_per_mm);
  const int steps = 25;
  for (int s = 0; s < steps; ++s) field = roundtrip::roundtrip_step(field, p, model, in);
  const double expected = std::pow(p.sqrt_r, steps);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(initial[i]) < 1e-30) continue;
    CHECK(std::abs(field.values[i]) / std::abs(initial[i]) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("phase-free iteration is the geometric partial sum") {
  const cavity::CavityParams p = cavity::make_params(0.9, 2.0, 1.3e7, 0.0, 100.0);
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(24);
  const hg::SpectralField in = gaussian_input(g);
  hg::SpectralField field = zero_field(g);
  const roundtrip::PhaseModel model = roundtrip::gvd_phase(0.0);
  const int steps = 50;
  for (int s = 0; s < steps; ++s) field = roundtrip::roundtrip_step(field, p, model, in);
  const double factor =
      p.sqrt_t * (1.0 - std::pow(p.sqrt_r, steps)) / (1.0 - p.sqrt_r);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(field.values[i] - factor * in.values[i]) <=
          1e-12 * std::abs(factor * in.values[i]) + 1e-18);
}

TEST_CASE("mismatched grids are rejected") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g1 = hg::gauss_hermite_grid(16);
  const hg::FrequencyGrid g2 = hg::gauss_hermite_grid(24);
  CHECK_THROWS_AS(roundtrip::roundtrip_step(zero_field(g1), p,
                                            roundtrip::gvd_phase(136.0), gaussian_input(g2)),
                  std::invalid_argument);
}

TEST_CASE("iteration count follows the contraction prediction") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(64);
  const hg::SpectralField in = gaussian_input(g);
  const auto res = roundtrip::iterate_to_steady(p, roundtrip::gvd_phase(p.gvd_fs2_per_mm), in,
                                                1e-8, 100000);
  // ceil(ln(tol (1 - sqrt R)) / ln sqrt R) = 197 for sqrt R = 0.9, tol = 1e-8
  CHECK(std::abs(res.iterations - 197) <= 5);

  const hg::SpectralField analytic = cavity::steady_state_full(p, in);
  CHECK(roundtrip::residual(res.field, analytic).value <= 10.0 * 1e-8);

  // scale invariance of the count
  hg::SpectralField scaled = in;
  for (auto& v : scaled.values) v *= 37.5;
  const auto res2 = roundtrip::iterate_to_steady(p, roundtrip::gvd_phase(p.gvd_fs2_per_mm),
                                                 scaled, 1e-8, 100000);
  CHECK(res2.iterations == res.iterations);
}

TEST_CASE("a nearly transparent mirror converges in one trip") {
  const cavity::CavityParams p = cavity::make_params(1e-9, 2.0, 1.3e7, 136.0, 100.0);
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(16);
  const hg::SpectralField in = gaussian_input(g);
  const auto res =
      roundtrip::iterate_to_steady(p, roundtrip::gvd_phase(p.gvd_fs2_per_mm), in, 1e-8, 10);
  CHECK(res.iterations == 1);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(res.field.values[i] - p.sqrt_t * in.values[i]) <= 1e-15);
}

TEST_CASE("iteration cap is an error, not a silent return") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(16);
  CHECK_THROWS_AS(roundtrip::iterate_to_steady(p, roundtrip::gvd_phase(p.gvd_fs2_per_mm),
                                               gaussian_input(g), 1e-8, 5),
                  numerical_error);
}

TEST_CASE("relative residual behaves like a metric") {
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(24);
  hg::SpectralField a = gaussian_input(g);
  CHECK(roundtrip::residual(a, a).value == 0.0);

  hg::SpectralField b = a;
  for (auto& v : b.values) v *= 1.01;
  CHECK(roundtrip::residual(b, a).value == doctest::Approx(0.01).epsilon(1e-12));

  const hg::SpectralField z = zero_field(g);
  const auto rz = roundtrip::residual(a, z);
  CHECK(rz.reference_was_zero);
  CHECK(rz.value > 0.0);

  // against an independent second summation order
  hg::SpectralField r1, r2;
  r1.grid = r2.grid = g;
  r1.values = oracles::random_complex(g.size(), 91);
  r2.values = oracles::random_complex(g.size(), 92);
  const double mine = roundtrip::residual(r1, r2).value;
  long double diff = 0.0L, ref = 0.0L;
  for (std::size_t i = g.size(); i-- > 0;) {
    diff += static_cast<long double>(std::norm(r1.values[i] - r2.values[i]));
    ref += static_cast<long double>(std::norm(r2.values[i]));
  }
  const double reversed = static_cast<double>(sqrtl(diff / ref));
  CHECK(std::abs(mine - reversed) <= 1e-15 * reversed);
}

TEST_CASE("the analytic steady state is a fixed point of the map") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(48);
  const hg::SpectralField in = gaussian_input(g);
  const hg::SpectralField analytic = cavity::steady_state_full(p, in);
  const hg::SpectralField once =
      roundtrip::roundtrip_step(analytic, p, roundtrip::gvd_phase(p.gvd_fs2_per_mm), in);
  CHECK(roundtrip::residual(once, analytic).value <= 1e-12);
}

TEST_CASE("log-residual slope equals the contraction rate") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(48);
  const hg::SpectralField in = gaussian_input(g);
  const hg::SpectralField analytic = cavity::steady_state_full(p, in);
  const std::vector<double> trace = roundtrip::convergence_trace(
      p, roundtrip::gvd_phase(p.gvd_fs2_per_mm), in, analytic, 160);
  std::vector<double> xs, ys;
  for (int i = 20; i < 150; ++i) {
    xs.push_back(static_cast<double>(i + 1));
    ys.push_back(std::log(trace[i]));
  }
  const double slope = oracles::ls_slope(xs, ys);
  CHECK(slope == doctest::Approx(std::log(0.9)).epsilon(0.02));
}

TEST_CASE("full dispersion relation agrees with the quadratic model inside the band") {
  const cavity::CavityParams p = reference_params();
  const material::SellmeierFit fit = material::bibo();
  const double k2 = material::gvd(fit, 0.795);
  const double k3 = material::tod(fit, 0.795);
  const cavity::CavityParams pfit = cavity::make_params(0.9, 2.0, 1.3e7, k2, 100.0);

  // restrict to a tenth of the cubic-vs-quadratic band
  const double omega_cap = material::derated_band(k2, k3);
  const double x_cap = std::min(2.5, omega_cap * p.pulse_duration_fs);
  const hg::FrequencyGrid g = hg::uniform_grid(-x_cap, x_cap, 81);
  const hg::SpectralField in = gaussian_input(g);

  const auto quad = roundtrip::iterate_to_steady(pfit, roundtrip::gvd_phase(k2), in, 1e-10, 100000);
  const auto full = roundtrip::iterate_to_steady(
      pfit, roundtrip::sellmeier_phase(fit, 0.795), in, 1e-10, 100000);

  const double r = roundtrip::residual(full.field, quad.field).value;
  // bound: the cubic phase correction amplified by the cavity buildup,
  // doubled for the higher-order remainder
  const double max_phi3 =
      std::abs(k3) / 6.0 * std::pow(x_cap / p.pulse_duration_fs, 3) * p.length_mm;
  const double bound = 2.0 * (p.sqrt_r / (1.0 - p.sqrt_r)) * max_phi3;
  CHECK(r <= bound);
  CHECK(r > 1e-9);  // the comparison is not vacuous
}

TEST_CASE("round-trip step is partition independent") {
  const cavity::CavityParams p = reference_params();
  const hg::FrequencyGrid g = hg::gauss_hermite_grid(72);
  hg::SpectralField field, in;
  field.grid = in.grid = g;
  field.values = oracles::random_complex(g.size(), 61);
  in.values = oracles::random_complex(g.size(), 62);
  const roundtrip::PhaseModel model = roundtrip::gvd_phase(p.gvd_fs2_per_mm);
  CHECK(roundtrip::roundtrip_step(field, p, model, in, Exec::serial).values ==
        roundtrip::roundtrip_step(field, p, model, in, Exec::parallel).values);
}
