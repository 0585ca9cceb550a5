#include "dispcav/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dispcav::material {

namespace {

void check_range(const SellmeierFit& fit, double lambda_um, const char* who) {
  if (!(lambda_um >= fit.lambda_min_um && lambda_um <= fit.lambda_max_um))
    throw std::invalid_argument(std::string(who) + ": wavelength " + std::to_string(lambda_um) +
                                " um outside fit range [" + std::to_string(fit.lambda_min_um) +
                                ", " + std::to_string(fit.lambda_max_um) + "]");
}

}  // namespace

SellmeierFit bibo() {
  SellmeierFit fit;
  fit.a0 = 3.07403;
  fit.a1_um2 = 0.03231;
  fit.c1_um2 = 0.03163;
  fit.a2_per_um2 = 0.01338;
  fit.lambda_min_um = 0.45;
  fit.lambda_max_um = 2.2;
  return fit;
}

double refractive_index(const SellmeierFit& fit, double lambda_um) {
  check_range(fit, lambda_um, "refractive_index");
  const double l2 = lambda_um * lambda_um;
  const double u = l2 - fit.c1_um2;
  const double n2 = fit.a0 + fit.a1_um2 / u - fit.a2_per_um2 * l2;
  if (!(n2 > 0.0))
    throw std::invalid_argument("refractive_index: fit yields n^2 <= 0 at lambda = " +
                                std::to_string(lambda_um));
  return std::sqrt(n2);
}

IndexDerivatives index_derivatives(const SellmeierFit& fit, double lambda_um) {
  check_range(fit, lambda_um, "index_derivatives");
  const double l = lambda_um;
  const double l2 = l * l;
  const double u = l2 - fit.c1_um2;
  const double a1 = fit.a1_um2, a2 = fit.a2_per_um2;

  // Closed-form derivatives of f = n^2 = a0 + a1/u - a2 l^2 with u = l^2 - c1:
  //   f'   = -2 a1 l / u^2 - 2 a2 l
  //   f''  = -2 a1 (u - 4 l^2) / u^3 - 2 a2
  //   f''' = 24 a1 l (u - 2 l^2) / u^4
  const double f1 = -2.0 * a1 * l / (u * u) - 2.0 * a2 * l;
  const double f2 = -2.0 * a1 * (u - 4.0 * l2) / (u * u * u) - 2.0 * a2;
  const double f3 = 24.0 * a1 * l * (u - 2.0 * l2) / (u * u * u * u);

  const double n = refractive_index(fit, lambda_um);
  IndexDerivatives d;
  d.d1 = f1 / (2.0 * n);
  d.d2 = (f2 - 2.0 * d.d1 * d.d1) / (2.0 * n);
  d.d3 = (f3 - 6.0 * d.d1 * d.d2) / (2.0 * n);
  return d;
}

double gvd(const SellmeierFit& fit, double lambda_um) {
  const IndexDerivatives d = index_derivatives(fit, lambda_um);
  const double c = kSpeedOfLightMmPerFs;
  // lambda in mm and d2n per mm^2 collapse to the 1e-3 factor on um inputs.
  return 1e-3 * lambda_um * lambda_um * lambda_um * d.d2 /
         (2.0 * std::numbers::pi * c * c);
}

double tod(const SellmeierFit& fit, double lambda_um) {
  const IndexDerivatives d = index_derivatives(fit, lambda_um);
  const double c = kSpeedOfLightMmPerFs;
  const double bracket = 3.0 * d.d2 + lambda_um * d.d3;  // um^-2
  const double l4 = lambda_um * lambda_um * lambda_um * lambda_um;
  return -1e-6 * l4 * bracket / (4.0 * std::numbers::pi * std::numbers::pi * c * c * c);
}

DispersionCoefficients coefficients(const SellmeierFit& fit, double lambda_um) {
  DispersionCoefficients out;
  out.lambda0_um = lambda_um;
  out.omega0_rad_per_fs = 2.0 * std::numbers::pi * kSpeedOfLightUmPerFs / lambda_um;
  out.gvd_fs2_per_mm = gvd(fit, lambda_um);
  out.tod_fs3_per_mm = tod(fit, lambda_um);
  return out;
}

double validity_band(double gvd_fs2_per_mm, double tod_fs3_per_mm) {
  if (tod_fs3_per_mm == 0.0) return std::numeric_limits<double>::infinity();
  return 3.0 * gvd_fs2_per_mm / tod_fs3_per_mm;
}

double derated_band(double gvd_fs2_per_mm, double tod_fs3_per_mm, double safety_factor) {
  if (!(safety_factor > 0.0)) throw std::invalid_argument("derated_band: safety factor <= 0");
  return validity_band(gvd_fs2_per_mm, tod_fs3_per_mm) / safety_factor;
}

double gvd_to_si(double fs2_per_mm) { return fs2_per_mm * 1e-27; }
double gvd_from_si(double s2_per_m) { return s2_per_m * 1e27; }

}  // namespace dispcav::material
