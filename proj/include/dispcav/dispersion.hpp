#pragma once
// Sellmeier refractive-index fit and the dispersion coefficients derived from
// it.  Derivatives are hard-coded closed forms; finite differences exist only
// as test oracles.
namespace dispcav::material {

struct SellmeierFit {
  double a0 = 0.0;
  double a1_um2 = 0.0;      // numerator of the resonance term, um^2
  double c1_um2 = 0.0;      // pole position, um^2
  double a2_per_um2 = 0.0;  // quadratic term, um^-2
  double lambda_min_um = 0.45;
  double lambda_max_um = 2.2;

  bool operator==(const SellmeierFit&) const = default;
};

// n^2 = a0 + a1/(lambda^2 - c1) - a2 lambda^2, lambda in micrometers.
// The default range stays well clear of the pole near 0.178 um.
SellmeierFit bibo();

struct IndexDerivatives {
  double d1 = 0.0;  // dn/dlambda      (um^-1)
  double d2 = 0.0;  // d2n/dlambda^2   (um^-2)
  double d3 = 0.0;  // d3n/dlambda^3   (um^-3)
};

struct DispersionCoefficients {
  double lambda0_um = 0.0;
  double omega0_rad_per_fs = 0.0;  // 2 pi c / lambda0
  double gvd_fs2_per_mm = 0.0;
  double tod_fs3_per_mm = 0.0;
};

inline constexpr double kSpeedOfLightMmPerFs = 2.99792458e-4;
inline constexpr double kSpeedOfLightUmPerFs = 0.299792458;

double refractive_index(const SellmeierFit& fit, double lambda_um);
IndexDerivatives index_derivatives(const SellmeierFit& fit, double lambda_um);

// k'' = lambda^3 / (2 pi c^2) d2n/dlambda^2, in fs^2/mm
double gvd(const SellmeierFit& fit, double lambda_um);

// k''' = -lambda^4 / (4 pi^2 c^3) (3 d2n/dlambda^2 + lambda d3n/dlambda^3),
// in fs^3/mm as the formula is written.
double tod(const SellmeierFit& fit, double lambda_um);

DispersionCoefficients coefficients(const SellmeierFit& fit, double lambda_um);

// |omega| band where the cubic spectral phase stays below the quadratic one:
// omega_max = 3 k2 / k3, in rad/fs.  Returns +infinity when k3 == 0
// (dispersion purely quadratic: the band is unbounded).  Callers interpret
// "much less than" by derating, conventionally 10x.
double validity_band(double gvd_fs2_per_mm, double tod_fs3_per_mm);
double derated_band(double gvd_fs2_per_mm, double tod_fs3_per_mm,
                    double safety_factor = 10.0);

double gvd_to_si(double fs2_per_mm);  // -> s^2/m
double gvd_from_si(double s2_per_m);  // -> fs^2/mm

}  // namespace dispcav::material
