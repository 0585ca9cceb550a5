#pragma once
// Validity map of the perturbative expansion: the per-mode ratio
// |N_gamma_n / N_D| |O_nn| evaluated over parameter grids, with
// marching-squares threshold contours.
#include <array>
#include <vector>

#include "dispcav/parallel.hpp"
#include "dispcav/series.hpp"

namespace dispcav::validity {

enum class AxisName { mode_order, n_d, n_gamma0, beta };

struct AxisSpec {
  AxisName name = AxisName::mode_order;
  double lo = 0.0;
  double hi = 1.0;
  // Sample count for real axes.  A mode_order axis is sampled at every
  // integer in [lo, hi] instead; contours rendered between integers are
  // interpolation guides, not data.
  int samples = 2;
};

struct MapSpec {
  AxisSpec x, y;
  // n_gamma0/beta below are overridden by an axis of the same name.
  series::DecayProfile profile;
  double fixed_n_d = 1.0;    // used when n_d is not an axis
  int fixed_mode_order = 0;  // used when mode_order is not an axis
  std::vector<double> levels = {1.0, 0.5, 0.2, 0.1};  // sorted descending
};

// |N_gamma_n / N_D| |O_nn| with the n = 1 substitution (|O_13| in place of
// |O_11|: the diagonal does not dominate that row).
double ratio_at(int n, const series::DecayProfile& profile, double n_d);

struct RatioGrid {
  std::vector<double> xs, ys;
  std::vector<double> values;  // row-major, x fastest

  double at(std::size_t ix, std::size_t iy) const {
    return values[iy * xs.size() + ix];
  }
};

// Cartesian product of the axis samples, x fastest.  Axis values that imply
// nonphysical parameters (N_gamma <= 0) are rejected naming the point.
RatioGrid evaluate(const MapSpec& spec, Exec exec = Exec::parallel);

struct ContourLine {
  double level = 0.0;
  std::vector<std::array<double, 2>> points;  // (x, y) in axis units
};

// Marching-squares level sets with linear interpolation along cell edges;
// saddle cells are disambiguated by the cell-center mean.  A level outside
// the grid range yields no lines for that level (not an error).
std::vector<ContourLine> contours(const RatioGrid& grid, const std::vector<double>& levels);

}  // namespace dispcav::validity
