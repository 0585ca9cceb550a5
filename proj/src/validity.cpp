#include "dispcav/validity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "dispcav/coupling.hpp"

namespace dispcav::validity {

namespace {

const char* axis_label(AxisName name) {
  switch (name) {
    case AxisName::mode_order: return "n";
    case AxisName::n_d: return "n_d";
    case AxisName::n_gamma0: return "n_gamma0";
    case AxisName::beta: return "beta";
  }
  return "?";
}

std::vector<double> axis_samples(const AxisSpec& axis) {
  if (!(axis.hi > axis.lo))
    throw std::invalid_argument(std::string("MapSpec: axis ") + axis_label(axis.name) +
                                " needs hi > lo");
  std::vector<double> out;
  if (axis.name == AxisName::mode_order) {
    if (axis.lo < -0.5) throw std::invalid_argument("MapSpec: mode order axis must start at >= 0");
    const int first = static_cast<int>(std::ceil(axis.lo));
    const int last = static_cast<int>(std::floor(axis.hi));
    for (int n = std::max(0, first); n <= last; ++n) out.push_back(static_cast<double>(n));
  } else {
    if (axis.samples < 2) throw std::invalid_argument("MapSpec: need at least 2 samples per axis");
    const double h = (axis.hi - axis.lo) / (axis.samples - 1);
    for (int i = 0; i < axis.samples; ++i) out.push_back(axis.lo + h * i);
  }
  if (out.size() < 2)
    throw std::invalid_argument(std::string("MapSpec: axis ") + axis_label(axis.name) +
                                " yields fewer than 2 samples");
  return out;
}

struct PointParams {
  int n = 0;
  series::DecayProfile profile;
  double n_d = 0.0;
};

void apply_axis(PointParams& pp, AxisName name, double value) {
  switch (name) {
    case AxisName::mode_order: pp.n = static_cast<int>(std::lround(value)); break;
    case AxisName::n_d: pp.n_d = value; break;
    case AxisName::n_gamma0:
      if (!(value > 0.0))
        throw std::invalid_argument("MapSpec: axis covers nonphysical n_gamma0 <= 0 (value " +
                                    std::to_string(value) + ")");
      pp.profile.n_gamma0 = value;
      break;
    case AxisName::beta: pp.profile.beta = value; break;
  }
}

}  // namespace

double ratio_at(int n, const series::DecayProfile& profile, double n_d) {
  if (n < 0) throw std::invalid_argument("ratio_at: negative mode order");
  if (n_d == 0.0) throw std::invalid_argument("ratio_at: n_d must be nonzero");
  const double diag =
      (n == 1) ? std::abs(coupling::element(1, 3)) : std::abs(coupling::element(n, n));
  return std::abs(series::decay_number(profile, n) / n_d) * diag;
}

RatioGrid evaluate(const MapSpec& spec, Exec exec) {
  if (spec.x.name == spec.y.name)
    throw std::invalid_argument("MapSpec: the two axes must differ");
  for (std::size_t i = 0; i + 1 < spec.levels.size(); ++i)
    if (!(spec.levels[i] > spec.levels[i + 1]))
      throw std::invalid_argument("MapSpec: levels must be sorted descending");

  RatioGrid grid;
  grid.xs = axis_samples(spec.x);
  grid.ys = axis_samples(spec.y);

  const bool n_on_axis =
      spec.x.name == AxisName::mode_order || spec.y.name == AxisName::mode_order;
  const bool nd_on_axis = spec.x.name == AxisName::n_d || spec.y.name == AxisName::n_d;

  PointParams base;
  base.profile = spec.profile;
  base.n = spec.fixed_mode_order;
  base.n_d = spec.fixed_n_d;
  if (!nd_on_axis && base.n_d == 0.0)
    throw std::invalid_argument("MapSpec: fixed_n_d must be nonzero when n_d is not an axis");
  (void)n_on_axis;

  const std::size_t nx = grid.xs.size(), ny = grid.ys.size();
  grid.values.assign(nx * ny, 0.0);
  // Every grid point carries its own parameter set: independent, and safe to
  // partition arbitrarily.  Validation errors must not escape the parallel
  // region, so nonphysical points are marked and reported afterwards.
  std::vector<int> bad(nx * ny, 0);
  par::for_each_index(nx * ny, exec, [&](std::size_t idx) {
    const std::size_t ix = idx % nx, iy = idx / nx;
    PointParams pp = base;
    try {
      apply_axis(pp, spec.x.name, grid.xs[ix]);
      apply_axis(pp, spec.y.name, grid.ys[iy]);
      // profile must span the requested mode order
      if (pp.n >= pp.profile.n_max) pp.profile.n_max = pp.n + 1;
      grid.values[idx] = ratio_at(pp.n, pp.profile, pp.n_d);
    } catch (const std::exception&) {
      bad[idx] = 1;
    }
  });
  for (std::size_t idx = 0; idx < bad.size(); ++idx)
    if (bad[idx])
      throw std::invalid_argument(
          "MapSpec: nonphysical parameters at grid point (x=" +
          std::to_string(grid.xs[idx % nx]) + ", y=" + std::to_string(grid.ys[idx / nx]) + ")");
  return grid;
}

namespace {

// Marching squares for one level.  Crossing points are computed once per
// grid edge and referenced by integer edge ids from both adjacent cells, so
// chains join on exact keys rather than floating-point coordinates.
struct LevelExtractor {
  const RatioGrid& g;
  double level;
  std::size_t nx, ny;
  std::map<std::size_t, std::array<double, 2>> edge_points;
  std::vector<std::array<std::size_t, 2>> segments;  // pairs of edge ids

  explicit LevelExtractor(const RatioGrid& grid, double lv)
      : g(grid), level(lv), nx(grid.xs.size()), ny(grid.ys.size()) {}

  std::size_t hedge_id(std::size_t ix, std::size_t iy) const { return 2 * (iy * nx + ix); }
  std::size_t vedge_id(std::size_t ix, std::size_t iy) const { return 2 * (iy * nx + ix) + 1; }

  std::array<double, 2> interp(double xa, double ya, double va, double xb, double yb,
                               double vb) const {
    const double t = (level - va) / (vb - va);
    return {xa + t * (xb - xa), ya + t * (yb - ya)};
  }

  void run() {
    // crossing points on horizontal edges (ix..ix+1, iy)
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
        const double va = g.at(ix, iy), vb = g.at(ix + 1, iy);
        if ((va >= level) != (vb >= level))
          edge_points[hedge_id(ix, iy)] =
              interp(g.xs[ix], g.ys[iy], va, g.xs[ix + 1], g.ys[iy], vb);
      }
    // crossing points on vertical edges (ix, iy..iy+1)
    for (std::size_t iy = 0; iy + 1 < ny; ++iy)
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const double va = g.at(ix, iy), vb = g.at(ix, iy + 1);
        if ((va >= level) != (vb >= level))
          edge_points[vedge_id(ix, iy)] =
              interp(g.xs[ix], g.ys[iy], va, g.xs[ix], g.ys[iy + 1], vb);
      }

    for (std::size_t iy = 0; iy + 1 < ny; ++iy)
      for (std::size_t ix = 0; ix + 1 < nx; ++ix) cell(ix, iy);
  }

  void cell(std::size_t ix, std::size_t iy) {
    const double v_bl = g.at(ix, iy), v_br = g.at(ix + 1, iy);
    const double v_tr = g.at(ix + 1, iy + 1), v_tl = g.at(ix, iy + 1);
    const int mask = (v_bl >= level ? 1 : 0) | (v_br >= level ? 2 : 0) |
                     (v_tr >= level ? 4 : 0) | (v_tl >= level ? 8 : 0);
    if (mask == 0 || mask == 15) return;

    const std::size_t bottom = hedge_id(ix, iy);
    const std::size_t top = hedge_id(ix, iy + 1);
    const std::size_t left = vedge_id(ix, iy);
    const std::size_t right = vedge_id(ix + 1, iy);
    auto add = [&](std::size_t a, std::size_t b) { segments.push_back({a, b}); };

    switch (mask) {
      case 1: case 14: add(left, bottom); break;
      case 2: case 13: add(bottom, right); break;
      case 3: case 12: add(left, right); break;
      case 4: case 11: add(top, right); break;
      case 6: case 9: add(bottom, top); break;
      case 7: case 8: add(left, top); break;
      case 5: {  // bl and tr inside
        const bool center_in = 0.25 * (v_bl + v_br + v_tr + v_tl) >= level;
        if (center_in) {
          add(bottom, right);
          add(left, top);
        } else {
          add(left, bottom);
          add(top, right);
        }
        break;
      }
      case 10: {  // br and tl inside
        const bool center_in = 0.25 * (v_bl + v_br + v_tr + v_tl) >= level;
        if (center_in) {
          add(left, bottom);
          add(top, right);
        } else {
          add(bottom, right);
          add(left, top);
        }
        break;
      }
      default: break;
    }
  }

  std::vector<ContourLine> chain() const {
    // adjacency: each edge id touches at most two segments except at rare
    // saddle reuse; walk greedily in both directions.
    std::multimap<std::size_t, std::size_t> by_edge;  // edge id -> segment index
    for (std::size_t s = 0; s < segments.size(); ++s) {
      by_edge.insert({segments[s][0], s});
      by_edge.insert({segments[s][1], s});
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<ContourLine> lines;

    auto next_unused = [&](std::size_t edge, std::size_t exclude) -> long {
      auto [lo, hi] = by_edge.equal_range(edge);
      for (auto it = lo; it != hi; ++it)
        if (!used[it->second] && it->second != exclude) return static_cast<long>(it->second);
      return -1;
    };

    for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
      if (used[s0]) continue;
      std::vector<std::size_t> edges = {segments[s0][0], segments[s0][1]};
      used[s0] = true;
      // extend forward
      for (;;) {
        const long nxt = next_unused(edges.back(), SIZE_MAX);
        if (nxt < 0) break;
        used[nxt] = true;
        const auto& seg = segments[nxt];
        edges.push_back(seg[0] == edges.back() ? seg[1] : seg[0]);
        if (edges.back() == edges.front()) break;  // closed loop
      }
      // extend backward unless closed
      if (edges.back() != edges.front()) {
        for (;;) {
          const long prv = next_unused(edges.front(), SIZE_MAX);
          if (prv < 0) break;
          used[prv] = true;
          const auto& seg = segments[prv];
          edges.insert(edges.begin(), seg[0] == edges.front() ? seg[1] : seg[0]);
        }
      }
      ContourLine line;
      line.level = level;
      line.points.reserve(edges.size());
      for (std::size_t e : edges) line.points.push_back(edge_points.at(e));
      lines.push_back(std::move(line));
    }
    return lines;
  }
};

}  // namespace

std::vector<ContourLine> contours(const RatioGrid& grid, const std::vector<double>& levels) {
  if (grid.xs.size() < 2 || grid.ys.size() < 2)
    throw std::invalid_argument("contours: grid must be at least 2x2");
  for (double v : grid.values)
    if (!std::isfinite(v)) throw std::invalid_argument("contours: grid contains non-finite values");
  std::vector<ContourLine> out;
  for (double level : levels) {
    LevelExtractor ex(grid, level);
    ex.run();
    std::vector<ContourLine> lines = ex.chain();
    for (auto& l : lines) out.push_back(std::move(l));
  }
  return out;
}

}  // namespace dispcav::validity
