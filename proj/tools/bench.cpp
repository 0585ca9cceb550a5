// Timing harness for the OpenMP kernels against their serial reference.
// Sizes are deliberately larger than anything the CLI touches; the point is
// the serial/parallel comparison, not absolute numbers.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "dispcav/cavity.hpp"
#include "dispcav/hg_basis.hpp"
#include "dispcav/parallel.hpp"
#include "dispcav/validity.hpp"

using namespace dispcav;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

template <typename Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("dispcav kernel benchmark (%d threads available)\n", par::max_threads());
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  // node-wise steady-state solve on a large uniform grid
  {
    const hg::FrequencyGrid grid = hg::uniform_grid(-12.0, 12.0, 2'000'000);
    hg::SpectralField input;
    input.grid = grid;
    input.values.resize(grid.size());
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : input.values) v = {dist(rng), dist(rng)};
    const cavity::CavityParams p = cavity::make_params(0.9, 2.0, 1.3e7, 136.0, 100.0);
    const double s = best_of(3, [&] { cavity::steady_state_full(p, input, Exec::serial); });
    const double par_ms = best_of(3, [&] { cavity::steady_state_full(p, input, Exec::parallel); });
    row("steady_state_full / 2M nodes", s, par_ms);
  }

  // mode profile matrix: 128 modes on a 4096-point rule
  {
    const hg::FrequencyGrid grid = hg::uniform_grid(-10.0, 10.0, 4096);
    const double s = best_of(3, [&] { hg::mode_profile_matrix(128, grid, Exec::serial); });
    const double par_ms = best_of(3, [&] { hg::mode_profile_matrix(128, grid, Exec::parallel); });
    row("mode_profile_matrix 128x4096", s, par_ms);
  }

  // projection of a dense field onto 96 modes
  {
    const hg::FrequencyGrid grid = hg::gauss_hermite_grid(260);
    hg::ModeAmplitudes coeffs;
    coeffs.coeffs.resize(96);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : coeffs.coeffs) v = {dist(rng), dist(rng)};
    const hg::SpectralField field = hg::synthesize(coeffs, grid);
    const double s = best_of(5, [&] { hg::project(field, 96, Exec::serial); });
    const double par_ms = best_of(5, [&] { hg::project(field, 96, Exec::parallel); });
    row("project 96 modes / Q=260", s, par_ms);
  }

  // validity-map grid evaluation
  {
    validity::MapSpec spec;
    spec.x = {validity::AxisName::n_gamma0, 0.5, 50.0, 1200};
    spec.y = {validity::AxisName::n_d, 5.0, 500.0, 1200};
    spec.profile.kind = series::DecayKind::exponential;
    spec.profile.n_gamma0 = 4.5;
    spec.profile.beta = 0.05;
    spec.profile.n_max = 64;
    spec.fixed_mode_order = 12;
    const double s = best_of(3, [&] { validity::evaluate(spec, Exec::serial); });
    const double par_ms = best_of(3, [&] { validity::evaluate(spec, Exec::parallel); });
    row("validity grid 1200x1200", s, par_ms);
  }

  return 0;
}
