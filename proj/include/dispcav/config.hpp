#pragma once
// Strict key-value run configuration: "section.key = value" lines, '#'
// comments, unknown keys rejected with the offending line.
#include <string>
#include <vector>

#include "dispcav/cavity.hpp"
#include "dispcav/dispersion.hpp"
#include "dispcav/series.hpp"

namespace dispcav::cfg {

enum class OutputFormat { csv, json };
enum class InputKind { mode, coeffs };

struct RunConfig {
  cavity::CavityParams cavity;
  series::DecayProfile profile;
  int n_max = 32;
  int quadrature_points = 72;
  int max_terms = 64;   // series truncation: number of terms kept
  double tol = 1e-12;
  material::SellmeierFit material;
  double lambda0_um = 0.795;
  InputKind input_kind = InputKind::mode;
  int input_mode = 0;
  std::vector<double> input_coeffs;  // real coefficient list for kind = coeffs
  double input_amplitude = 1.0;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::csv;

  bool operator==(const RunConfig&) const = default;
};

// All defaults resolved against the given cavity (profile n_gamma0 derives
// from the mirror, quadrature size from n_max).
RunConfig default_config(const cavity::CavityParams& p);

// The shipped reference: BiBO at 795 nm (k2 = 136 fs^2/mm, L = 2 mm,
// sqrt(R) = 0.9, 76 MHz round trip, 1 ps input pulses).
RunConfig reference_config();

RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

// Canonical form; load(emit(c)) == c, field for field.
std::string emit_config(const RunConfig& c);

}  // namespace dispcav::cfg
