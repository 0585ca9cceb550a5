#include "dispcav/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "dispcav/hg_basis.hpp"

namespace dispcav::cfg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    fail(origin, line, "field " + key + ": expected a number, got '" + value + "'");
  return v;
}

int parse_int(const std::string& origin, int line, const std::string& key,
              const std::string& value) {
  const double v = parse_double(origin, line, key, value);
  if (v != std::floor(v))
    fail(origin, line, "field " + key + ": expected an integer, got '" + value + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& origin, int line, const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(origin, line, key, trim(item)));
  if (out.empty()) fail(origin, line, "field " + key + ": expected a comma-separated list");
  return out;
}

struct RawEntry {
  std::string value;
  int line = 0;
};

const char* kKnownKeys[] = {
    "cavity.sqrt_r",       "cavity.length_mm",     "cavity.round_trip_time_fs",
    "cavity.k2_fs2_per_mm", "cavity.tau_s_fs",
    "profile.kind",        "profile.n_gamma0",     "profile.beta",       "profile.table",
    "basis.n_max",         "basis.q",
    "solver.m_max",        "solver.tol",
    "material.a0",         "material.a1_um2",      "material.c1_um2",
    "material.a2_per_um2", "material.lambda_min_um", "material.lambda_max_um",
    "material.lambda0_um",
    "input.kind",          "input.mode",           "input.coeffs",       "input.amplitude",
    "output.directory",    "output.format",
};

}  // namespace

RunConfig default_config(const cavity::CavityParams& p) {
  RunConfig c;
  c.cavity = p;
  c.profile.kind = series::DecayKind::constant;
  c.profile.n_gamma0 = cavity::n_gamma(p.sqrt_r);
  c.profile.beta = 0.0;
  c.n_max = 32;
  c.profile.n_max = c.n_max;
  c.quadrature_points = hg::default_quadrature_size(c.n_max);
  c.max_terms = 64;
  c.tol = 1e-12;
  c.material = material::bibo();
  c.lambda0_um = 0.795;
  c.input_kind = InputKind::mode;
  c.input_mode = 0;
  c.input_amplitude = 1.0;
  c.output_dir = "out";
  c.format = OutputFormat::csv;
  return c;
}

RunConfig reference_config() {
  // BiBO numbers: 2 mm crystal, 795 nm carrier, 136 fs^2/mm GVD, 76 MHz
  // round trip.  1 ps input pulses keep every mode of the default basis well
  // inside the convergent region (max per-mode ratio ~0.04).
  RunConfig c = default_config(cavity::make_params(0.9, 2.0, 1.3157894736842105e7, 136.0, 1000.0));
  c.profile.n_gamma0 = 4.5;  // sqrt(R)/(2(1-sqrt(R))) at sqrt(R) = 0.9, exactly
  return c;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  std::map<std::string, RawEntry> entries;
  {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      bool known = false;
      for (const char* k : kKnownKeys)
        if (key == k) known = true;
      if (!known) fail(origin, lineno, "unknown key '" + key + "'");
      if (entries.count(key)) fail(origin, lineno, "duplicate key '" + key + "'");
      entries[key] = {value, lineno};
    }
  }

  auto take = [&](const char* key) -> std::optional<RawEntry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    RawEntry e = it->second;
    entries.erase(it);
    return e;
  };
  auto require_double = [&](const char* key) {
    const auto e = take(key);
    if (!e) throw std::invalid_argument(origin + ": missing required field " + key);
    return parse_double(origin, e->line, key, e->value);
  };
  auto opt_double = [&](const char* key, double fallback) {
    const auto e = take(key);
    return e ? parse_double(origin, e->line, key, e->value) : fallback;
  };
  auto opt_int = [&](const char* key, int fallback) {
    const auto e = take(key);
    return e ? parse_int(origin, e->line, key, e->value) : fallback;
  };

  const double sqrt_r = require_double("cavity.sqrt_r");
  const double length = require_double("cavity.length_mm");
  const double t_r = require_double("cavity.round_trip_time_fs");
  const double k2 = require_double("cavity.k2_fs2_per_mm");
  const double tau_s = require_double("cavity.tau_s_fs");
  RunConfig c = default_config(cavity::make_params(sqrt_r, length, t_r, k2, tau_s));

  if (const auto e = take("profile.kind")) {
    if (e->value == "constant") c.profile.kind = series::DecayKind::constant;
    else if (e->value == "linear") c.profile.kind = series::DecayKind::linear;
    else if (e->value == "quadratic") c.profile.kind = series::DecayKind::quadratic;
    else if (e->value == "exponential") c.profile.kind = series::DecayKind::exponential;
    else if (e->value == "table") c.profile.kind = series::DecayKind::table;
    else fail(origin, e->line, "field profile.kind: unknown kind '" + e->value + "'");
  }
  c.profile.n_gamma0 = opt_double("profile.n_gamma0", c.profile.n_gamma0);
  c.profile.beta = opt_double("profile.beta", c.profile.beta);
  if (const auto e = take("profile.table"))
    c.profile.table = parse_list(origin, e->line, "profile.table", e->value);
  else if (c.profile.kind == series::DecayKind::table)
    throw std::invalid_argument(origin + ": missing required field profile.table");

  c.n_max = opt_int("basis.n_max", c.n_max);
  c.profile.n_max = c.n_max;
  if (c.profile.kind == series::DecayKind::table &&
      static_cast<int>(c.profile.table.size()) != c.n_max)
    throw std::invalid_argument(origin + ": profile.table must list exactly basis.n_max values");
  c.quadrature_points = opt_int("basis.q", hg::default_quadrature_size(c.n_max));
  c.max_terms = opt_int("solver.m_max", c.max_terms);
  c.tol = opt_double("solver.tol", c.tol);

  c.material.a0 = opt_double("material.a0", c.material.a0);
  c.material.a1_um2 = opt_double("material.a1_um2", c.material.a1_um2);
  c.material.c1_um2 = opt_double("material.c1_um2", c.material.c1_um2);
  c.material.a2_per_um2 = opt_double("material.a2_per_um2", c.material.a2_per_um2);
  c.material.lambda_min_um = opt_double("material.lambda_min_um", c.material.lambda_min_um);
  c.material.lambda_max_um = opt_double("material.lambda_max_um", c.material.lambda_max_um);
  c.lambda0_um = opt_double("material.lambda0_um", c.lambda0_um);

  if (const auto e = take("input.kind")) {
    if (e->value == "mode") c.input_kind = InputKind::mode;
    else if (e->value == "coeffs") c.input_kind = InputKind::coeffs;
    else fail(origin, e->line, "field input.kind: unknown kind '" + e->value + "'");
  }
  c.input_mode = opt_int("input.mode", c.input_mode);
  if (const auto e = take("input.coeffs"))
    c.input_coeffs = parse_list(origin, e->line, "input.coeffs", e->value);
  else if (c.input_kind == InputKind::coeffs)
    throw std::invalid_argument(origin + ": missing required field input.coeffs");
  c.input_amplitude = opt_double("input.amplitude", c.input_amplitude);

  if (const auto e = take("output.directory")) c.output_dir = e->value;
  if (const auto e = take("output.format")) {
    if (e->value == "csv") c.format = OutputFormat::csv;
    else if (e->value == "json") c.format = OutputFormat::json;
    else fail(origin, e->line, "field output.format: unknown format '" + e->value + "'");
  }

  // cross-field validation
  if (c.n_max < 1 || c.n_max > 256)
    throw std::invalid_argument(origin + ": basis.n_max must lie in [1, 256]");
  if (c.quadrature_points < c.n_max + 4)
    throw std::invalid_argument(origin + ": basis.q must be at least n_max + 4");
  if (c.max_terms < 1) throw std::invalid_argument(origin + ": solver.m_max must be positive");
  if (!(c.tol > 0.0)) throw std::invalid_argument(origin + ": solver.tol must be positive");
  if (c.input_kind == InputKind::mode && (c.input_mode < 0 || c.input_mode > c.n_max - 4))
    throw std::invalid_argument(origin +
                                ": input.mode must lie in [0, n_max - 4] (series ladder buffer)");
  if (c.input_kind == InputKind::coeffs &&
      static_cast<int>(c.input_coeffs.size()) > c.n_max - 3)
    throw std::invalid_argument(origin + ": input.coeffs may populate modes <= n_max - 4 only");
  series::decay_numbers(c.profile);  // positivity
  material::refractive_index(c.material, c.lambda0_um);  // lambda0 in range
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not readable: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string emit_config(const RunConfig& c) {
  std::ostringstream out;
  out << "cavity.sqrt_r = " << num(c.cavity.sqrt_r) << "\n";
  out << "cavity.length_mm = " << num(c.cavity.length_mm) << "\n";
  out << "cavity.round_trip_time_fs = " << num(c.cavity.round_trip_fs) << "\n";
  out << "cavity.k2_fs2_per_mm = " << num(c.cavity.gvd_fs2_per_mm) << "\n";
  out << "cavity.tau_s_fs = " << num(c.cavity.pulse_duration_fs) << "\n";
  const char* kind = "constant";
  switch (c.profile.kind) {
    case series::DecayKind::constant: kind = "constant"; break;
    case series::DecayKind::linear: kind = "linear"; break;
    case series::DecayKind::quadratic: kind = "quadratic"; break;
    case series::DecayKind::exponential: kind = "exponential"; break;
    case series::DecayKind::table: kind = "table"; break;
  }
  out << "profile.kind = " << kind << "\n";
  out << "profile.n_gamma0 = " << num(c.profile.n_gamma0) << "\n";
  out << "profile.beta = " << num(c.profile.beta) << "\n";
  if (!c.profile.table.empty()) {
    out << "profile.table = ";
    for (std::size_t i = 0; i < c.profile.table.size(); ++i)
      out << (i ? "," : "") << num(c.profile.table[i]);
    out << "\n";
  }
  out << "basis.n_max = " << c.n_max << "\n";
  out << "basis.q = " << c.quadrature_points << "\n";
  out << "solver.m_max = " << c.max_terms << "\n";
  out << "solver.tol = " << num(c.tol) << "\n";
  out << "material.a0 = " << num(c.material.a0) << "\n";
  out << "material.a1_um2 = " << num(c.material.a1_um2) << "\n";
  out << "material.c1_um2 = " << num(c.material.c1_um2) << "\n";
  out << "material.a2_per_um2 = " << num(c.material.a2_per_um2) << "\n";
  out << "material.lambda_min_um = " << num(c.material.lambda_min_um) << "\n";
  out << "material.lambda_max_um = " << num(c.material.lambda_max_um) << "\n";
  out << "material.lambda0_um = " << num(c.lambda0_um) << "\n";
  out << "input.kind = " << (c.input_kind == InputKind::mode ? "mode" : "coeffs") << "\n";
  out << "input.mode = " << c.input_mode << "\n";
  if (!c.input_coeffs.empty()) {
    out << "input.coeffs = ";
    for (std::size_t i = 0; i < c.input_coeffs.size(); ++i)
      out << (i ? "," : "") << num(c.input_coeffs[i]);
    out << "\n";
  }
  out << "input.amplitude = " << num(c.input_amplitude) << "\n";
  out << "output.directory = " << c.output_dir << "\n";
  out << "output.format = " << (c.format == OutputFormat::csv ? "csv" : "json") << "\n";
  return out.str();
}

}  // namespace dispcav::cfg
