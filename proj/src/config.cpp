#include "helmlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace helmlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

void Config::fail(const std::string& key, const std::string& what) const {
  auto it = lines_.find(key);
  const std::string loc =
      it == lines_.end() ? origin_ : origin_ + ":" + std::to_string(it->second);
  throw ConfigError(loc + ": " + what + " (key '" + key + "')");
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail(key, "missing required key");
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail(key, "trailing characters in number '" + s + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, "not a number: '" + s + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-12) fail(key, "expected an integer");
  return i;
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(key, "expected a boolean, got '" + s + "'");
}

std::vector<double> Config::get_list(const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      fail(key, "list entry is not a number: '" + item + "'");
    }
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
  return has(key) ? get_list(key) : fallback;
}

namespace {

MagneticPotential magnetic_from_config(const Config& cfg) {
  const std::string fam = cfg.get_string("fields.A.family", "zero");
  const double a = cfg.get_double("fields.A.a", 1.0);
  if (fam == "zero") return make_zero_potential();
  if (fam == "constant") return make_constant_field(a);
  if (fam == "gauge") return make_pure_gauge(a);
  if (fam == "azimuthal") return make_azimuthal_singular(a);
  throw ConfigError("unknown magnetic family '" + fam +
                    "' (expected zero|constant|gauge|azimuthal)");
}

ElectricPotential electric_from_config(const Config& cfg,
                                       const AssumptionConstants& cst) {
  const std::string f1 = cfg.get_string("fields.V1.family", "zero");
  const std::string f2 = cfg.get_string("fields.V2.family", "zero");
  ElectricPotential v1;
  if (f1 == "longrange")
    v1 = make_v1_long_range(cfg.get_double("fields.V1.v", 1.0), cst.mu, cst.r0);
  else if (f1 != "zero")
    throw ConfigError("unknown V1 family '" + f1 + "' (expected zero|longrange)");
  ElectricPotential v2;
  if (f2 == "shortrange")
    v2 = make_v2_short_range(cfg.get_double("fields.V2.c", cst.c), cst.mu);
  else if (f2 == "singular")
    v2 = make_v2_singular(cfg.get_double("fields.V2.c", cst.c), cst.alpha, cst.r0);
  else if (f2 != "zero")
    throw ConfigError("unknown V2 family '" + f2 +
                      "' (expected zero|shortrange|singular)");
  return combine_electric(v1, v2);
}

VecC rhs_from_config(const Config& cfg, const Grid& grid) {
  const std::string fam = cfg.get_string("rhs.family", "gaussian");
  const Index N = grid.size();
  VecC f = VecC::Zero(N);
  const VecD& r = grid.radii();
  if (fam == "gaussian") {
    const double w = cfg.get_double("rhs.width", 0.75);
    const double rcut = cfg.get_double("rhs.rcut", 2.0 * w);
    const double amp = cfg.get_double("rhs.amplitude", 1.0);
    for (Index i = 0; i < N; ++i)
      if (r[i] <= rcut) f[i] = amp * std::exp(-r[i] * r[i] / (w * w));
  } else if (fam == "annulus") {
    // Indicator of the unit annulus 1/2 <= |x| <= 1.
    for (Index i = 0; i < N; ++i)
      if (r[i] >= 0.5 && r[i] <= 1.0) f[i] = 1.0;
  } else if (fam == "zero") {
    // homogeneous probe
  } else {
    throw ConfigError("unknown rhs family '" + fam +
                      "' (expected gaussian|annulus|zero)");
  }
  return f;
}

}  // namespace

ExperimentSetup build_setup(const Config& cfg) {
  const int d = cfg.get_int("grid.d");
  const double L = cfg.get_double("grid.L");
  const int n = cfg.get_int("grid.n");
  Grid grid(d, L, n, cfg.get_bool("grid.offset", true));

  AssumptionConstants cst;
  cst.r0 = cfg.get_double("fields.r0", 1.0);
  cst.mu = cfg.get_double("fields.mu", 0.5);
  cst.c = cfg.get_double("fields.c", 1.0);
  cst.alpha = cfg.get_double("fields.alpha", 0.5);
  cst.cstar = cfg.get_double("fields.cstar", 1.0);
  cst.c_div = cfg.get_double("fields.c_div", cst.c_div);

  const MagneticPotential A = magnetic_from_config(cfg);
  const ElectricPotential V = electric_from_config(cfg, cst);
  FieldSet fields = sample_fields(grid, A, V, cst);

  AbsorbingLayerConfig layer;
  layer.width = cfg.get_double("layer.width", 0.25);
  layer.strength = cfg.get_double("layer.strength", 0.0);
  layer.ramp_order = cfg.get_int("layer.order", 3);

  VecC f = rhs_from_config(cfg, grid);

  ExperimentSetup setup{
      make_problem(A.family + "/" + V.family_v1 + "/" + V.family_v2,
                   std::move(grid), std::move(fields), std::move(f), layer),
      {},
      cfg.get_list("run.lambda", {1.0}),
      {},
      cfg.get_list("run.delta", {0.5, 1.0, 1.5}),
      cfg.get_double("run.tol", 1e-8),
      cfg.get_double("run.weight_s", 1.1),
      cfg.get_string("output.dir", "out")};
  setup.schedule.eps0 = cfg.get_double("run.eps0", 0.5);
  setup.schedule.rho = cfg.get_double("run.eps_rho", 0.5);
  setup.schedule.K = cfg.get_int("run.eps_K", 8);
  setup.assumptions = validate_assumptions(setup.problem.fields, setup.problem.grid);
  return setup;
}

}  // namespace helmlab
