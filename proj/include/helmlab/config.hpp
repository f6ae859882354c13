#pragma once

#include <map>
#include <string>
#include <vector>

#include "helmlab/lap.hpp"

namespace helmlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key-value config with dotted section keys:
//   grid.d = 3
//   run.lambda = 1, 4, 16, 64
// '#' starts a comment; keys are unique; every lookup remembers the line it
// came from so diagnostics can point at the offending entry.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
  std::string origin_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

// Everything a run needs, built and validated from a config: grid block,
// field families, right-hand side, layer, and the run parameters.
struct ExperimentSetup {
  Problem problem;
  AssumptionReport assumptions;
  std::vector<double> lambdas;
  EpsilonSchedule schedule;
  std::vector<double> deltas;
  double tol = 1e-8;
  double weight_s = 1.1;
  std::string out_dir = "out";
};

ExperimentSetup build_setup(const Config& cfg);

}  // namespace helmlab
