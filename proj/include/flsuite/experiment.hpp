#ifndef FLSUITE_EXPERIMENT_HPP
#define FLSUITE_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flsuite/harness.hpp"
#include "flsuite/variation.hpp"

namespace flsuite::harness {

/// Invalid configuration value; `key()` names the offending key or flag.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Parsed batch configuration. The text form is flat `key = value` lines;
/// `#` starts a comment; function parameters use `param.<name>`.
struct ExperimentConfig {
  std::filesystem::path out;
  std::uint64_t seed = 1;
  std::vector<std::string> experiments;  // converge, verify-kernels, variation, series

  std::string fn = "abs_sum";
  Params params;

  std::vector<int> sizes{4, 8, 16, 32, 64};
  double eps = 0.25;
  int grid = 41;
  int quad = 0;
  bool timing = false;

  std::vector<int> n_list{8, 16, 32, 64, 128};
  int samples = 200;
  double kernel_eps = 0.1;
  std::vector<Estimate> estimates{kAllEstimates.begin(), kAllEstimates.end()};

  std::string lambda = "harmonic";
  double delta = 1.0;
  std::vector<double> lambda_table;
  variation::Method method = variation::Method::greedy_peel;
  int var_grid = 9;
  int n_max = 8;
  double delta1 = 0.25;
  double delta2 = 0.25;
  std::size_t series_terms = 1000000;

  /// Key-value echo in file order, written into the manifest.
  std::vector<std::pair<std::string, std::string>> echo;
};

ExperimentConfig parse_config(std::string_view text);

/// Field parsers shared with the command line; errors name `key`.
std::vector<int> parse_int_list(const std::string& key, std::string_view text);
std::vector<double> parse_double_list(const std::string& key, std::string_view text);
double parse_real(const std::string& key, std::string_view text);
long long parse_integer(const std::string& key, std::string_view text);
variation::Method parse_method(const std::string& key, std::string_view text);
std::vector<Estimate> parse_estimates(const std::string& key, std::string_view text);
variation::LambdaWeights make_lambda(const std::string& key, const std::string& name,
                                     double delta, const std::vector<double>& table);

/// Range checks shared by the CLI and the batch runner.
void validate(const ExperimentConfig& cfg);

struct RunArtifacts {
  std::filesystem::path dir;
  std::vector<std::string> files;  // relative to dir, manifest excluded
};

/// Executes the configured experiments and writes one artifact per
/// experiment plus manifest.json under cfg.out.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

}  // namespace flsuite::harness

#endif  // FLSUITE_EXPERIMENT_HPP
