#include "flsuite/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "flsuite/io.hpp"

namespace flsuite::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  if (trim(s).empty()) return parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(',', start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool parse_bool(const std::string& key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

const std::set<std::string>& known_experiments() {
  static const std::set<std::string> names{"converge", "verify-kernels", "variation", "series"};
  return names;
}

}  // namespace

long long parse_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end)
    throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

double parse_real(const std::string& key, std::string_view text) {
  text = trim(text);
  try {
    const double v = io::parse_double(text);
    if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
    return v;
  } catch (const io::FormatError&) {
    throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
  }
}

std::vector<int> parse_int_list(const std::string& key, std::string_view text) {
  std::vector<int> out;
  for (auto part : split_list(text)) {
    const long long v = parse_integer(key, part);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw ConfigError(key, "value out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& key, std::string_view text) {
  std::vector<double> out;
  for (auto part : split_list(text)) out.push_back(parse_real(key, part));
  return out;
}

variation::Method parse_method(const std::string& key, std::string_view text) {
  text = trim(text);
  if (text == "exhaustive") return variation::Method::exhaustive;
  if (text == "greedy" || text == "greedy_peel") return variation::Method::greedy_peel;
  throw ConfigError(key, "expected exhaustive or greedy, got '" + std::string(text) + "'");
}

std::vector<Estimate> parse_estimates(const std::string& key, std::string_view text) {
  std::vector<Estimate> out;
  for (auto part : split_list(text)) {
    const auto e = parse_estimate(part);
    if (!e) throw ConfigError(key, "unknown estimate '" + std::string(part) + "'");
    out.push_back(*e);
  }
  return out;
}

variation::LambdaWeights make_lambda(const std::string& key, const std::string& name,
                                     double delta, const std::vector<double>& table) {
  try {
    if (name == "harmonic") return variation::LambdaWeights::harmonic();
    if (name == "constant") return variation::LambdaWeights::constant();
    if (name == "power_log") return variation::LambdaWeights::power_log(delta);
    if (name == "table") return variation::LambdaWeights::table(table);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
  throw ConfigError(key, "unknown lambda generator '" + name + "'");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  bool have_experiments = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    std::string_view line = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
    start = pos == std::string_view::npos ? text.size() + 1 : pos + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    cfg.echo.emplace_back(key, std::string(value));

    if (key == "out") {
      cfg.out = std::string(value);
    } else if (key == "seed") {
      const long long v = parse_integer(key, value);
      if (v < 0) throw ConfigError(key, "must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "experiments") {
      have_experiments = true;
      cfg.experiments.clear();
      for (auto e : split_list(value)) {
        if (!known_experiments().contains(std::string(e)))
          throw ConfigError(key, "unknown experiment '" + std::string(e) + "'");
        cfg.experiments.emplace_back(e);
      }
    } else if (key == "fn") {
      cfg.fn = std::string(value);
    } else if (key.starts_with("param.")) {
      cfg.params[key.substr(6)] = parse_real(key, value);
    } else if (key == "sizes") {
      cfg.sizes = parse_int_list(key, value);
    } else if (key == "eps") {
      cfg.eps = parse_real(key, value);
    } else if (key == "grid") {
      cfg.grid = static_cast<int>(parse_integer(key, value));
    } else if (key == "quad") {
      cfg.quad = static_cast<int>(parse_integer(key, value));
    } else if (key == "timing") {
      cfg.timing = parse_bool(key, value);
    } else if (key == "n_list") {
      cfg.n_list = parse_int_list(key, value);
    } else if (key == "samples") {
      cfg.samples = static_cast<int>(parse_integer(key, value));
    } else if (key == "kernel_eps") {
      cfg.kernel_eps = parse_real(key, value);
    } else if (key == "estimates") {
      cfg.estimates = parse_estimates(key, value);
    } else if (key == "lambda") {
      cfg.lambda = std::string(value);
    } else if (key == "delta") {
      cfg.delta = parse_real(key, value);
    } else if (key == "lambda_table") {
      cfg.lambda_table = parse_double_list(key, value);
    } else if (key == "method") {
      cfg.method = parse_method(key, value);
    } else if (key == "var_grid") {
      cfg.var_grid = static_cast<int>(parse_integer(key, value));
    } else if (key == "n_max") {
      cfg.n_max = static_cast<int>(parse_integer(key, value));
    } else if (key == "delta1") {
      cfg.delta1 = parse_real(key, value);
    } else if (key == "delta2") {
      cfg.delta2 = parse_real(key, value);
    } else if (key == "series_terms") {
      const long long v = parse_integer(key, value);
      if (v < 10) throw ConfigError(key, "must be >= 10");
      cfg.series_terms = static_cast<std::size_t>(v);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (!have_experiments) throw ConfigError("experiments", "missing (use an empty value for none)");
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.out.empty()) throw ConfigError("out", "output directory is required");
  if (cfg.sizes.empty()) throw ConfigError("sizes", "must be nonempty");
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] < 1) throw ConfigError("sizes", "values must be positive");
    if (i > 0 && cfg.sizes[i] <= cfg.sizes[i - 1])
      throw ConfigError("sizes", "values must be strictly increasing");
  }
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ConfigError("eps", "must lie in (0,1)");
  if (cfg.grid < 2) throw ConfigError("grid", "must be >= 2");
  if (cfg.quad < 0) throw ConfigError("quad", "must be >= 0 (0 = automatic)");
  if (cfg.n_list.empty()) throw ConfigError("n_list", "must be nonempty");
  for (int n : cfg.n_list)
    if (n < 1) throw ConfigError("n_list", "values must be positive");
  if (cfg.samples < 10) throw ConfigError("samples", "must be >= 10");
  if (!(cfg.kernel_eps > 0.0 && cfg.kernel_eps < 1.0))
    throw ConfigError("kernel_eps", "must lie in (0,1)");
  if (cfg.estimates.empty()) throw ConfigError("estimates", "must name at least one estimate");
  (void)make_lambda("lambda", cfg.lambda, cfg.delta, cfg.lambda_table);
  if (cfg.var_grid < 2) throw ConfigError("var_grid", "must be >= 2");
  if (cfg.method == variation::Method::exhaustive && cfg.var_grid > variation::kExhaustiveMixedCap)
    throw ConfigError("var_grid", "exhaustive method allows at most " +
                                      std::to_string(variation::kExhaustiveMixedCap) +
                                      " points per axis");
  if (cfg.n_max < 1) throw ConfigError("n_max", "must be >= 1");
  if (!(cfg.delta1 > 0.0)) throw ConfigError("delta1", "must be > 0");
  if (!(cfg.delta2 > 0.0)) throw ConfigError("delta2", "must be > 0");
  if (cfg.series_terms < 10) throw ConfigError("series_terms", "must be >= 10");
  try {
    (void)corpus(cfg.fn, cfg.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("fn", e.what());
  }
}

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  using clock = std::chrono::steady_clock;
  RunArtifacts run;
  run.dir = cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(run.dir, ec);
  if (ec) throw io::IoError("cannot create run directory " + run.dir.string() + ": " + ec.message());

  nlohmann::ordered_json wall = nlohmann::ordered_json::object();
  for (const auto& name : cfg.experiments) {
    const auto start = clock::now();
    std::string file;
    std::string content;
    if (name == "converge") {
      const TestFunction f = corpus(cfg.fn, cfg.params);
      const auto table = run_convergence(f, cfg.eps, cfg.sizes, cfg.grid,
                                         QuadOrderPolicy{cfg.quad}, cfg.timing);
      file = "convergence_" + cfg.fn + ".csv";
      content = io::convergence_csv(table);
    } else if (name == "verify-kernels") {
      const auto reports =
          verify_kernel_estimates(cfg.n_list, cfg.samples, cfg.kernel_eps, cfg.seed, cfg.estimates);
      file = "kernel_estimates.json";
      content = io::dump(io::to_json(reports, cfg.samples, cfg.kernel_eps, cfg.seed));
    } else if (name == "variation" || name == "series") {
      const TestFunction f = corpus(cfg.fn, cfg.params);
      const auto grid = variation::uniform_grid(cfg.var_grid);
      const auto g = variation::GridFunction2D::sample(f.evaluate, grid, grid);
      const auto lam = make_lambda("lambda", cfg.lambda, cfg.delta, cfg.lambda_table);
      if (name == "variation") {
        const auto report =
            variation::variation_report(g, lam, cfg.method, cfg.n_max, cfg.delta1, cfg.delta2);
        file = "variation_" + cfg.fn + ".json";
        content = io::dump(io::to_json(report, cfg.fn));
      } else {
        const auto report = variation::series_conditions(lam, &g, cfg.series_terms);
        file = "series_" + cfg.lambda + ".json";
        content = io::dump(io::to_json(report));
      }
    }
    io::write_file(run.dir / file, content);
    run.files.push_back(file);
    if (cfg.timing)
      wall[file] = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = io::kToolName;
  manifest["version"] = io::kToolVersion;
  manifest["seed"] = cfg.seed;
  nlohmann::ordered_json echo = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.echo) echo[k] = v;
  manifest["config"] = echo;
  manifest["experiments"] = cfg.experiments;
  manifest["artifacts"] = run.files;
  if (cfg.timing) manifest["wall_ms"] = wall;
  io::write_file(run.dir / "manifest.json", io::dump(manifest));
  return run;
}

}  // namespace flsuite::harness
