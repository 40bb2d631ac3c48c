#include "flsuite/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>

#include "flsuite/experiment.hpp"
#include "flsuite/io.hpp"
#include "flsuite/legendre.hpp"
#include "flsuite/spectral.hpp"
#include "flsuite/variation.hpp"

namespace flsuite::cli {

namespace {

using harness::ConfigError;
using nlohmann::ordered_json;

struct FunctionArgs {
  std::string fn;
  std::vector<std::string> params;
};

void add_function_flags(CLI::App* cmd, FunctionArgs& args) {
  cmd->add_option("--fn", args.fn, "Corpus function name")->required();
  cmd->add_option("--param", args.params, "Function parameter key=value (repeatable)");
}

harness::TestFunction load_function(const FunctionArgs& args) {
  harness::Params params;
  for (const auto& kv : args.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--param", "expected key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = harness::parse_real("--param", kv.substr(eq + 1));
  }
  try {
    return harness::corpus(args.fn, params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(args.params.empty() ? "--fn" : "--fn/--param", e.what());
  }
}

int positive_int(const std::string& flag, const std::string& text, int min = 1) {
  const long long v = harness::parse_integer(flag, text);
  if (v < min || v > 1'000'000)
    throw ConfigError(flag, "must be an integer >= " + std::to_string(min));
  return static_cast<int>(v);
}

double open_unit(const std::string& flag, const std::string& text) {
  const double v = harness::parse_real(flag, text);
  if (!(v > 0.0 && v < 1.0)) throw ConfigError(flag, "must lie in (0,1)");
  return v;
}

double in_square(const std::string& flag, const std::string& text) {
  const double v = harness::parse_real(flag, text);
  if (!(v >= -1.0 && v <= 1.0)) throw ConfigError(flag, "must lie in [-1,1]");
  return v;
}

void emit(const std::string& out_path, const std::string& content, std::ostream& out) {
  if (out_path.empty())
    out << content;
  else
    io::write_file(out_path, content);
}

// ---------------------------------------------------------------------------

struct CoeffsArgs {
  FunctionArgs f;
  std::string n = "8", m = "8", quad = "0", out;
};

void run_coeffs(const CoeffsArgs& a, std::ostream& out) {
  const auto f = load_function(a.f);
  const int N = positive_int("--N", a.n);
  const int M = positive_int("--M", a.m);
  int q = positive_int("--quad", a.quad, 0);
  if (q == 0) q = spectral::default_quad_order(N, M, f.has_kink);
  const auto coeffs = spectral::coefficients(f.evaluate, N, M, legendre::gauss_rule(q));
  emit(a.out, io::coefficients_csv(coeffs), out);
}

struct PartialSumArgs {
  FunctionArgs f;
  std::string n = "8", m = "8", x, y, quad = "0", path = "both", out;
};

void run_partial_sum(const PartialSumArgs& a, std::ostream& out) {
  const auto f = load_function(a.f);
  const int N = positive_int("--N", a.n);
  const int M = positive_int("--M", a.m);
  const double x = in_square("--x", a.x);
  const double y = in_square("--y", a.y);
  int q = positive_int("--quad", a.quad, 0);
  if (q == 0) q = spectral::default_quad_order(N, M, f.has_kink);
  if (q < std::max(N, M)) throw ConfigError("--quad", "must be >= max(N, M)");
  if (a.path != "direct" && a.path != "kernel" && a.path != "both")
    throw ConfigError("--path", "expected direct, kernel or both");
  const auto rule = legendre::gauss_rule(q);

  ordered_json j;
  j["kind"] = "partial_sum";
  j["function"] = f.name;
  j["N"] = N;
  j["M"] = M;
  j["x"] = x;
  j["y"] = y;
  j["quad_order"] = q;
  if (a.path != "kernel") {
    const auto coeffs = spectral::coefficients(f.evaluate, N, M, rule);
    j["direct"] = spectral::partial_sum(coeffs, N, M, x, y).value;
  }
  if (a.path != "direct") j["kernel"] = spectral::partial_sum_kernel(f.evaluate, N, M, x, y, rule).value;
  j["f"] = f(x, y);
  emit(a.out, io::dump(j), out);
}

struct VariationArgs {
  FunctionArgs f;
  std::string grid = "9", lambda = "harmonic", delta = "1", table, method = "greedy";
  std::string n_max = "8", delta1 = "0.25", delta2 = "0.25", offset = "0", series_terms = "0", out;
};

void run_variation(const VariationArgs& a, std::ostream& out) {
  const auto f = load_function(a.f);
  const int grid = positive_int("--grid", a.grid, 2);
  const auto method = harness::parse_method("--method", a.method);
  if (method == variation::Method::exhaustive && grid > variation::kExhaustiveMixedCap)
    throw ConfigError("--grid", "exhaustive method allows at most " +
                                    std::to_string(variation::kExhaustiveMixedCap) + " points");
  const auto table = harness::parse_double_list("--table", a.table);
  const auto lam = harness::make_lambda("--lambda", a.lambda, harness::parse_real("--delta", a.delta), table);
  const int n_max = positive_int("--n-max", a.n_max);
  const double d1 = harness::parse_real("--delta1", a.delta1);
  const double d2 = harness::parse_real("--delta2", a.delta2);
  if (!(d1 > 0.0)) throw ConfigError("--delta1", "must be > 0");
  if (!(d2 > 0.0)) throw ConfigError("--delta2", "must be > 0");
  const int offset = positive_int("--offset", a.offset, 0);
  const int terms = positive_int("--series-terms", a.series_terms, 0);
  if (terms != 0 && terms < 10) throw ConfigError("--series-terms", "must be 0 or >= 10");

  const auto nodes = variation::uniform_grid(grid);
  const auto g = variation::GridFunction2D::sample(f.evaluate, nodes, nodes);
  const auto report = variation::variation_report(g, lam, method, n_max, d1, d2);
  ordered_json j = io::to_json(report, f.name);
  if (offset > 0) {
    const auto shifted = lam.with_offset(static_cast<std::size_t>(offset));
    auto tail = [&](variation::TailTarget t) {
      const auto v = variation::shifted_tail_variation(g, shifted, t, method);
      return ordered_json{{"value", v.value}, {"method", io::method_label(v)}};
    };
    j["shifted_tail"] = {{"offset", offset},
                         {"axis1", tail(variation::TailTarget::axis1)},
                         {"axis2", tail(variation::TailTarget::axis2)},
                         {"mixed", tail(variation::TailTarget::mixed)}};
  }
  if (terms > 0)
    j["series"] = io::to_json(variation::series_conditions(lam, &g, static_cast<std::size_t>(terms)));
  emit(a.out, io::dump(j), out);
}

struct ConvergeArgs {
  FunctionArgs f;
  std::string sizes, eps = "0.25", grid = "41", quad = "0", out;
  bool timing = false;
};

void run_converge(const ConvergeArgs& a, std::ostream& out) {
  const auto f = load_function(a.f);
  const auto sizes = harness::parse_int_list("--sizes", a.sizes);
  if (sizes.empty()) throw ConfigError("--sizes", "must be nonempty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ConfigError("--sizes", "values must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ConfigError("--sizes", "values must be strictly increasing");
  }
  const double eps = open_unit("--eps", a.eps);
  const int grid = positive_int("--grid", a.grid, 2);
  const int quad = positive_int("--quad", a.quad, 0);
  const auto table = harness::run_convergence(f, eps, sizes, grid, {quad}, a.timing);
  emit(a.out, io::convergence_csv(table), out);
}

struct VerifyArgs {
  std::string n_list = "8,16,32,64,128", samples = "200", eps = "0.1", seed = "1", estimates, out;
};

void run_verify(const VerifyArgs& a, std::ostream& out) {
  const auto n_list = harness::parse_int_list("--n-list", a.n_list);
  if (n_list.empty()) throw ConfigError("--n-list", "must be nonempty");
  for (int n : n_list)
    if (n < 1) throw ConfigError("--n-list", "values must be positive");
  const int samples = positive_int("--samples", a.samples, 10);
  const double eps = open_unit("--eps", a.eps);
  const long long seed = harness::parse_integer("--seed", a.seed);
  if (seed < 0) throw ConfigError("--seed", "must be >= 0");
  std::vector<harness::Estimate> which{harness::kAllEstimates.begin(), harness::kAllEstimates.end()};
  if (!a.estimates.empty()) which = harness::parse_estimates("--estimates", a.estimates);
  const auto reports = harness::verify_kernel_estimates(n_list, samples, eps,
                                                        static_cast<std::uint64_t>(seed), which);
  emit(a.out, io::dump(io::to_json(reports, samples, eps, static_cast<std::uint64_t>(seed))), out);
}

struct RunArgs {
  std::string config, out;
};

void run_batch(const RunArgs& a, std::ostream& out) {
  const std::string text = io::read_file(a.config);
  harness::ExperimentConfig cfg = harness::parse_config(text);
  if (!a.out.empty()) cfg.out = a.out;
  const auto artifacts = harness::run_experiment(cfg);
  out << "wrote " << artifacts.files.size() << " artifact(s) to " << artifacts.dir.string() << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double Fourier-Legendre analysis and generalized variation toolkit", "flsuite"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  CoeffsArgs coeffs;
  auto* c = app.add_subcommand("coeffs", "Fourier-Legendre coefficient table (CSV n,m,value)");
  add_function_flags(c, coeffs.f);
  c->add_option("--N", coeffs.n, "x modes");
  c->add_option("--M", coeffs.m, "y modes");
  c->add_option("--quad", coeffs.quad, "Gauss order (0 = automatic)");
  c->add_option("--out", coeffs.out, "Output file (default stdout)");

  PartialSumArgs ps;
  auto* p = app.add_subcommand("partial-sum", "Rectangular partial sum at one point (JSON)");
  add_function_flags(p, ps.f);
  p->add_option("--N", ps.n, "x modes");
  p->add_option("--M", ps.m, "y modes");
  p->add_option("--x", ps.x, "x coordinate")->required();
  p->add_option("--y", ps.y, "y coordinate")->required();
  p->add_option("--quad", ps.quad, "Gauss order (0 = automatic)");
  p->add_option("--path", ps.path, "direct, kernel or both");
  p->add_option("--out", ps.out, "Output file (default stdout)");

  VariationArgs va;
  auto* v = app.add_subcommand("variation", "Grid-restricted variation report (JSON)");
  add_function_flags(v, va.f);
  v->add_option("--grid", va.grid, "Points per axis on [-1,1]");
  v->add_option("--lambda", va.lambda, "harmonic, constant, power_log or table");
  v->add_option("--delta", va.delta, "power_log exponent offset");
  v->add_option("--table", va.table, "Comma-separated lambda table");
  v->add_option("--method", va.method, "exhaustive or greedy");
  v->add_option("--n-max", va.n_max, "Largest n for the modulus of variation");
  v->add_option("--delta1", va.delta1, "x scale for the moduli of continuity");
  v->add_option("--delta2", va.delta2, "y scale for the moduli of continuity");
  v->add_option("--offset", va.offset, "Shift for tail-variation diagnostics (0 = off)");
  v->add_option("--series-terms", va.series_terms, "Terms for series checks (0 = off)");
  v->add_option("--out", va.out, "Output file (default stdout)");

  ConvergeArgs cv;
  auto* g = app.add_subcommand("converge", "Interior sup-error table (CSV)");
  add_function_flags(g, cv.f);
  g->add_option("--sizes", cv.sizes, "Comma-separated increasing truncation orders")->required();
  g->add_option("--eps", cv.eps, "Interior margin");
  g->add_option("--grid", cv.grid, "Lattice points per axis");
  g->add_option("--quad", cv.quad, "Gauss order (0 = automatic)");
  g->add_flag("--timing", cv.timing, "Record wall times (output no longer reproducible)");
  g->add_option("--out", cv.out, "Output file (default stdout)");

  VerifyArgs vk;
  auto* k = app.add_subcommand("verify-kernels", "Empirical constants of the kernel estimates (JSON)");
  k->add_option("--n-list", vk.n_list, "Comma-separated kernel orders");
  k->add_option("--samples", vk.samples, "Sample points per estimate");
  k->add_option("--eps", vk.eps, "Interior margin for sample points");
  k->add_option("--seed", vk.seed, "Sampler seed");
  k->add_option("--estimates", vk.estimates, "Subset of p1,Kn,Kn_lower,Kn_upper,Kn_left_window,Kn_right_window");
  k->add_option("--out", vk.out, "Output file (default stdout)");

  RunArgs ra;
  auto* r = app.add_subcommand("run", "Run a batch described by a config file");
  r->add_option("--config", ra.config, "Config file (key = value lines)")->required();
  r->add_option("--out", ra.out, "Override the run directory");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());  // CLI11 consumes from the back
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (c->parsed()) run_coeffs(coeffs, out);
    else if (p->parsed()) run_partial_sum(ps, out);
    else if (v->parsed()) run_variation(va, out);
    else if (g->parsed()) run_converge(cv, out);
    else if (k->parsed()) run_verify(vk, out);
    else if (r->parsed()) run_batch(ra, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace flsuite::cli
