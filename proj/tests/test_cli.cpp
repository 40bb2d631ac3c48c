#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "flsuite/cli.hpp"
#include "flsuite/io.hpp"

using namespace flsuite;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "flsuite");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "flsuite_cli" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("converge writes a one-row table") {
  const auto dir = scratch("converge");
  const auto r = run({"converge", "--fn", "constant", "--sizes", "2", "--eps", "0.25", "--grid", "11", "--out",
                      (dir / "t.csv").string()});
  REQUIRE(r.code == 0);
  const std::string text = io::read_file(dir / "t.csv");
  CHECK(text.rfind("N,M,eps,grid_points,sup_error,wall_ms\n", 0) == 0);
  const auto rows = io::parse_convergence_csv(text);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].N == 2);
  CHECK(rows[0].grid_points == 11);
  CHECK(rows[0].sup_error <= 1e-12);
}

TEST_CASE("variation of a separable function has no mixed part") {
  const auto dir = scratch("variation");
  const auto r = run({"variation", "--fn", "abs_sum", "--grid", "9", "--lambda", "harmonic", "--method",
                      "exhaustive", "--out", (dir / "v.json").string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(io::read_file(dir / "v.json"));
  CHECK(j["kind"] == "variation_report");
  CHECK(j["lambda_v12"]["value"].get<double>() == 0.0);
  CHECK(j["lambda_v12"]["method"] == "exact");
  CHECK(j["lambda_v1"]["method"] == "exact");
  CHECK(j["grid_restricted"] == true);

  const auto greedy = run({"variation", "--fn", "smooth_osc", "--grid", "7"});
  REQUIRE(greedy.code == 0);
  const auto g = nlohmann::ordered_json::parse(greedy.out);
  CHECK(g["lambda_v1"]["method"] == "heuristic-lower-bound");
  CHECK(g["lambda_v12"]["method"] == "heuristic-lower-bound");
}

TEST_CASE("variation report round trip") {
  const auto r = run({"variation", "--fn", "smooth_osc", "--grid", "6", "--method", "exhaustive", "--n-max", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  const auto report = io::variation_report_from_json(j);
  CHECK(io::dump(io::to_json(report, j["function"].get<std::string>())) == r.out);
  CHECK(report.v1.size() == 3);
}

TEST_CASE("variation diagnostics") {
  const auto r = run({"variation", "--fn", "xy", "--grid", "5", "--method", "exhaustive", "--offset", "4",
                      "--series-terms", "1000"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["shifted_tail"]["offset"] == 4);
  CHECK(j["shifted_tail"]["mixed"]["value"].get<double>() < j["lambda_v12"]["value"].get<double>());
  CHECK(j["series"]["verdict_label"] == "empirical over horizon");
}

TEST_CASE("coefficient table round trip") {
  const auto r = run({"coeffs", "--fn", "xy", "--N", "3", "--M", "2", "--quad", "8"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,m,value\n", 0) == 0);
  const auto c = io::parse_coefficients_csv(r.out, 8);
  CHECK(c.N() == 3);
  CHECK(c.M() == 2);
  CHECK(c(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(io::coefficients_csv(c) == r.out);
}

TEST_CASE("partial-sum reports both paths") {
  const auto r = run({"partial-sum", "--fn", "xy", "--N", "2", "--M", "2", "--x", "0.3", "--y", "-0.4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["direct"].get<double>() == doctest::Approx(-0.12).epsilon(1e-13));
  CHECK(j["kernel"].get<double>() == doctest::Approx(-0.12).epsilon(1e-10));
  CHECK(j["f"].get<double>() == doctest::Approx(-0.12));
  const auto d = nlohmann::ordered_json::parse(
      run({"partial-sum", "--fn", "xy", "--x", "0", "--y", "0", "--path", "direct"}).out);
  CHECK_FALSE(d.contains("kernel"));
}

TEST_CASE("verify-kernels output round trip and determinism") {
  const std::vector<std::string> args{"verify-kernels", "--n-list", "8,16", "--samples", "20", "--seed", "3"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::ordered_json::parse(a.out);
  CHECK(j["kind"] == "kernel_estimates");
  const auto reports = io::kernel_reports_from_json(j);
  CHECK(reports.size() == 6);
  CHECK(io::dump(io::to_json(reports, 20, 0.1, 3)) == a.out);
}

TEST_CASE("converge output is reproducible") {
  const std::vector<std::string> args{"converge", "--fn", "abs_sum", "--sizes", "4,8", "--grid", "11"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(args).out);
  const auto rows = io::parse_convergence_csv(a.out);
  CHECK(rows.size() == 2);
  for (const auto& row : rows) CHECK(row.wall_ms == 0.0);
}

TEST_CASE("run subcommand") {
  const auto dir = scratch("batch");
  io::write_file(dir / "cfg.txt", "out = " + (dir / "run").string() + "\nexperiments = converge\nfn = constant\nsizes = 2\ngrid = 11\n");
  const auto r = run({"run", "--config", (dir / "cfg.txt").string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "run" / "manifest.json"));
  CHECK(fs::exists(dir / "run" / "convergence_constant.csv"));

  const auto over = run({"run", "--config", (dir / "cfg.txt").string(), "--out", (dir / "other").string()});
  CHECK(over.code == 0);
  CHECK(fs::exists(dir / "other" / "manifest.json"));
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}).code == 0);
  const auto sub = run({"converge", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--sizes") != std::string::npos);
}

TEST_CASE("exit code matrix") {
  const auto dir = scratch("errors");
  io::write_file(dir / "bad.cfg", "out = x\nexperiments =\nsizes = 0\n");
  io::write_file(dir / "unknown.cfg", "out = x\nexperiments =\nsizez = 4\n");
  struct Case {
    std::vector<std::string> args;
    int code;
    std::string mention;
  };
  const std::vector<Case> cases{
      {{"converge", "--fn", "abs_sum", "--sizes", "-4"}, 1, "--sizes"},
      {{"converge", "--fn", "abs_sum", "--sizes", "8,4"}, 1, "--sizes"},
      {{"converge", "--fn", "abs_sum", "--sizes", "4,x"}, 1, "--sizes"},
      {{"converge", "--fn", "abs_sum"}, 1, "--sizes"},
      {{"converge", "--fn", "abs_sum", "--sizes", "4", "--eps", "1"}, 1, "--eps"},
      {{"converge", "--fn", "nope", "--sizes", "4"}, 1, "--fn"},
      {{"converge", "--fn", "abs_sum", "--sizes", "4", "--grid", "1"}, 1, "--grid"},
      {{"coeffs", "--fn", "xy", "--N", "0"}, 1, "--N"},
      {{"coeffs", "--fn", "xy", "--param", "c"}, 1, "--param"},
      {{"coeffs", "--fn", "constant", "--param", "c=abc"}, 1, "--param"},
      {{"coeffs", "--fn", "xy", "--param", "c=1"}, 1, "--fn"},
      {{"partial-sum", "--fn", "xy", "--x", "2", "--y", "0"}, 1, "--x"},
      {{"partial-sum", "--fn", "xy", "--x", "0", "--y", "0", "--path", "sideways"}, 1, "--path"},
      {{"partial-sum", "--fn", "xy", "--x", "0", "--y", "0", "--N", "9", "--quad", "4"}, 1, "--quad"},
      {{"variation", "--fn", "xy", "--grid", "10", "--method", "exhaustive"}, 1, "--grid"},
      {{"variation", "--fn", "xy", "--method", "random"}, 1, "--method"},
      {{"variation", "--fn", "xy", "--lambda", "table", "--table", "0.5,2"}, 1, "--lambda"},
      {{"variation", "--fn", "xy", "--delta1", "0"}, 1, "--delta1"},
      {{"variation", "--fn", "xy", "--series-terms", "5"}, 1, "--series-terms"},
      {{"verify-kernels", "--samples", "3"}, 1, "--samples"},
      {{"verify-kernels", "--n-list", "0,8"}, 1, "--n-list"},
      {{"verify-kernels", "--estimates", "Kx"}, 1, "--estimates"},
      {{"verify-kernels", "--seed", "-1"}, 1, "--seed"},
      {{"run", "--config", (dir / "bad.cfg").string()}, 1, "sizes"},
      {{"run", "--config", (dir / "unknown.cfg").string()}, 1, "sizez"},
      {{"run", "--config", (dir / "missing.cfg").string()}, 2, ""},
      {{"frobnicate"}, 1, ""},
      {{}, 1, ""},
      {{"coeffs", "--fn", "xy", "--bogus"}, 1, ""},
  };
  for (const auto& c : cases) {
    const auto r = run(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    CHECK_MESSAGE(r.code == c.code, joined << "-> " << r.code << " " << r.err);
    CHECK_MESSAGE(r.err.find(c.mention) != std::string::npos, joined << "-> " << r.err);
    CHECK_MESSAGE(r.out.empty(), joined);
  }
}

TEST_CASE("csv and float formatting") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1e-300) == "1e-300");
  CHECK(io::parse_double(io::format_double(2.0 / 3.0)) == 2.0 / 3.0);
  CHECK_THROWS(io::parse_double("1.5x"));
  CHECK_THROWS(io::parse_convergence_csv("N,M\n1,2\n"));

  harness::ConvergenceTable t{"f", 0.25, 0, {{4, 4, 0.25, 41, 0.125, 0.0}, {8, 8, 0.25, 41, 1.0 / 3.0, 0.0}}};
  const auto rows = io::parse_convergence_csv(io::convergence_csv(t));
  CHECK(rows == t.rows);
}
