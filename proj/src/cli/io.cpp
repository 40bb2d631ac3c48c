#include "flsuite/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace flsuite::io {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw FormatError("not a number: '" + std::string(text) + "'");
  return v;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> data_lines(std::string_view text, std::string_view header) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != header)
    throw FormatError("expected header '" + std::string(header) + "'");
  lines.erase(lines.begin());
  return lines;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw FormatError("not an integer: '" + std::string(text) + "'");
  return v;
}

constexpr std::string_view kConvergenceHeader = "N,M,eps,grid_points,sup_error,wall_ms";
constexpr std::string_view kCoefficientHeader = "n,m,value";

}  // namespace

std::string convergence_csv(const harness::ConvergenceTable& table) {
  std::string out(kConvergenceHeader);
  out += '\n';
  for (const auto& r : table.rows) {
    out += std::to_string(r.N) + ',' + std::to_string(r.M) + ',' + format_double(r.eps) + ',' +
           std::to_string(r.grid_points) + ',' + format_double(r.sup_error) + ',' +
           format_double(r.wall_ms) + '\n';
  }
  return out;
}

std::vector<harness::ConvergenceRow> parse_convergence_csv(std::string_view text) {
  std::vector<harness::ConvergenceRow> rows;
  for (auto line : data_lines(text, kConvergenceHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 6) throw FormatError("convergence row needs 6 fields: '" + std::string(line) + "'");
    rows.push_back({parse_int(f[0]), parse_int(f[1]), parse_double(f[2]), parse_int(f[3]),
                    parse_double(f[4]), parse_double(f[5])});
  }
  return rows;
}

std::string coefficients_csv(const spectral::CoefficientMatrix& coeffs) {
  std::string out(kCoefficientHeader);
  out += '\n';
  for (int n = 0; n < coeffs.N(); ++n)
    for (int m = 0; m < coeffs.M(); ++m)
      out += std::to_string(n) + ',' + std::to_string(m) + ',' + format_double(coeffs(n, m)) + '\n';
  return out;
}

spectral::CoefficientMatrix parse_coefficients_csv(std::string_view text, int quad_order) {
  struct Entry {
    int n, m;
    double v;
  };
  std::vector<Entry> entries;
  int N = 0;
  int M = 0;
  for (auto line : data_lines(text, kCoefficientHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 3) throw FormatError("coefficient row needs 3 fields");
    Entry e{parse_int(f[0]), parse_int(f[1]), parse_double(f[2])};
    if (e.n < 0 || e.m < 0) throw FormatError("negative coefficient index");
    N = std::max(N, e.n + 1);
    M = std::max(M, e.m + 1);
    entries.push_back(e);
  }
  if (entries.size() != static_cast<std::size_t>(N) * static_cast<std::size_t>(M))
    throw FormatError("coefficient table is not a full N x M block");
  std::vector<double> values(entries.size(), 0.0);
  for (const auto& e : entries)
    values[static_cast<std::size_t>(e.n) * static_cast<std::size_t>(M) + static_cast<std::size_t>(e.m)] = e.v;
  return spectral::CoefficientMatrix(N, M, quad_order, std::move(values));
}

std::string method_label(const variation::VariationValue& v) {
  return v.exact ? "exact" : "heuristic-lower-bound";
}

namespace {

ordered_json value_json(const variation::VariationValue& v) {
  return ordered_json{{"value", v.value}, {"method", method_label(v)}};
}

variation::VariationValue value_from_json(const ordered_json& j) {
  const std::string m = j.at("method").get<std::string>();
  if (m != "exact" && m != "heuristic-lower-bound") throw FormatError("unknown method '" + m + "'");
  return {j.at("value").get<double>(), m == "exact"};
}

ordered_json trend_json(const variation::SeriesTrend& t) {
  ordered_json cps = ordered_json::array();
  for (const auto& [n, s] : t.checkpoints) cps.push_back({{"n", n}, {"partial_sum", s}});
  return {{"checkpoints", cps},
          {"total", t.total},
          {"last_decade_increment", t.last_decade_increment},
          {"trend", t.trend}};
}

}  // namespace

ordered_json to_json(const variation::VariationReport& r, const std::string& function) {
  ordered_json j;
  j["kind"] = "variation_report";
  j["function"] = function;
  j["grid"] = {{"nx", r.nx}, {"ny", r.ny}};
  j["grid_restricted"] = r.grid_restricted;
  j["lambda"] = r.lambda_name;
  j["method_requested"] = variation::to_string(r.method);
  j["lambda_v1"] = value_json(r.lambda_v1);
  j["lambda_v2"] = value_json(r.lambda_v2);
  j["lambda_v12"] = value_json(r.lambda_v12);
  j["v1"] = r.v1;
  j["v2"] = r.v2;
  j["moduli"] = {{"delta1", r.delta1},
                 {"delta2", r.delta2},
                 {"omega1", r.omega.omega1},
                 {"omega2", r.omega.omega2},
                 {"omega12", r.omega.omega12}};
  return j;
}

variation::VariationReport variation_report_from_json(const ordered_json& j) {
  try {
    if (j.at("kind") != "variation_report") throw FormatError("not a variation report");
    variation::VariationReport r;
    r.lambda_name = j.at("lambda").get<std::string>();
    const std::string m = j.at("method_requested").get<std::string>();
    r.method = m == "exhaustive" ? variation::Method::exhaustive : variation::Method::greedy_peel;
    r.nx = j.at("grid").at("nx").get<std::size_t>();
    r.ny = j.at("grid").at("ny").get<std::size_t>();
    r.grid_restricted = j.at("grid_restricted").get<bool>();
    r.lambda_v1 = value_from_json(j.at("lambda_v1"));
    r.lambda_v2 = value_from_json(j.at("lambda_v2"));
    r.lambda_v12 = value_from_json(j.at("lambda_v12"));
    r.v1 = j.at("v1").get<std::vector<double>>();
    r.v2 = j.at("v2").get<std::vector<double>>();
    const auto& mod = j.at("moduli");
    r.delta1 = mod.at("delta1").get<double>();
    r.delta2 = mod.at("delta2").get<double>();
    r.omega = {mod.at("omega1").get<double>(), mod.at("omega2").get<double>(),
               mod.at("omega12").get<double>()};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("variation report: ") + e.what());
  }
}

ordered_json to_json(const variation::SeriesReport& r) {
  ordered_json j;
  j["kind"] = "series_conditions";
  j["generator"] = r.generator;
  j["n_terms"] = r.n_terms;
  j["verdict_label"] = r.verdict_label;
  j["lambda_series"] = trend_json(r.lambda_series);
  j["lambda_over_n_nonincreasing"] = r.lambda_over_n_nonincreasing;
  j["first_violation"] = r.first_violation;
  if (r.modulus_series_x) j["modulus_series_x"] = trend_json(*r.modulus_series_x);
  if (r.modulus_series_y) j["modulus_series_y"] = trend_json(*r.modulus_series_y);
  return j;
}

ordered_json to_json(const std::vector<harness::KernelEstimateReport>& reports, int samples,
                     double eps, std::uint64_t seed) {
  ordered_json j;
  j["kind"] = "kernel_estimates";
  j["samples"] = samples;
  j["eps"] = eps;
  j["seed"] = seed;
  ordered_json list = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json c = ordered_json::array();
    for (const auto& [n, v] : r.c_emp) c.push_back({{"n", n}, {"c_emp", v}});
    list.push_back({{"id", harness::to_string(r.id)},
                    {"sample_description", r.sample_description},
                    {"c_emp", c}});
  }
  j["estimates"] = list;
  return j;
}

std::vector<harness::KernelEstimateReport> kernel_reports_from_json(const ordered_json& j) {
  try {
    std::vector<harness::KernelEstimateReport> out;
    for (const auto& e : j.at("estimates")) {
      harness::KernelEstimateReport r;
      const auto id = harness::parse_estimate(e.at("id").get<std::string>());
      if (!id) throw FormatError("unknown estimate id");
      r.id = *id;
      r.sample_description = e.at("sample_description").get<std::string>();
      for (const auto& c : e.at("c_emp"))
        r.c_emp.emplace_back(c.at("n").get<int>(), c.at("c_emp").get<double>());
      out.push_back(std::move(r));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("kernel report: ") + e.what());
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace flsuite::io
