#include "flsuite/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "flsuite/legendre.hpp"
#include "flsuite/parallel.hpp"

namespace flsuite::harness {

int QuadOrderPolicy::order_for(int N, int M, bool has_kink) const {
  return fixed > 0 ? fixed : spectral::default_quad_order(N, M, has_kink);
}

ConvergenceTable run_convergence(const TestFunction& f, double eps,
                                 const std::vector<int>& sizes, int grid_points,
                                 QuadOrderPolicy policy, bool record_timing) {
  if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw std::invalid_argument("sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("sizes must be strictly increasing");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");

  using clock = std::chrono::steady_clock;
  const int top = sizes.back();
  ConvergenceTable table;
  table.function = f.name;
  table.eps = eps;
  table.quad_order = policy.order_for(top, top, f.has_kink);

  const auto start = clock::now();
  const auto rule = legendre::gauss_rule(table.quad_order);
  const auto coeffs = spectral::coefficients(f.evaluate, top, top, rule);
  const double setup_ms =
      std::chrono::duration<double, std::milli>(clock::now() - start).count();

  for (int n : sizes) {
    const auto row_start = clock::now();
    ConvergenceRow row;
    row.N = n;
    row.M = n;
    row.eps = eps;
    row.grid_points = grid_points;
    row.sup_error = spectral::sup_error(f.evaluate, coeffs, n, n, eps, grid_points);
    if (record_timing) {
      row.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - row_start).count();
      if (n == sizes.front()) row.wall_ms += setup_ms;
    }
    table.rows.push_back(row);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Kernel estimates

std::string to_string(Estimate e) {
  switch (e) {
    case Estimate::p1: return "p1";
    case Estimate::Kn: return "Kn";
    case Estimate::Kn_lower: return "Kn_lower";
    case Estimate::Kn_upper: return "Kn_upper";
    case Estimate::Kn_left_window: return "Kn_left_window";
    case Estimate::Kn_right_window: return "Kn_right_window";
  }
  return "?";
}

std::optional<Estimate> parse_estimate(std::string_view name) {
  for (Estimate e : kAllEstimates)
    if (to_string(e) == name) return e;
  return std::nullopt;
}

namespace {

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::string describe(Estimate e, int samples, double eps) {
  const std::string box = "x in [" + std::to_string(-1.0 + eps) + ", " + std::to_string(1.0 - eps) + "]";
  const std::string count = std::to_string(samples) + " R2 samples, ";
  switch (e) {
    case Estimate::p1: return count + box;
    case Estimate::Kn: return count + box + ", t in the same interval";
    case Estimate::Kn_lower: return count + box + ", s in [-1, x)";
    case Estimate::Kn_upper: return count + box + ", s in (x, 1]";
    case Estimate::Kn_left_window: return count + box + ", window [x-(1+x)/n, x], 4n panels";
    case Estimate::Kn_right_window: return count + box + ", window [x, x+(1-x)/n], 4n panels";
  }
  return count;
}

constexpr int kPanelOrder = 8;

}  // namespace

LowDiscrepancy::LowDiscrepancy(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  shift_[0] = unit_from_bits(gen());
  shift_[1] = unit_from_bits(gen());
}

std::array<double, 2> LowDiscrepancy::next() {
  // Plastic-number constants of the R2 sequence.
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g;
  constexpr double a2 = 1.0 / (g * g);
  ++index_;
  const double k = static_cast<double>(index_);
  std::array<double, 2> u{shift_[0] + a1 * k, shift_[1] + a2 * k};
  for (double& v : u) v -= std::floor(v);
  return u;
}

double abs_kernel_integral(int n, double x, double lo, double hi, int panels) {
  if (panels < 1) throw std::invalid_argument("panels must be >= 1");
  if (!(lo < hi)) return 0.0;
  static const legendre::QuadratureRule base = legendre::gauss_rule(kPanelOrder);
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + width * p;
    const auto sub = legendre::map_rule(base, a, p + 1 == panels ? hi : a + width);
    for (std::size_t i = 0; i < sub.order(); ++i)
      total += sub.weights[i] * std::abs(legendre::kernel_direct(n, x, sub.nodes[i]));
  }
  return total;
}

double estimate_ratio(Estimate e, int n, double x, double s) {
  const double wx = std::pow(1.0 - x * x, 0.25);
  switch (e) {
    case Estimate::p1:
      return std::abs(legendre::eval(n, x)) * wx;
    case Estimate::Kn: {
      const double k = legendre::kernel(n, x, s).value;
      return std::abs(k) * std::abs(x - s) * wx * std::pow(1.0 - s * s, 0.25);
    }
    case Estimate::Kn_lower: {
      const double integral = legendre::kernel_tail_integral(n, x, s, legendre::Side::left);
      return std::abs(integral) * n * (x - s) * wx;
    }
    case Estimate::Kn_upper: {
      const double integral = legendre::kernel_tail_integral(n, x, s, legendre::Side::right);
      return std::abs(integral) * n * (s - x) * wx;
    }
    case Estimate::Kn_left_window: {
      const double integral = abs_kernel_integral(n, x, x - (1.0 + x) / n, x, 4 * n);
      return integral * std::sqrt(1.0 - x * x) / (1.0 + x);
    }
    case Estimate::Kn_right_window: {
      const double integral = abs_kernel_integral(n, x, x, x + (1.0 - x) / n, 4 * n);
      return integral * std::sqrt(1.0 - x * x) / (1.0 - x);
    }
  }
  throw std::invalid_argument("unknown estimate");
}

std::vector<KernelEstimateReport> verify_kernel_estimates(const std::vector<int>& n_list,
                                                          int samples, double eps,
                                                          std::uint64_t seed,
                                                          const std::vector<Estimate>& which) {
  if (n_list.empty()) throw std::invalid_argument("n_list must be nonempty");
  if (samples < 10) throw std::invalid_argument("samples must be >= 10");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");

  std::vector<KernelEstimateReport> reports;
  for (Estimate e : which) {
    for (int n : n_list) {
      if (n < 0 || (n == 0 && e != Estimate::p1))
        throw std::domain_error("estimate " + to_string(e) + " requires n >= 1, got " +
                                std::to_string(n));
    }

    // Every n sees the same sample points.
    LowDiscrepancy seq(seed);
    std::vector<std::array<double, 2>> points(static_cast<std::size_t>(samples));
    const double lo = -1.0 + eps;
    const double span = 2.0 - 2.0 * eps;
    for (auto& pt : points) {
      const auto u = seq.next();
      const double x = lo + span * u[0];
      double s = 0.0;
      switch (e) {
        case Estimate::Kn: s = lo + span * u[1]; break;
        case Estimate::Kn_lower: s = -1.0 + (x + 1.0) * u[1]; break;
        case Estimate::Kn_upper: s = x + (1.0 - x) * (1.0 - u[1]); break;
        default: break;
      }
      pt = {x, s};
    }

    KernelEstimateReport report;
    report.id = e;
    report.sample_description = describe(e, samples, eps);
    for (int n : n_list) {
      std::vector<double> ratios(points.size(), 0.0);
      parallel_for(points.size(), [&](std::size_t i) {
        const auto [x, s] = points[i];
        if (e == Estimate::Kn && x == s) return;
        ratios[i] = estimate_ratio(e, n, x, s);
      });
      report.c_emp.emplace_back(n, *std::max_element(ratios.begin(), ratios.end()));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace flsuite::harness
