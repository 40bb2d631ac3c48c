#ifndef FLSUITE_HARNESS_HPP
#define FLSUITE_HARNESS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flsuite/spectral.hpp"

namespace flsuite::harness {

using Params = std::map<std::string, double>;

struct ClassTag {
  std::string tag;
  std::string rationale;
};

/// A named member of the test-function corpus. Class tags are declared by
/// construction argument, not verified.
struct TestFunction {
  std::string name;
  Params params;
  spectral::Function2D evaluate;
  std::vector<ClassTag> classes;
  bool has_kink = false;

  [[nodiscard]] bool has_class(std::string_view tag) const;
  double operator()(double x, double y) const { return evaluate(x, y); }
};

/// Throws std::invalid_argument for unknown names or parameters.
TestFunction corpus(const std::string& name, const Params& params = {});

std::vector<std::string> corpus_names();

/// Takagi-type partial sum on [-1,1]: sum_{k<levels} 2^{-k/p} dist(2^k (x+1)/2, Z).
double takagi_partial(double x, double p, int levels);

struct QuadOrderPolicy {
  int fixed = 0;  // 0 selects spectral::default_quad_order
  [[nodiscard]] int order_for(int N, int M, bool has_kink) const;
};

struct ConvergenceRow {
  int N = 0;
  int M = 0;
  double eps = 0.0;
  int grid_points = 0;
  double sup_error = 0.0;
  double wall_ms = 0.0;
  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceTable {
  std::string function;
  double eps = 0.0;
  int quad_order = 0;
  std::vector<ConvergenceRow> rows;
};

/// Coefficients are computed once at the largest size; each row truncates
/// at (n, n). wall_ms stays 0 unless record_timing is set, so tables are
/// reproducible byte for byte by default.
ConvergenceTable run_convergence(const TestFunction& f, double eps,
                                 const std::vector<int>& sizes, int grid_points,
                                 QuadOrderPolicy policy = {}, bool record_timing = false);

enum class Estimate { p1, Kn, Kn_lower, Kn_upper, Kn_left_window, Kn_right_window };

inline constexpr std::array<Estimate, 6> kAllEstimates = {
    Estimate::p1,       Estimate::Kn,           Estimate::Kn_lower,
    Estimate::Kn_upper, Estimate::Kn_left_window, Estimate::Kn_right_window};

std::string to_string(Estimate e);
std::optional<Estimate> parse_estimate(std::string_view name);

struct KernelEstimateReport {
  Estimate id = Estimate::p1;
  std::vector<std::pair<int, double>> c_emp;  // (n, max ratio)
  std::string sample_description;
};

/// Two-dimensional Kronecker (R2) sequence with a seeded Cranley-Patterson
/// shift. Output depends only on the seed.
class LowDiscrepancy {
 public:
  explicit LowDiscrepancy(std::uint64_t seed);
  std::array<double, 2> next();

 private:
  std::array<double, 2> shift_{};
  std::uint64_t index_ = 0;
};

/// Left side of an estimate divided by its right side with the absolute
/// constant removed. `s` is the second coordinate (t for Kn, s for the tail
/// integrals) and is ignored by p1 and the window estimates.
double estimate_ratio(Estimate e, int n, double x, double s);

/// Integral of |K_n(x,t)| over [lo, hi] by composite Gauss quadrature.
double abs_kernel_integral(int n, double x, double lo, double hi, int panels);

std::vector<KernelEstimateReport> verify_kernel_estimates(
    const std::vector<int>& n_list, int samples, double eps, std::uint64_t seed,
    const std::vector<Estimate>& which = {kAllEstimates.begin(), kAllEstimates.end()});

}  // namespace flsuite::harness

#endif  // FLSUITE_HARNESS_HPP
