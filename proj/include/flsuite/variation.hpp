#ifndef FLSUITE_VARIATION_HPP
#define FLSUITE_VARIATION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Generalized bounded-variation functionals of a function sampled on a
// rectangular grid. Every functional is the grid-restricted value: suprema
// range only over intervals whose endpoints are grid points, so each result
// is a lower bound for the continuum quantity.
//
// Interval collections are nonoverlapping in the sense of disjoint open
// interiors; consecutive intervals may share an endpoint.

namespace flsuite::variation {

enum class Axis { x = 1, y = 2 };

enum class Method { exhaustive, greedy_peel };

std::string to_string(Method m);
std::string to_string(Axis a);

/// f sampled on xs × ys, values stored x-major: value(i, j) = f(xs[i], ys[j]).
class GridFunction2D {
 public:
  GridFunction2D(std::vector<double> xs, std::vector<double> ys,
                 std::vector<double> values);

  static GridFunction2D sample(const std::function<double(double, double)>& f,
                               std::vector<double> xs, std::vector<double> ys);

  [[nodiscard]] std::size_t nx() const noexcept { return xs_.size(); }
  [[nodiscard]] std::size_t ny() const noexcept { return ys_.size(); }
  [[nodiscard]] const std::vector<double>& xs() const noexcept { return xs_; }
  [[nodiscard]] const std::vector<double>& ys() const noexcept { return ys_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return values_[i * ys_.size() + j];
  }

  /// Samples along `axis` with the other coordinate fixed at index k.
  [[nodiscard]] std::vector<double> line(Axis axis, std::size_t k) const;
  [[nodiscard]] std::size_t line_count(Axis axis) const noexcept {
    return axis == Axis::x ? ys_.size() : xs_.size();
  }
  [[nodiscard]] std::size_t line_length(Axis axis) const noexcept {
    return axis == Axis::x ? xs_.size() : ys_.size();
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> values_;
};

/// `points` equispaced nodes covering [-1,1].
std::vector<double> uniform_grid(int points);

/// Weight sequence lambda_1, lambda_2, ... with an optional shift so that
/// the k-th weight is lambda_{k+offset}.
class LambdaWeights {
 public:
  enum class Generator { harmonic, constant, power_log, table };

  static LambdaWeights harmonic();
  static LambdaWeights constant();
  /// lambda_k = k / log^{1+delta}(k+1)
  static LambdaWeights power_log(double delta);
  static LambdaWeights table(std::vector<double> values);

  [[nodiscard]] Generator generator() const noexcept { return generator_; }
  [[nodiscard]] double delta() const noexcept { return delta_; }
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
  [[nodiscard]] std::string name() const;

  /// k-th weight (k >= 1) of the shifted sequence.
  [[nodiscard]] double operator()(std::size_t k) const;
  /// Unshifted lambda_k.
  [[nodiscard]] double base(std::size_t k) const;

  [[nodiscard]] LambdaWeights with_offset(std::size_t offset) const;

  /// First `count` weights sorted ascending. For a nondecreasing sequence
  /// this is the prefix itself; otherwise it is the rearrangement that the
  /// supremum over interval orderings selects.
  [[nodiscard]] std::vector<double> weights_for(std::size_t count) const;

  /// Whether lambda_1..lambda_horizon (shifted) is nondecreasing.
  [[nodiscard]] bool nondecreasing_up_to(std::size_t horizon) const;

 private:
  LambdaWeights(Generator g, double delta, std::vector<double> table);

  Generator generator_;
  double delta_ = 0.0;
  std::vector<double> table_;
  std::size_t offset_ = 0;
};

struct Interval {
  int a = 0;
  int b = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

using IntervalSet = std::vector<Interval>;

/// Sorted by left endpoint, a < b, and b_i <= a_{i+1}.
bool is_valid(const IntervalSet& set, int points);

/// Calls `visit` once for every nonempty interval set over `points` grid
/// indices, in lexicographic order of intervals.
void for_each_interval_set(int points,
                           const std::function<void(const IntervalSet&)>& visit);

struct VariationValue {
  double value = 0.0;
  bool exact = true;  // false: a valid lower bound from a heuristic
};

inline constexpr int kExhaustiveLineCap = 12;
inline constexpr int kExhaustiveMixedCap = 9;

/// f(a,c) - f(a,d) - f(b,c) + f(b,d); (a,b) index xs, (c,d) index ys.
double rect_increment(const GridFunction2D& f, std::size_t a, std::size_t b,
                      std::size_t c, std::size_t d);

/// Increment-through-phi. identity gives the modulus of variation and
/// power(p) the partial p-variation.
class Phi {
 public:
  static Phi identity() { return Phi(1.0); }
  static Phi power(double p);
  [[nodiscard]] double operator()(double u) const;
  [[nodiscard]] double exponent() const noexcept { return p_; }
  [[nodiscard]] std::string name() const;

 private:
  explicit Phi(double p) : p_(p) {}
  double p_;
};

/// v(1..n_max) for one line: best sum of phi(|increment|) over at most n
/// interior-disjoint intervals. O(G^2 n) interval-score DP. Sums accumulate
/// left to right along the line.
std::vector<double> max_interval_sums(std::span<const double> values, int n_max,
                                      const Phi& phi);

/// O(G n) DP specialized to phi(u) = u, tracking the sign of the open
/// interval. Agrees with max_interval_sums up to rounding.
std::vector<double> modulus_of_variation_line_signed(std::span<const double> values,
                                                     int n_max);

/// v_j(n, f), n = 1..n_max: per-line DP maximum, then max over lines.
std::vector<double> modulus_of_variation(const GridFunction2D& f, Axis axis, int n_max);

/// Per-n partial phi-variation profile, n = 1..n_max. Nondecreasing in n, so
/// the running maximum coincides with the profile.
std::vector<double> phi_variation_profile(const GridFunction2D& f, const Phi& phi,
                                          Axis axis, int n_max);

double phi_variation(const GridFunction2D& f, const Phi& phi, Axis axis, int n);

/// Sum of increments sorted descending against ascending weights.
double weighted_descending_sum(std::vector<double> increments,
                               const LambdaWeights& lam);

VariationValue lambda_variation_line(std::span<const double> values,
                                     const LambdaWeights& lam, Method method);

VariationValue partial_lambda_variation(const GridFunction2D& f,
                                        const LambdaWeights& lam, Axis axis,
                                        Method method);

/// Best value of sum_ij A[r_i][c_j] / (wx_i wy_j) over row and column
/// orderings, A given row-major (rows × cols), weights ascending. Exact when
/// the smaller side has at most three entries (its permutations are
/// enumerated and the other side sorted); otherwise alternating
/// rearrangement from the marginal-sum sort, which is a lower bound.
struct AssignmentResult {
  double value = 0.0;
  bool exact = true;
};
AssignmentResult best_double_assignment(std::span<const double> a, std::size_t rows,
                                        std::size_t cols, std::span<const double> wx,
                                        std::span<const double> wy);

/// Mixed functional sup over interval sets F (x) and E (y) of
/// sum_i sum_j |f(D_i, J_j)| / (lambda^x_i lambda^y_j).
VariationValue mixed_lambda_variation(const GridFunction2D& f,
                                      const LambdaWeights& lam_x,
                                      const LambdaWeights& lam_y, Method method);

inline VariationValue mixed_lambda_variation(const GridFunction2D& f,
                                             const LambdaWeights& lam, Method method) {
  return mixed_lambda_variation(f, lam, lam, method);
}

struct Moduli {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega12 = 0.0;
};

Moduli moduli_of_continuity(const GridFunction2D& f, double delta1, double delta2);

enum class TailTarget { axis1, axis2, mixed };

/// Functional evaluated with weights lambda_{k+n}, n = lam.offset(). For the
/// mixed target, the larger of the x-shifted and y-shifted values.
VariationValue shifted_tail_variation(const GridFunction2D& f, const LambdaWeights& lam,
                                      TailTarget target, Method method);

struct SeriesTrend {
  std::vector<std::pair<std::size_t, double>> checkpoints;  // (n, partial sum)
  double total = 0.0;
  double last_decade_increment = 0.0;  // sum over n in (n_terms/10, n_terms]
  std::string trend;                   // convergent-trend / divergent-trend / inconclusive
};

struct SeriesReport {
  std::string generator;
  std::size_t n_terms = 0;
  SeriesTrend lambda_series;  // sum lambda_n / n^2
  bool lambda_over_n_nonincreasing = true;
  std::size_t first_violation = 0;  // 0 when none within the horizon
  std::optional<SeriesTrend> modulus_series_x;  // sum sqrt(v_1(n)) / n^{3/2}
  std::optional<SeriesTrend> modulus_series_y;
  std::string verdict_label = "empirical over horizon";
};

inline constexpr double kConvergentIncrement = 1e-4;
inline constexpr double kDivergentIncrement = 0.1;

std::string classify_trend(double last_decade_increment);

SeriesReport series_conditions(const LambdaWeights& lam, const GridFunction2D* f,
                               std::size_t n_terms);

struct VariationReport {
  std::string lambda_name;
  Method method = Method::exhaustive;
  std::size_t nx = 0;
  std::size_t ny = 0;
  VariationValue lambda_v1;
  VariationValue lambda_v2;
  VariationValue lambda_v12;
  std::vector<double> v1;
  std::vector<double> v2;
  double delta1 = 0.0;
  double delta2 = 0.0;
  Moduli omega;
  bool grid_restricted = true;
};

VariationReport variation_report(const GridFunction2D& f, const LambdaWeights& lam,
                                 Method method, int n_max, double delta1, double delta2);

}  // namespace flsuite::variation

#endif  // FLSUITE_VARIATION_HPP
