#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "flsuite/parallel.hpp"
#include "flsuite/variation.hpp"

namespace flsuite::variation {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_line(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("line needs at least two samples");
}

std::vector<double> elementwise_max_over_lines(
    const GridFunction2D& f, Axis axis,
    const std::function<std::vector<double>(const std::vector<double>&)>& per_line) {
  const std::size_t lines = f.line_count(axis);
  std::vector<std::vector<double>> results(lines);
  parallel_for(lines, [&](std::size_t k) { results[k] = per_line(f.line(axis, k)); });
  std::vector<double> out = results.front();
  for (std::size_t k = 1; k < lines; ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], results[k][i]);
  return out;
}

}  // namespace

Phi Phi::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("phi power: p must be >= 1");
  return Phi(p);
}

double Phi::operator()(double u) const { return p_ == 1.0 ? u : std::pow(u, p_); }

std::string Phi::name() const {
  if (p_ == 1.0) return "identity";
  return "power(p=" + std::to_string(p_) + ")";
}

// best[k][j]: largest left-to-right sum over at most k intervals ending at or
// before index j.
std::vector<double> max_interval_sums(std::span<const double> values, int n_max,
                                      const Phi& phi) {
  check_line(values);
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const std::size_t g = values.size();
  std::vector<double> prev(g, 0.0);
  std::vector<double> cur(g, 0.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int k = 1; k <= n_max; ++k) {
    cur[0] = 0.0;
    for (std::size_t j = 1; j < g; ++j) {
      double best = cur[j - 1];
      for (std::size_t i = 0; i < j; ++i)
        best = std::max(best, prev[i] + phi(std::abs(values[j] - values[i])));
      cur[j] = best;
    }
    out.push_back(cur[g - 1]);
    std::swap(prev, cur);
  }
  return out;
}

std::vector<double> modulus_of_variation_line_signed(std::span<const double> values,
                                                     int n_max) {
  check_line(values);
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const auto k_max = static_cast<std::size_t>(n_max);
  // closed[k]: k intervals finished; rising/falling[k]: the k-th interval is
  // open and accumulates +f(end) - f(start) or the reverse.
  std::vector<double> closed(k_max + 1, kNegInf);
  std::vector<double> rising(k_max + 1, kNegInf);
  std::vector<double> falling(k_max + 1, kNegInf);
  closed[0] = 0.0;
  for (double v : values) {
    for (std::size_t k = 1; k <= k_max; ++k)
      closed[k] = std::max({closed[k], rising[k] + v, falling[k] - v});
    for (std::size_t k = 1; k <= k_max; ++k) {
      rising[k] = std::max(rising[k], closed[k - 1] - v);
      falling[k] = std::max(falling[k], closed[k - 1] + v);
    }
  }
  std::vector<double> out(k_max);
  double running = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    running = std::max(running, closed[k]);
    out[k - 1] = running;
  }
  return out;
}

std::vector<double> phi_variation_profile(const GridFunction2D& f, const Phi& phi,
                                          Axis axis, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  return elementwise_max_over_lines(f, axis, [&](const std::vector<double>& line) {
    return max_interval_sums(line, n_max, phi);
  });
}

std::vector<double> modulus_of_variation(const GridFunction2D& f, Axis axis, int n_max) {
  return phi_variation_profile(f, Phi::identity(), axis, n_max);
}

double phi_variation(const GridFunction2D& f, const Phi& phi, Axis axis, int n) {
  return phi_variation_profile(f, phi, axis, n).back();
}

// ---------------------------------------------------------------------------
// Lambda variation

double weighted_descending_sum(std::vector<double> increments, const LambdaWeights& lam) {
  std::sort(increments.begin(), increments.end(), std::greater<>());
  const std::vector<double> w = lam.weights_for(increments.size());
  double total = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) total += increments[i] / w[i];
  return total;
}

namespace {

// Ascending-sorted weight prefixes lambda_1..lambda_k for every k up to a
// bound. A set of k intervals may only use the first k weights, so for a
// non-monotone sequence each size needs its own sort.
class SortedPrefixes {
 public:
  SortedPrefixes(const LambdaWeights& lam, std::size_t max_count) : by_size_(max_count + 1) {
    for (std::size_t k = 1; k <= max_count; ++k) by_size_[k] = lam.weights_for(k);
  }
  [[nodiscard]] const std::vector<double>& operator()(std::size_t k) const { return by_size_[k]; }

 private:
  std::vector<std::vector<double>> by_size_;
};

double exhaustive_line(std::span<const double> values, const LambdaWeights& lam) {
  const int g = static_cast<int>(values.size());
  const SortedPrefixes prefixes(lam, values.size() - 1);
  double best = 0.0;
  std::vector<double> incs;
  for_each_interval_set(g, [&](const IntervalSet& set) {
    incs.clear();
    for (const auto& iv : set)
      incs.push_back(std::abs(values[static_cast<std::size_t>(iv.b)] -
                              values[static_cast<std::size_t>(iv.a)]));
    std::sort(incs.begin(), incs.end(), std::greater<>());
    const std::vector<double>& w = prefixes(incs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < incs.size(); ++i) total += incs[i] / w[i];
    best = std::max(best, total);
  });
  return best;
}

bool interiors_disjoint(const Interval& p, const Interval& q) { return p.b <= q.a || q.b <= p.a; }

struct Candidate {
  double score;
  Interval iv;
};

// All intervals with positive score, sorted by score descending then by
// position.
std::vector<Candidate> ranked_candidates(int points,
                                         const std::function<double(int, int)>& score) {
  std::vector<Candidate> c;
  for (int a = 0; a < points; ++a)
    for (int b = a + 1; b < points; ++b) {
      const double s = score(a, b);
      if (s > 0.0) c.push_back({s, {a, b}});
    }
  std::stable_sort(c.begin(), c.end(),
                   [](const Candidate& l, const Candidate& r) { return l.score > r.score; });
  return c;
}

double greedy_line(std::span<const double> values, const LambdaWeights& lam) {
  const auto ranked = ranked_candidates(static_cast<int>(values.size()), [&](int a, int b) {
    return std::abs(values[static_cast<std::size_t>(b)] - values[static_cast<std::size_t>(a)]);
  });
  std::vector<Interval> chosen;
  std::vector<double> incs;
  for (const auto& c : ranked) {
    if (std::all_of(chosen.begin(), chosen.end(),
                    [&](const Interval& iv) { return interiors_disjoint(iv, c.iv); })) {
      chosen.push_back(c.iv);
      incs.push_back(c.score);
    }
  }
  return weighted_descending_sum(std::move(incs), lam);
}

}  // namespace

VariationValue lambda_variation_line(std::span<const double> values,
                                     const LambdaWeights& lam, Method method) {
  check_line(values);
  if (method == Method::exhaustive) {
    if (values.size() > static_cast<std::size_t>(kExhaustiveLineCap))
      throw std::invalid_argument("exhaustive line variation is limited to " +
                                  std::to_string(kExhaustiveLineCap) + " points");
    return {exhaustive_line(values, lam), true};
  }
  return {greedy_line(values, lam), false};
}

VariationValue partial_lambda_variation(const GridFunction2D& f, const LambdaWeights& lam,
                                        Axis axis, Method method) {
  if (method == Method::exhaustive &&
      f.line_length(axis) > static_cast<std::size_t>(kExhaustiveLineCap))
    throw std::invalid_argument("exhaustive line variation is limited to " +
                                std::to_string(kExhaustiveLineCap) + " points");
  const auto best = elementwise_max_over_lines(f, axis, [&](const std::vector<double>& line) {
    return std::vector<double>{lambda_variation_line(line, lam, method).value};
  });
  return {best.front(), method == Method::exhaustive};
}

// ---------------------------------------------------------------------------
// Mixed functional

namespace {

// Value of the ordering (rows, cols) against ascending weights.
double assignment_value(std::span<const double> a, std::size_t ncols,
                        const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols, std::span<const double> wx,
                        std::span<const double> wy) {
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < cols.size(); ++j) inner += a[rows[i] * ncols + cols[j]] / wy[j];
    total += inner / wx[i];
  }
  return total;
}

// Given a fixed order of the "other" side, the optimal order of this side
// sorts its scores descending.
std::vector<std::size_t> sort_by_scores(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return scores[l] > scores[r]; });
  return order;
}

std::vector<double> row_scores(std::span<const double> a, std::size_t nrows,
                               std::size_t ncols, const std::vector<std::size_t>& cols,
                               std::span<const double> wy) {
  std::vector<double> s(nrows, 0.0);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s[r] += a[r * ncols + cols[j]] / wy[j];
  return s;
}

std::vector<double> col_scores(std::span<const double> a, std::size_t ncols,
                               const std::vector<std::size_t>& rows,
                               std::span<const double> wx) {
  std::vector<double> s(ncols, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < ncols; ++c) s[c] += a[rows[i] * ncols + c] / wx[i];
  return s;
}

}  // namespace

AssignmentResult best_double_assignment(std::span<const double> a, std::size_t rows,
                                        std::size_t cols, std::span<const double> wx,
                                        std::span<const double> wy) {
  if (a.size() != rows * cols) throw std::invalid_argument("assignment: matrix size mismatch");
  if (wx.size() < rows || wy.size() < cols)
    throw std::invalid_argument("assignment: not enough weights");
  if (rows == 0 || cols == 0) return {0.0, true};
  if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) return {0.0, true};

  constexpr std::size_t kEnumerateLimit = 3;
  if (std::min(rows, cols) <= kEnumerateLimit) {
    double best = 0.0;
    if (rows <= cols) {
      std::vector<std::size_t> perm(rows);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        const auto order = sort_by_scores(col_scores(a, cols, perm, wx));
        best = std::max(best, assignment_value(a, cols, perm, order, wx, wy));
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      std::vector<std::size_t> perm(cols);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        const auto order = sort_by_scores(row_scores(a, rows, cols, perm, wy));
        best = std::max(best, assignment_value(a, cols, order, perm, wx, wy));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {best, true};
  }

  // Start from independent marginal-sum sorts, then alternate exact
  // one-sided rearrangements until the value stops improving.
  std::vector<double> rsum(rows, 0.0);
  std::vector<double> csum(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      rsum[r] += a[r * cols + c];
      csum[c] += a[r * cols + c];
    }
  std::vector<std::size_t> row_order = sort_by_scores(rsum);
  std::vector<std::size_t> col_order = sort_by_scores(csum);
  double value = assignment_value(a, cols, row_order, col_order, wx, wy);
  for (int iter = 0; iter < 64; ++iter) {
    auto next_rows = sort_by_scores(row_scores(a, rows, cols, col_order, wy));
    auto next_cols = sort_by_scores(col_scores(a, cols, next_rows, wx));
    const double next = assignment_value(a, cols, next_rows, next_cols, wx, wy);
    if (!(next > value)) break;
    value = next;
    row_order = std::move(next_rows);
    col_order = std::move(next_cols);
  }
  return {value, false};
}

namespace {

// |f(D,J)| for every rectangle, indexed ((a*nx+b)*ny + c)*ny + d.
class RectTable {
 public:
  explicit RectTable(const GridFunction2D& f) : nx_(f.nx()), ny_(f.ny()) {
    data_.assign(nx_ * nx_ * ny_ * ny_, 0.0);
    for (std::size_t a = 0; a < nx_; ++a)
      for (std::size_t b = a + 1; b < nx_; ++b)
        for (std::size_t c = 0; c < ny_; ++c)
          for (std::size_t d = c + 1; d < ny_; ++d)
            data_[index(a, b, c, d)] = std::abs(rect_increment(f, a, b, c, d));
  }
  [[nodiscard]] double operator()(const Interval& dx, const Interval& dy) const {
    return data_[index(static_cast<std::size_t>(dx.a), static_cast<std::size_t>(dx.b),
                       static_cast<std::size_t>(dy.a), static_cast<std::size_t>(dy.b))];
  }
  [[nodiscard]] bool all_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
  }

 private:
  [[nodiscard]] std::size_t index(std::size_t a, std::size_t b, std::size_t c,
                                  std::size_t d) const {
    return ((a * nx_ + b) * ny_ + c) * ny_ + d;
  }
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> data_;
};

AssignmentResult evaluate_pair(const RectTable& table, const IntervalSet& sx,
                               const IntervalSet& sy, const SortedPrefixes& wx,
                               const SortedPrefixes& wy, std::vector<double>& scratch) {
  scratch.resize(sx.size() * sy.size());
  for (std::size_t i = 0; i < sx.size(); ++i)
    for (std::size_t j = 0; j < sy.size(); ++j) scratch[i * sy.size() + j] = table(sx[i], sy[j]);
  return best_double_assignment(scratch, sx.size(), sy.size(), wx(sx.size()), wy(sy.size()));
}

std::vector<IntervalSet> all_sets(int points) {
  std::vector<IntervalSet> sets;
  for_each_interval_set(points, [&](const IntervalSet& s) { sets.push_back(s); });
  return sets;
}

VariationValue mixed_exhaustive(const GridFunction2D& f, const LambdaWeights& lam_x,
                                const LambdaWeights& lam_y) {
  const RectTable table(f);
  if (table.all_zero()) return {0.0, true};
  const std::vector<IntervalSet> xsets = all_sets(static_cast<int>(f.nx()));
  const std::vector<IntervalSet> ysets = all_sets(static_cast<int>(f.ny()));
  const SortedPrefixes wx(lam_x, f.nx() - 1);
  const SortedPrefixes wy(lam_y, f.ny() - 1);

  std::vector<double> best(xsets.size(), 0.0);
  std::vector<char> exact(xsets.size(), 1);
  parallel_for(xsets.size(), [&](std::size_t i) {
    std::vector<double> scratch;
    for (const auto& sy : ysets) {
      const AssignmentResult r = evaluate_pair(table, xsets[i], sy, wx, wy, scratch);
      best[i] = std::max(best[i], r.value);
      if (!r.exact) exact[i] = 0;
    }
  });
  return {*std::max_element(best.begin(), best.end()),
          std::all_of(exact.begin(), exact.end(), [](char e) { return e != 0; })};
}

IntervalSet with_inserted(const IntervalSet& set, const Interval& iv) {
  IntervalSet out = set;
  out.insert(std::upper_bound(out.begin(), out.end(), iv,
                              [](const Interval& l, const Interval& r) { return l.a < r.a; }),
             iv);
  return out;
}

// Start from the largest rectangle, then add the single x- or y-interval
// that most increases the objective until nothing improves it.
double mixed_greedy(const GridFunction2D& f, const LambdaWeights& lam_x,
                    const LambdaWeights& lam_y) {
  const RectTable table(f);
  const int nx = static_cast<int>(f.nx());
  const int ny = static_cast<int>(f.ny());
  const SortedPrefixes wx(lam_x, f.nx() - 1);
  const SortedPrefixes wy(lam_y, f.ny() - 1);

  double top = 0.0;
  IntervalSet sx;
  IntervalSet sy;
  for (int a = 0; a < nx; ++a)
    for (int b = a + 1; b < nx; ++b)
      for (int c = 0; c < ny; ++c)
        for (int d = c + 1; d < ny; ++d) {
          const double v = table({a, b}, {c, d});
          if (v > top) {
            top = v;
            sx = {{a, b}};
            sy = {{c, d}};
          }
        }
  if (top == 0.0) return 0.0;

  std::vector<double> scratch;
  double current = evaluate_pair(table, sx, sy, wx, wy, scratch).value;
  auto free_of = [](const IntervalSet& set, const Interval& iv) {
    return std::all_of(set.begin(), set.end(),
                       [&](const Interval& o) { return interiors_disjoint(o, iv); });
  };
  for (;;) {
    double best = current;
    IntervalSet best_x;
    IntervalSet best_y;
    for (int a = 0; a < nx; ++a)
      for (int b = a + 1; b < nx; ++b) {
        if (!free_of(sx, {a, b})) continue;
        IntervalSet cand = with_inserted(sx, {a, b});
        const double v = evaluate_pair(table, cand, sy, wx, wy, scratch).value;
        if (v > best) {
          best = v;
          best_x = std::move(cand);
          best_y.clear();
        }
      }
    for (int c = 0; c < ny; ++c)
      for (int d = c + 1; d < ny; ++d) {
        if (!free_of(sy, {c, d})) continue;
        IntervalSet cand = with_inserted(sy, {c, d});
        const double v = evaluate_pair(table, sx, cand, wx, wy, scratch).value;
        if (v > best) {
          best = v;
          best_y = std::move(cand);
          best_x.clear();
        }
      }
    if (!(best > current)) break;
    current = best;
    if (!best_x.empty()) sx = std::move(best_x);
    if (!best_y.empty()) sy = std::move(best_y);
  }
  return current;
}

}  // namespace

VariationValue mixed_lambda_variation(const GridFunction2D& f, const LambdaWeights& lam_x,
                                      const LambdaWeights& lam_y, Method method) {
  if (method == Method::exhaustive) {
    if (f.nx() > static_cast<std::size_t>(kExhaustiveMixedCap) ||
        f.ny() > static_cast<std::size_t>(kExhaustiveMixedCap))
      throw std::invalid_argument("exhaustive mixed variation is limited to " +
                                  std::to_string(kExhaustiveMixedCap) + " points per axis");
    return mixed_exhaustive(f, lam_x, lam_y);
  }
  return {mixed_greedy(f, lam_x, lam_y), false};
}

}  // namespace flsuite::variation
