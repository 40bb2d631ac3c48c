#include "flsuite/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flsuite/parallel.hpp"

namespace flsuite::variation {

std::string to_string(Method m) {
  return m == Method::exhaustive ? "exhaustive" : "greedy_peel";
}

std::string to_string(Axis a) { return a == Axis::x ? "1" : "2"; }

namespace {

void check_grid(const std::vector<double>& g, const char* name) {
  if (g.size() < 2)
    throw std::invalid_argument(std::string(name) + ": need at least two grid points");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] >= -1.0 && g[i] <= 1.0))
      throw std::domain_error(std::string(name) + ": grid point outside [-1,1]");
    if (i > 0 && !(g[i] > g[i - 1]))
      throw std::invalid_argument(std::string(name) + ": grid must be strictly increasing");
  }
}

// Sum with Neumaier compensation; the result is independent of thread
// layout since it is only ever called sequentially.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool within(double dist, double delta) { return dist <= delta * (1.0 + 1e-12) + 1e-15; }

}  // namespace

GridFunction2D::GridFunction2D(std::vector<double> xs, std::vector<double> ys,
                               std::vector<double> values)
    : xs_(std::move(xs)), ys_(std::move(ys)), values_(std::move(values)) {
  check_grid(xs_, "GridFunction2D xs");
  check_grid(ys_, "GridFunction2D ys");
  if (values_.size() != xs_.size() * ys_.size())
    throw std::invalid_argument("GridFunction2D: value count != |xs|*|ys|");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("GridFunction2D: non-finite value");
}

GridFunction2D GridFunction2D::sample(const std::function<double(double, double)>& f,
                                      std::vector<double> xs, std::vector<double> ys) {
  std::vector<double> values(xs.size() * ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) values[i * ys.size() + j] = f(xs[i], ys[j]);
  return GridFunction2D(std::move(xs), std::move(ys), std::move(values));
}

std::vector<double> GridFunction2D::line(Axis axis, std::size_t k) const {
  std::vector<double> out;
  if (axis == Axis::x) {
    out.reserve(xs_.size());
    for (std::size_t i = 0; i < xs_.size(); ++i) out.push_back((*this)(i, k));
  } else {
    out.reserve(ys_.size());
    for (std::size_t j = 0; j < ys_.size(); ++j) out.push_back((*this)(k, j));
  }
  return out;
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (points - 1);
  g.front() = -1.0;
  g.back() = 1.0;
  return g;
}

// ---------------------------------------------------------------------------
// LambdaWeights

LambdaWeights::LambdaWeights(Generator g, double delta, std::vector<double> table)
    : generator_(g), delta_(delta), table_(std::move(table)) {}

LambdaWeights LambdaWeights::harmonic() { return {Generator::harmonic, 0.0, {}}; }

LambdaWeights LambdaWeights::constant() { return {Generator::constant, 0.0, {}}; }

LambdaWeights LambdaWeights::power_log(double delta) {
  if (!(delta > -1.0) || !std::isfinite(delta))
    throw std::invalid_argument("power_log: delta must be > -1");
  return {Generator::power_log, delta, {}};
}

LambdaWeights LambdaWeights::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("lambda table is empty");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("lambda table entries must be positive and finite");
  if (values.front() < 1.0) throw std::invalid_argument("lambda table: lambda_1 must be >= 1");
  return {Generator::table, 0.0, std::move(values)};
}

std::string LambdaWeights::name() const {
  std::string base;
  switch (generator_) {
    case Generator::harmonic: base = "harmonic"; break;
    case Generator::constant: base = "constant"; break;
    case Generator::power_log: base = "power_log(delta=" + std::to_string(delta_) + ")"; break;
    case Generator::table: base = "table[" + std::to_string(table_.size()) + "]"; break;
  }
  if (offset_ > 0) base += "+offset " + std::to_string(offset_);
  return base;
}

double LambdaWeights::base(std::size_t k) const {
  if (k < 1) throw std::out_of_range("lambda index starts at 1");
  const double kk = static_cast<double>(k);
  switch (generator_) {
    case Generator::harmonic: return kk;
    case Generator::constant: return 1.0;
    case Generator::power_log: return kk / std::pow(std::log(kk + 1.0), 1.0 + delta_);
    case Generator::table:
      if (k > table_.size())
        throw std::out_of_range("lambda table has only " + std::to_string(table_.size()) +
                                " entries");
      return table_[k - 1];
  }
  return 1.0;
}

double LambdaWeights::operator()(std::size_t k) const { return base(k + offset_); }

LambdaWeights LambdaWeights::with_offset(std::size_t offset) const {
  LambdaWeights copy = *this;
  copy.offset_ = offset;
  return copy;
}

std::vector<double> LambdaWeights::weights_for(std::size_t count) const {
  std::vector<double> w(count);
  for (std::size_t k = 0; k < count; ++k) w[k] = (*this)(k + 1);
  std::sort(w.begin(), w.end());
  return w;
}

bool LambdaWeights::nondecreasing_up_to(std::size_t horizon) const {
  for (std::size_t k = 1; k < horizon; ++k)
    if ((*this)(k + 1) < (*this)(k)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Interval sets

bool is_valid(const IntervalSet& set, int points) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& iv = set[i];
    if (iv.a < 0 || iv.b >= points || iv.a >= iv.b) return false;
    if (i > 0 && set[i - 1].b > iv.a) return false;
  }
  return true;
}

namespace {

void enumerate_from(int start, int points, IntervalSet& current,
                    const std::function<void(const IntervalSet&)>& visit) {
  for (int a = start; a < points; ++a) {
    for (int b = a + 1; b < points; ++b) {
      current.push_back({a, b});
      visit(current);
      enumerate_from(b, points, current, visit);
      current.pop_back();
    }
  }
}

}  // namespace

void for_each_interval_set(int points,
                           const std::function<void(const IntervalSet&)>& visit) {
  IntervalSet current;
  enumerate_from(0, points, current, visit);
}

double rect_increment(const GridFunction2D& f, std::size_t a, std::size_t b,
                      std::size_t c, std::size_t d) {
  if (a >= f.nx() || b >= f.nx() || c >= f.ny() || d >= f.ny())
    throw std::out_of_range("rect_increment: index outside grid");
  if (!(a < b) || !(c < d)) throw std::invalid_argument("rect_increment: need a<b and c<d");
  return f(a, c) - f(a, d) - f(b, c) + f(b, d);
}

// ---------------------------------------------------------------------------
// Moduli of continuity

Moduli moduli_of_continuity(const GridFunction2D& f, double delta1, double delta2) {
  if (!(delta1 > 0.0)) throw std::invalid_argument("delta1 must be > 0");
  if (!(delta2 > 0.0)) throw std::invalid_argument("delta2 must be > 0");
  const auto& xs = f.xs();
  const auto& ys = f.ys();
  Moduli out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k < xs.size() && within(xs[k] - xs[i], delta1); ++k)
      for (std::size_t j = 0; j < ys.size(); ++j)
        out.omega1 = std::max(out.omega1, std::abs(f(k, j) - f(i, j)));
  for (std::size_t j = 0; j < ys.size(); ++j)
    for (std::size_t l = j + 1; l < ys.size() && within(ys[l] - ys[j], delta2); ++l)
      for (std::size_t i = 0; i < xs.size(); ++i)
        out.omega2 = std::max(out.omega2, std::abs(f(i, l) - f(i, j)));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k < xs.size() && within(xs[k] - xs[i], delta1); ++k)
      for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t l = j + 1; l < ys.size() && within(ys[l] - ys[j], delta2); ++l)
          out.omega12 = std::max(out.omega12, std::abs(rect_increment(f, i, k, j, l)));
  return out;
}

// ---------------------------------------------------------------------------
// Shifted tails

VariationValue shifted_tail_variation(const GridFunction2D& f, const LambdaWeights& lam,
                                      TailTarget target, Method method) {
  switch (target) {
    case TailTarget::axis1: return partial_lambda_variation(f, lam, Axis::x, method);
    case TailTarget::axis2: return partial_lambda_variation(f, lam, Axis::y, method);
    case TailTarget::mixed: {
      const LambdaWeights unshifted = lam.with_offset(0);
      const VariationValue sx = mixed_lambda_variation(f, lam, unshifted, method);
      const VariationValue sy = mixed_lambda_variation(f, unshifted, lam, method);
      return {std::max(sx.value, sy.value), sx.exact && sy.exact};
    }
  }
  throw std::invalid_argument("shifted_tail_variation: unknown target");
}

// ---------------------------------------------------------------------------
// Series hypotheses

std::string classify_trend(double last_decade_increment) {
  if (last_decade_increment < kConvergentIncrement) return "convergent-trend";
  if (last_decade_increment > kDivergentIncrement) return "divergent-trend";
  return "inconclusive";
}

namespace {

SeriesTrend sum_series(std::size_t n_terms, const std::function<double(std::size_t)>& term) {
  SeriesTrend trend;
  CompensatedSum total;
  CompensatedSum tail;
  const std::size_t decade_start = n_terms / 10;  // tail covers n > decade_start
  std::size_t next_checkpoint = 10;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const double t = term(n);
    total.add(t);
    if (n > decade_start) tail.add(t);
    if (n == next_checkpoint || n == n_terms) {
      trend.checkpoints.emplace_back(n, total.value());
      if (n == next_checkpoint) next_checkpoint *= 10;
    }
  }
  trend.total = total.value();
  trend.last_decade_increment = tail.value();
  trend.trend = classify_trend(trend.last_decade_increment);
  return trend;
}

}  // namespace

SeriesReport series_conditions(const LambdaWeights& lam, const GridFunction2D* f,
                               std::size_t n_terms) {
  if (n_terms < 10) throw std::invalid_argument("series_conditions: n_terms must be >= 10");
  SeriesReport report;
  report.generator = lam.name();
  report.n_terms = n_terms;
  report.lambda_series = sum_series(n_terms, [&](std::size_t n) {
    const double nn = static_cast<double>(n);
    return lam(n) / (nn * nn);
  });

  double prev = lam(1);
  for (std::size_t n = 2; n <= n_terms; ++n) {
    const double cur = lam(n) / static_cast<double>(n);
    if (cur > prev) {
      report.lambda_over_n_nonincreasing = false;
      report.first_violation = n;
      break;
    }
    prev = cur;
  }

  if (f != nullptr) {
    auto modulus_series = [&](Axis axis) {
      // v(n) saturates once n reaches the number of grid steps.
      const int steps = static_cast<int>(f->line_length(axis)) - 1;
      const int n_max = static_cast<int>(std::min<std::size_t>(n_terms, static_cast<std::size_t>(steps)));
      const std::vector<double> v = modulus_of_variation(*f, axis, n_max);
      return sum_series(n_terms, [&](std::size_t n) {
        const double vn = v[std::min(n, v.size()) - 1];
        return std::sqrt(vn) / std::pow(static_cast<double>(n), 1.5);
      });
    };
    report.modulus_series_x = modulus_series(Axis::x);
    report.modulus_series_y = modulus_series(Axis::y);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report

VariationReport variation_report(const GridFunction2D& f, const LambdaWeights& lam,
                                 Method method, int n_max, double delta1, double delta2) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  VariationReport r;
  r.lambda_name = lam.name();
  r.method = method;
  r.nx = f.nx();
  r.ny = f.ny();
  r.lambda_v1 = partial_lambda_variation(f, lam, Axis::x, method);
  r.lambda_v2 = partial_lambda_variation(f, lam, Axis::y, method);
  r.lambda_v12 = mixed_lambda_variation(f, lam, method);
  r.v1 = modulus_of_variation(f, Axis::x, n_max);
  r.v2 = modulus_of_variation(f, Axis::y, n_max);
  r.delta1 = delta1;
  r.delta2 = delta2;
  r.omega = moduli_of_continuity(f, delta1, delta2);
  return r;
}

}  // namespace flsuite::variation
