#include "flsuite/legendre.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace flsuite::legendre {

namespace {

void check_point(double x, const char* what) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [-1,1], got " +
                            std::to_string(x));
  }
}

// Recurrence p_{k+1} = a_k x p_k - b_k p_{k-1} in the orthonormal scaling.
inline double rec_a(int k) {
  const double kk = k;
  return std::sqrt((2.0 * kk + 1.0) * (2.0 * kk + 3.0)) / (kk + 1.0);
}

inline double rec_b(int k) {
  const double kk = k;
  return kk / (kk + 1.0) * std::sqrt((2.0 * kk + 3.0) / (2.0 * kk - 1.0));
}

// Returns P_q(x) and P'_q(x) for the classical (unnormalized) polynomial.
std::pair<double, double> classical_with_derivative(int q, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 1; k < q; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  const double dp = q * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

void eval_basis_into(double x, std::span<double> out) noexcept {
  if (out.empty()) return;
  out[0] = std::numbers::sqrt2 / 2.0;
  if (out.size() == 1) return;
  out[1] = std::sqrt(1.5) * x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const int ki = static_cast<int>(k);
    out[k + 1] = rec_a(ki) * x * out[k] - rec_b(ki) * out[k - 1];
  }
}

BasisSlice eval_basis(int n_max, double x) {
  if (n_max < 0) throw std::domain_error("eval_basis: n_max must be >= 0");
  check_point(x, "eval_basis: x");
  BasisSlice slice;
  slice.n_max = n_max;
  slice.point = x;
  slice.values.resize(static_cast<std::size_t>(n_max) + 1);
  eval_basis_into(x, slice.values);
  return slice;
}

double eval(int n, double x) {
  if (n < 0) throw std::domain_error("eval: n must be >= 0");
  check_point(x, "eval: x");
  if (n == 0) return std::numbers::sqrt2 / 2.0;
  double prev = std::numbers::sqrt2 / 2.0;
  double cur = std::sqrt(1.5) * x;
  for (int k = 1; k < n; ++k) {
    const double next = rec_a(k) * x * cur - rec_b(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

QuadratureRule gauss_rule(int q) {
  if (q < 1) throw std::domain_error("gauss_rule: order must be >= 1");
  QuadratureRule rule;
  rule.nodes.assign(static_cast<std::size_t>(q), 0.0);
  rule.weights.assign(static_cast<std::size_t>(q), 0.0);

  // Newton on the upper half; the lower half is mirrored so the rule is
  // exactly symmetric.
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, d] = classical_with_derivative(q, x);
      dp = d;
      const double step = p / d;
      x -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    auto [p, d] = classical_with_derivative(q, x);
    (void)p;
    dp = d;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto hi = static_cast<std::size_t>(q - 1 - i);
    const auto lo = static_cast<std::size_t>(i);
    rule.nodes[hi] = x;
    rule.nodes[lo] = -x;
    rule.weights[hi] = w;
    rule.weights[lo] = w;
  }
  if (q % 2 == 1) rule.nodes[static_cast<std::size_t>(q / 2)] = 0.0;
  return rule;
}

QuadratureRule map_rule(const QuadratureRule& rule, double a, double b) {
  QuadratureRule mapped;
  mapped.nodes.resize(rule.order());
  mapped.weights.resize(rule.order());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < rule.order(); ++i) {
    mapped.nodes[i] = mid + half * rule.nodes[i];
    mapped.weights[i] = half * rule.weights[i];
  }
  return mapped;
}

double gamma_ratio(int n) {
  if (n < 1) throw std::domain_error("gamma_ratio: n must be >= 1");
  // gamma_n = sqrt((2n+1)/2) (2n)! / (2^n (n!)^2), so the ratio collapses
  // to n / sqrt(4n^2 - 1).
  const double nn = n;
  return nn / std::sqrt(4.0 * nn * nn - 1.0);
}

double default_diag_tol(int n) noexcept { return 1e-6 * n; }

double kernel_direct(int n, double x, double t) {
  if (n < 1) throw std::domain_error("kernel: n must be >= 1");
  check_point(x, "kernel: x");
  check_point(t, "kernel: t");
  std::vector<double> px(static_cast<std::size_t>(n));
  std::vector<double> pt(static_cast<std::size_t>(n));
  eval_basis_into(x, px);
  eval_basis_into(t, pt);
  double sum = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) sum += px[k] * pt[k];
  return sum;
}

double kernel_quotient(int n, double x, double t) {
  if (n < 1) throw std::domain_error("kernel: n must be >= 1");
  check_point(x, "kernel: x");
  check_point(t, "kernel: t");
  if (x == t) throw std::domain_error("kernel_quotient: x == t");
  std::vector<double> px(static_cast<std::size_t>(n) + 1);
  std::vector<double> pt(static_cast<std::size_t>(n) + 1);
  eval_basis_into(x, px);
  eval_basis_into(t, pt);
  const auto nn = static_cast<std::size_t>(n);
  return gamma_ratio(n) * (pt[nn - 1] * px[nn] - px[nn - 1] * pt[nn]) / (x - t);
}

KernelEval kernel(int n, double x, double t, std::optional<double> diag_tol) {
  const double tol = diag_tol.value_or(default_diag_tol(n));
  KernelEval out{n, x, t, 0.0, false};
  if (std::abs(x - t) > tol) {
    out.value = kernel_quotient(n, x, t);
  } else {
    out.value = kernel_direct(n, x, t);
    out.direct_sum = true;
  }
  return out;
}

double kernel_tail_integral(int n, double x, double s, Side side,
                            const QuadratureRule& rule) {
  if (n < 1) throw std::domain_error("kernel_tail_integral: n must be >= 1");
  if (!(x > -1.0 && x < 1.0))
    throw std::domain_error("kernel_tail_integral: x must lie in (-1,1)");
  if (side == Side::left && !(s >= -1.0 && s < x))
    throw std::domain_error("kernel_tail_integral: left side needs -1 <= s < x");
  if (side == Side::right && !(s > x && s <= 1.0))
    throw std::domain_error("kernel_tail_integral: right side needs x < s <= 1");
  if (rule.order() < static_cast<std::size_t>(n))
    throw std::invalid_argument(
        "kernel_tail_integral: quadrature order must be >= n");

  const double a = side == Side::left ? -1.0 : s;
  const double b = side == Side::left ? s : 1.0;
  const QuadratureRule sub = map_rule(rule, a, b);

  std::vector<double> px(static_cast<std::size_t>(n));
  std::vector<double> pt(static_cast<std::size_t>(n));
  eval_basis_into(x, px);
  double total = 0.0;
  for (std::size_t i = 0; i < sub.order(); ++i) {
    eval_basis_into(sub.nodes[i], pt);
    double k = 0.0;
    for (std::size_t j = 0; j < pt.size(); ++j) k += px[j] * pt[j];
    total += sub.weights[i] * k;
  }
  return total;
}

double kernel_tail_integral(int n, double x, double s, Side side) {
  return kernel_tail_integral(n, x, s, side, gauss_rule(n + 1));
}

}  // namespace flsuite::legendre
