#ifndef FLSUITE_LEGENDRE_HPP
#define FLSUITE_LEGENDRE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace flsuite::legendre {

/// Gauss-Legendre rule on [-1,1]. Nodes are strictly increasing and
/// symmetric about the origin.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t order() const noexcept { return nodes.size(); }
};

/// Values p_0(x) .. p_{n_max}(x) of the orthonormal Legendre family,
/// p_n = sqrt((2n+1)/2) P_n.
struct BasisSlice {
  int n_max = 0;
  double point = 0.0;
  std::vector<double> values;
};

struct KernelEval {
  int n = 0;
  double x = 0.0;
  double t = 0.0;
  double value = 0.0;
  bool direct_sum = false;  // true when the near-diagonal fallback was used
};

enum class Side { left, right };

BasisSlice eval_basis(int n_max, double x);

/// Writes p_0(x) .. p_{out.size()-1}(x) into `out`. No domain check; the
/// caller guarantees x in [-1,1].
void eval_basis_into(double x, std::span<double> out) noexcept;

/// Single value p_n(x).
double eval(int n, double x);

QuadratureRule gauss_rule(int q);

/// Affine image of `rule` on [a,b]; weights are scaled by (b-a)/2.
QuadratureRule map_rule(const QuadratureRule& rule, double a, double b);

/// Ratio of leading coefficients gamma_{n-1}/gamma_n of p_{n-1} and p_n.
double gamma_ratio(int n);

double default_diag_tol(int n) noexcept;

/// Reproducing kernel K_n(x,t) = sum_{k<n} p_k(x) p_k(t). Uses the
/// Christoffel-Darboux quotient when |x-t| > diag_tol, else the direct sum.
KernelEval kernel(int n, double x, double t,
                  std::optional<double> diag_tol = std::nullopt);

/// Direct-sum kernel, kept separate so callers can pin the evaluation path.
double kernel_direct(int n, double x, double t);

/// Christoffel-Darboux quotient; requires x != t.
double kernel_quotient(int n, double x, double t);

/// Integral of K_n(x,.) over [-1,s] (left) or [s,1] (right). `rule.order()`
/// must be at least n so the degree n-1 integrand is integrated exactly.
double kernel_tail_integral(int n, double x, double s, Side side,
                            const QuadratureRule& rule);

/// Overload that builds a rule of order n+1.
double kernel_tail_integral(int n, double x, double s, Side side);

}  // namespace flsuite::legendre

#endif  // FLSUITE_LEGENDRE_HPP
