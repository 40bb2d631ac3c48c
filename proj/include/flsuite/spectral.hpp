#ifndef FLSUITE_SPECTRAL_HPP
#define FLSUITE_SPECTRAL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "flsuite/legendre.hpp"

namespace flsuite::spectral {

using Function2D = std::function<double(double, double)>;

/// Double Fourier-Legendre coefficients f^(n,m), n < N (x modes), m < M
/// (y modes). Immutable after construction.
class CoefficientMatrix {
 public:
  CoefficientMatrix(int n_modes, int m_modes, int quad_order,
                    std::vector<double> values);

  [[nodiscard]] int N() const noexcept { return n_; }
  [[nodiscard]] int M() const noexcept { return m_; }
  [[nodiscard]] int quad_order() const noexcept { return quad_order_; }
  [[nodiscard]] double operator()(int n, int m) const {
    return values_[static_cast<std::size_t>(n) * static_cast<std::size_t>(m_) +
                   static_cast<std::size_t>(m)];
  }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  /// Set when the rule order was below max(N,M).
  [[nodiscard]] bool under_resolved() const noexcept { return quad_order_ < std::max(n_, m_); }

 private:
  int n_;
  int m_;
  int quad_order_;
  std::vector<double> values_;  // row-major, n-major
};

struct PartialSumResult {
  int N = 0;
  int M = 0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Tensorized two-pass contraction of the sampled function against the
/// basis, summed in a fixed order.
CoefficientMatrix coefficients(const Function2D& f, int N, int M,
                               const legendre::QuadratureRule& rule);

/// S_{N,M} f(x,y) from stored coefficients, summed n-major ascending.
PartialSumResult partial_sum(const CoefficientMatrix& coeffs, int N, int M,
                             double x, double y);

/// S_{N,M} f(x,y) as the tensor quadrature of f(s,t) K_N(x,s) K_M(y,t).
PartialSumResult partial_sum_kernel(const Function2D& f, int N, int M, double x,
                                    double y, const legendre::QuadratureRule& rule);

/// Uniform lattice of `points` values spanning [-1+eps, 1-eps].
std::vector<double> interior_lattice(double eps, int points);

/// Max over the interior lattice of |S_{N,M} f - f|.
double sup_error(const Function2D& f, const CoefficientMatrix& coeffs, int N,
                 int M, double eps, int grid_points);

/// Default rule order: max(N,M)+32 for smooth f, 4 max(N,M) for kinked f.
int default_quad_order(int N, int M, bool has_kink) noexcept;

}  // namespace flsuite::spectral

#endif  // FLSUITE_SPECTRAL_HPP
