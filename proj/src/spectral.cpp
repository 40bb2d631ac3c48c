#include "flsuite/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flsuite/parallel.hpp"

namespace flsuite::spectral {

namespace {

void check_modes(int N, int M) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
}

void check_point(double v, const char* name) {
  if (!(v >= -1.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " must lie in [-1,1]");
}

// table[i * cols + n] = p_n(points[i]), n < cols
std::vector<double> basis_table(const std::vector<double>& points, int cols) {
  const auto c = static_cast<std::size_t>(cols);
  std::vector<double> table(points.size() * c);
  for (std::size_t i = 0; i < points.size(); ++i)
    legendre::eval_basis_into(points[i], std::span<double>(table.data() + i * c, c));
  return table;
}

std::vector<double> sample(const Function2D& f, const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  std::vector<double> values(xs.size() * ys.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < ys.size(); ++j)
      values[i * ys.size() + j] = f(xs[i], ys[j]);
  });
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      const std::size_t i = k / ys.size();
      const std::size_t j = k % ys.size();
      throw std::domain_error("non-finite sample f(" + std::to_string(xs[i]) +
                              ", " + std::to_string(ys[j]) + ")");
    }
  }
  return values;
}

}  // namespace

CoefficientMatrix::CoefficientMatrix(int n_modes, int m_modes, int quad_order,
                                     std::vector<double> values)
    : n_(n_modes), m_(m_modes), quad_order_(quad_order), values_(std::move(values)) {
  check_modes(n_, m_);
  if (values_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(m_))
    throw std::invalid_argument("CoefficientMatrix: value count != N*M");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("CoefficientMatrix: non-finite entry");
}

CoefficientMatrix coefficients(const Function2D& f, int N, int M,
                               const legendre::QuadratureRule& rule) {
  check_modes(N, M);
  const std::size_t q = rule.order();
  const auto nn = static_cast<std::size_t>(N);
  const auto mm = static_cast<std::size_t>(M);
  const std::vector<double> samples = sample(f, rule.nodes, rule.nodes);
  const std::vector<double> px = basis_table(rule.nodes, N);
  const std::vector<double> py = basis_table(rule.nodes, M);

  // First pass over s: partial[n][j] = sum_i w_i p_n(s_i) f(s_i, t_j).
  std::vector<double> partial(nn * q, 0.0);
  parallel_for(nn, [&](std::size_t n) {
    for (std::size_t j = 0; j < q; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < q; ++i)
        acc += rule.weights[i] * px[i * nn + n] * samples[i * q + j];
      partial[n * q + j] = acc;
    }
  });

  // Second pass over t.
  std::vector<double> values(nn * mm, 0.0);
  parallel_for(nn, [&](std::size_t n) {
    for (std::size_t m = 0; m < mm; ++m) {
      double acc = 0.0;
      for (std::size_t j = 0; j < q; ++j)
        acc += rule.weights[j] * py[j * mm + m] * partial[n * q + j];
      values[n * mm + m] = acc;
    }
  });
  return CoefficientMatrix(N, M, static_cast<int>(q), std::move(values));
}

PartialSumResult partial_sum(const CoefficientMatrix& coeffs, int N, int M,
                             double x, double y) {
  check_modes(N, M);
  if (N > coeffs.N())
    throw std::out_of_range("partial_sum: N exceeds stored modes (" +
                            std::to_string(coeffs.N()) + ")");
  if (M > coeffs.M())
    throw std::out_of_range("partial_sum: M exceeds stored modes (" +
                            std::to_string(coeffs.M()) + ")");
  check_point(x, "partial_sum: x");
  check_point(y, "partial_sum: y");

  std::vector<double> px(static_cast<std::size_t>(N));
  std::vector<double> py(static_cast<std::size_t>(M));
  legendre::eval_basis_into(x, px);
  legendre::eval_basis_into(y, py);
  double total = 0.0;
  for (int n = 0; n < N; ++n) {
    double inner = 0.0;
    for (int m = 0; m < M; ++m) inner += coeffs(n, m) * py[static_cast<std::size_t>(m)];
    total += px[static_cast<std::size_t>(n)] * inner;
  }
  return {N, M, x, y, total};
}

PartialSumResult partial_sum_kernel(const Function2D& f, int N, int M, double x,
                                    double y, const legendre::QuadratureRule& rule) {
  check_modes(N, M);
  check_point(x, "partial_sum_kernel: x");
  check_point(y, "partial_sum_kernel: y");
  const std::size_t q = rule.order();
  const std::vector<double> samples = sample(f, rule.nodes, rule.nodes);

  std::vector<double> kx(q);
  std::vector<double> ky(q);
  for (std::size_t i = 0; i < q; ++i) {
    kx[i] = legendre::kernel(N, x, rule.nodes[i]).value;
    ky[i] = legendre::kernel(M, y, rule.nodes[i]).value;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < q; ++j)
      inner += rule.weights[j] * samples[i * q + j] * ky[j];
    total += rule.weights[i] * kx[i] * inner;
  }
  return {N, M, x, y, total};
}

std::vector<double> interior_lattice(double eps, int points) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (points < 2) throw std::invalid_argument("grid_points must be >= 2");
  std::vector<double> lattice(static_cast<std::size_t>(points));
  const double lo = -1.0 + eps;
  const double hi = 1.0 - eps;
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) lattice[static_cast<std::size_t>(i)] = lo + step * i;
  lattice.back() = hi;
  return lattice;
}

double sup_error(const Function2D& f, const CoefficientMatrix& coeffs, int N,
                 int M, double eps, int grid_points) {
  check_modes(N, M);
  if (N > coeffs.N() || M > coeffs.M())
    throw std::out_of_range("sup_error: truncation exceeds stored modes");
  const std::vector<double> lattice = interior_lattice(eps, grid_points);
  const std::size_t g = lattice.size();
  const auto nn = static_cast<std::size_t>(N);
  const auto mm = static_cast<std::size_t>(M);
  const std::vector<double> bx = basis_table(lattice, N);
  const std::vector<double> by = basis_table(lattice, M);

  std::vector<double> row_max(g, 0.0);
  parallel_for(g, [&](std::size_t a) {
    double worst = 0.0;
    for (std::size_t b = 0; b < g; ++b) {
      double total = 0.0;
      for (std::size_t n = 0; n < nn; ++n) {
        double inner = 0.0;
        for (std::size_t m = 0; m < mm; ++m)
          inner += coeffs(static_cast<int>(n), static_cast<int>(m)) * by[b * mm + m];
        total += bx[a * nn + n] * inner;
      }
      const double exact = f(lattice[a], lattice[b]);
      if (!std::isfinite(exact)) throw std::domain_error("sup_error: non-finite sample");
      worst = std::max(worst, std::abs(total - exact));
    }
    row_max[a] = worst;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

int default_quad_order(int N, int M, bool has_kink) noexcept {
  const int modes = std::max(N, M);
  return has_kink ? 4 * modes : modes + 32;
}

}  // namespace flsuite::spectral
