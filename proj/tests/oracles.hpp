#ifndef FLSUITE_TESTS_ORACLES_HPP
#define FLSUITE_TESTS_ORACLES_HPP

// Brute-force reference computations used only by tests. None of these call
// into the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Monomial coefficients of the orthonormal Legendre polynomial p_n via the
/// explicit sum P_n(x) = 2^-n sum_k (-1)^k C(n,k) C(2n-2k,n) x^{n-2k}.
inline std::vector<long double> legendre_monomials(int n) {
  auto binom = [](int a, int b) {
    long double r = 1.0L;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::vector<long double> c(static_cast<std::size_t>(n) + 1, 0.0L);
  const long double norm = std::sqrt((2.0L * n + 1.0L) / 2.0L) / std::pow(2.0L, n);
  for (int k = 0; 2 * k <= n; ++k) {
    const long double term = binom(n, k) * binom(2 * n - 2 * k, n) * ((k % 2) ? -1.0L : 1.0L);
    c[static_cast<std::size_t>(n - 2 * k)] += norm * term;
  }
  return c;
}

inline long double eval_monomials(const std::vector<long double>& c, long double x) {
  long double acc = 0.0L;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline long double leading_coefficient(int n) { return legendre_monomials(n).back(); }

/// Interior-disjoint interval sets on `points` grid indices, enumerated by
/// labelling every unit gap as uncovered / opens an interval / extends the
/// previous one. Independent of the library's recursive enumerator.
inline void for_each_set(int points,
                         const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  const int gaps = points - 1;
  std::int64_t total = 1;
  for (int i = 0; i < gaps; ++i) total *= 3;
  std::vector<int> label(static_cast<std::size_t>(gaps));
  std::vector<std::pair<int, int>> set;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int g = 0; g < gaps; ++g) {
      label[static_cast<std::size_t>(g)] = static_cast<int>(c % 3);
      c /= 3;
    }
    bool ok = true;
    set.clear();
    for (int g = 0; g < gaps && ok; ++g) {
      const int l = label[static_cast<std::size_t>(g)];
      if (l == 1) {
        set.emplace_back(g, g + 1);
      } else if (l == 2) {
        if (g == 0 || label[static_cast<std::size_t>(g - 1)] == 0) ok = false;
        else set.back().second = g + 1;
      }
    }
    if (ok && !set.empty()) visit(set);
  }
}

/// Max over sets of at most n intervals of the left-to-right sum of
/// phi(|increment|); v[0] is n = 1.
inline std::vector<double> modulus_bruteforce(const std::vector<double>& line, int n_max,
                                              const std::function<double(double)>& phi) {
  std::vector<double> best(static_cast<std::size_t>(n_max), 0.0);
  for_each_set(static_cast<int>(line.size()), [&](const auto& set) {
    double s = 0.0;
    for (const auto& [a, b] : set) s = s + phi(std::abs(line[static_cast<std::size_t>(b)] - line[static_cast<std::size_t>(a)]));
    for (int n = static_cast<int>(set.size()); n <= n_max; ++n)
      best[static_cast<std::size_t>(n - 1)] = std::max(best[static_cast<std::size_t>(n - 1)], s);
  });
  return best;
}

/// sup over sets and over all orderings of sum_i inc_{sigma(i)} / lambda_i.
inline double lambda_line_bruteforce(const std::vector<double>& line,
                                     const std::function<double(std::size_t)>& lambda) {
  double best = 0.0;
  for_each_set(static_cast<int>(line.size()), [&](const auto& set) {
    std::vector<double> inc;
    for (const auto& [a, b] : set)
      inc.push_back(std::abs(line[static_cast<std::size_t>(b)] - line[static_cast<std::size_t>(a)]));
    std::vector<std::size_t> perm(inc.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double s = 0.0;
      for (std::size_t i = 0; i < perm.size(); ++i) s += inc[perm[i]] / lambda(i + 1);
      best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return best;
}

/// Full search over row and column permutations.
inline double double_assignment_bruteforce(const std::vector<double>& a, std::size_t rows,
                                           std::size_t cols, const std::vector<double>& wx,
                                           const std::vector<double>& wy) {
  std::vector<std::size_t> rp(rows);
  std::iota(rp.begin(), rp.end(), 0);
  double best = 0.0;
  do {
    std::vector<std::size_t> cp(cols);
    std::iota(cp.begin(), cp.end(), 0);
    do {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) s += a[rp[i] * cols + cp[j]] / (wx[i] * wy[j]);
      best = std::max(best, s);
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return best;
}

/// Total variation of a sequence.
inline double total_variation(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
  return s;
}

/// Random bivariate polynomial with bidegree <= (dx, dy), coefficients in
/// [-1,1], evaluated by nested Horner in long double.
struct Poly2 {
  int dx = 0;
  int dy = 0;
  std::vector<double> c;  // c[i*(dy+1)+j] multiplies x^i y^j

  double operator()(double x, double y) const {
    long double acc = 0.0L;
    for (int i = dx; i >= 0; --i) {
      long double inner = 0.0L;
      for (int j = dy; j >= 0; --j) inner = inner * y + c[static_cast<std::size_t>(i * (dy + 1) + j)];
      acc = acc * x + inner;
    }
    return static_cast<double>(acc);
  }
};

inline Poly2 random_poly(std::mt19937_64& gen, int dx, int dy) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly2 p{dx, dy, std::vector<double>(static_cast<std::size_t>((dx + 1) * (dy + 1)))};
  for (auto& v : p.c) v = u(gen);
  return p;
}

}  // namespace oracle

#endif  // FLSUITE_TESTS_ORACLES_HPP
