#include <doctest.h>

#include <cmath>
#include <random>

#include "flsuite/harness.hpp"
#include "flsuite/spectral.hpp"
#include "oracles.hpp"

using namespace flsuite;
using spectral::coefficients;
using spectral::partial_sum;
using spectral::partial_sum_kernel;

namespace {
const auto one = [](double, double) { return 1.0; };
const auto xy = [](double x, double y) { return x * y; };
}  // namespace

TEST_CASE("coefficients of simple functions") {
  const auto c1 = coefficients(one, 1, 1, legendre::gauss_rule(4));
  CHECK(c1(0, 0) == doctest::Approx(2.0).epsilon(1e-14));

  const auto cxy = coefficients(xy, 2, 2, legendre::gauss_rule(4));
  CHECK(cxy(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(std::abs(cxy(0, 0)) <= 1e-13);
  CHECK(std::abs(cxy(0, 1)) <= 1e-13);
  CHECK(std::abs(cxy(1, 0)) <= 1e-13);

  const auto cx = coefficients([](double x, double) { return x; }, 2, 2, legendre::gauss_rule(4));
  CHECK(cx(1, 0) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
  CHECK(std::abs(cx(0, 0)) <= 1e-13);
  CHECK(std::abs(cx(0, 1)) <= 1e-13);
  CHECK(std::abs(cx(1, 1)) <= 1e-13);
}

TEST_CASE("coefficients reject bad input") {
  CHECK_THROWS_AS(coefficients(one, 0, 2, legendre::gauss_rule(4)), std::invalid_argument);
  CHECK_THROWS_AS(coefficients([](double x, double) { return 1.0 / x; }, 2, 2, legendre::gauss_rule(3)),
                  std::domain_error);
  CHECK_THROWS_AS(coefficients([](double, double) -> double { throw std::runtime_error("boom"); }, 2,
                               2, legendre::gauss_rule(3)),
                  std::runtime_error);
  CHECK(coefficients(one, 8, 8, legendre::gauss_rule(4)).under_resolved());
  CHECK_FALSE(coefficients(one, 4, 4, legendre::gauss_rule(4)).under_resolved());
}

TEST_CASE("polynomial coefficients vanish beyond the degree") {
  std::mt19937_64 gen(11);
  const auto p = oracle::random_poly(gen, 3, 3);  // degree < 4 in each variable
  const int N = 8;
  const auto c = coefficients(p, N, N, legendre::gauss_rule(4 + N));
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m)
      if (n >= 4 || m >= 4) CHECK(std::abs(c(n, m)) <= 1e-10);
}

TEST_CASE("symmetric functions give symmetric coefficients") {
  const auto f = [](double x, double y) { return std::exp(x * y) + std::cos(x + y); };
  const auto c = coefficients(f, 10, 10, legendre::gauss_rule(42));
  for (int n = 0; n < 10; ++n)
    for (int m = 0; m < 10; ++m) CHECK(std::abs(c(n, m) - c(m, n)) <= 1e-12);
}

TEST_CASE("partial_sum examples and errors") {
  const auto c1 = coefficients(one, 1, 1, legendre::gauss_rule(4));
  CHECK(partial_sum(c1, 1, 1, 0.3, -0.9).value == doctest::Approx(1.0).epsilon(1e-14));

  const auto cxy = coefficients(xy, 2, 2, legendre::gauss_rule(4));
  CHECK(partial_sum(cxy, 2, 2, 0.3, -0.4).value == doctest::Approx(-0.12).epsilon(1e-13));
  CHECK(std::abs(partial_sum(cxy, 1, 1, 0.7, 0.2).value) <= 1e-13);

  CHECK_THROWS_AS(partial_sum(cxy, 3, 2, 0.0, 0.0), std::out_of_range);
  CHECK_THROWS_AS(partial_sum(cxy, 2, 3, 0.0, 0.0), std::out_of_range);
  CHECK_THROWS_AS(partial_sum(cxy, 2, 2, 1.5, 0.0), std::domain_error);
}

TEST_CASE("partial_sum_kernel examples") {
  const auto r = legendre::gauss_rule(8);
  CHECK(partial_sum_kernel(one, 1, 1, 0.0, 0.0, r).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(partial_sum_kernel(xy, 2, 2, 0.3, -0.4, r).value + 0.12) <= 1e-10);
  CHECK(std::abs(partial_sum_kernel([](double x, double) { return x * x; }, 3, 3, 0.5, 0.5, r).value -
                 0.25) <= 1e-10);
}

TEST_CASE("projection identity on random polynomials") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int a = static_cast<int>(gen() % 9);
    const int b = static_cast<int>(gen() % 9);
    const auto p = oracle::random_poly(gen, a, b);
    const auto c = coefficients(p, a + 1, b + 1, legendre::gauss_rule(std::max(a, b) + 2));
    for (int k = 0; k < 20; ++k) {
      const double x = u(gen);
      const double y = u(gen);
      CHECK(std::abs(partial_sum(c, a + 1, b + 1, x, y).value - p(x, y)) <= 1e-9);
    }
  }
}

TEST_CASE("direct and kernel partial sums agree") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto rule = legendre::gauss_rule(64);
  for (const char* name : {"abs_sum", "smooth_osc", "pbv_p", "radial_kink", "polynomial"}) {
    const auto f = harness::corpus(name);
    const auto c = coefficients(f.evaluate, 32, 32, rule);
    for (int N : {1, 5, 17, 32}) {
      const int M = std::max(1, 33 - N);
      for (int k = 0; k < 5; ++k) {
        const double x = u(gen);
        const double y = u(gen);
        const double direct = partial_sum(c, N, M, x, y).value;
        const double kern = partial_sum_kernel(f.evaluate, N, M, x, y, rule).value;
        CHECK_MESSAGE(std::abs(direct - kern) <= 1e-8 * (1 + std::abs(direct)), name << " N=" << N);
      }
    }
  }
}

TEST_CASE("partial sums are idempotent") {
  const auto f = harness::corpus("smooth_osc");
  const int N = 12;
  const int M = 9;
  const auto rule = legendre::gauss_rule(N + 32);
  const auto c = coefficients(f.evaluate, N, M, rule);
  const auto projected = [&](double x, double y) { return partial_sum(c, N, M, x, y).value; };
  const auto again = coefficients(projected, N, M, rule);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < M; ++m) CHECK(std::abs(again(n, m) - c(n, m)) <= 1e-9);
}

TEST_CASE("sup_error") {
  const auto c1 = coefficients(one, 3, 3, legendre::gauss_rule(8));
  CHECK(spectral::sup_error(one, c1, 1, 1, 0.1, 11) <= 1e-12);
  CHECK(spectral::sup_error(one, c1, 3, 2, 0.1, 11) <= 1e-12);

  const auto cxy = coefficients(xy, 2, 2, legendre::gauss_rule(4));
  CHECK(spectral::sup_error(xy, cxy, 2, 2, 0.1, 21) <= 1e-10);

  const auto f = harness::corpus("abs_sum");
  const auto c = coefficients(f.evaluate, 64, 64, legendre::gauss_rule(256));
  CHECK(spectral::sup_error(f.evaluate, c, 64, 64, 0.25, 41) <
        spectral::sup_error(f.evaluate, c, 4, 4, 0.25, 41));

  CHECK_THROWS_AS(spectral::sup_error(xy, cxy, 2, 2, 0.0, 11), std::invalid_argument);
  CHECK_THROWS_AS(spectral::sup_error(xy, cxy, 2, 2, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(spectral::sup_error(xy, cxy, 3, 2, 0.1, 11), std::out_of_range);
}

TEST_CASE("interior lattice covers the margin exactly") {
  const auto l = spectral::interior_lattice(0.25, 5);
  CHECK(l.front() == -0.75);
  CHECK(l.back() == 0.75);
  CHECK(l[2] == doctest::Approx(0.0));
}
