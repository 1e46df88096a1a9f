#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "unitdist/specfun.hpp"

using namespace unitdist::specfun;

TEST_CASE("log_gamma matches the library reference across twelve decades") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int k = 0; k < 2000; ++k) {
    const double x = std::pow(10.0, u(rng));
    const double ref = std::lgamma(x);
    CHECK(std::fabs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::fabs(ref)));
  }
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
  constexpr double kPi = 3.14159265358979323846;
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-15));
  CHECK(log_gamma(6.0) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
}

TEST_CASE("digamma: known values and the recurrence") {
  constexpr double kEulerGamma = 0.57721566490153286061;
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-12));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-12));
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(0.05, 40.0);
  for (int k = 0; k < 500; ++k) {
    const double x = u(rng);
    CHECK(std::fabs(digamma(x + 1.0) - (digamma(x) + 1.0 / x)) <= 1e-10);
  }
}

TEST_CASE("log_beta symmetry and base cases") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_beta(2.5, 0.7) == doctest::Approx(log_beta(0.7, 2.5)).epsilon(1e-15));
  CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
}

TEST_CASE("reg_inc_beta: identities, monotonicity, endpoints") {
  for (double x : {0.1, 0.37, 0.5, 0.92}) CHECK(reg_inc_beta(x, 1.0, 1.0) == doctest::Approx(x).epsilon(1e-14));
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> par(0.2, 8.0);
  std::uniform_real_distribution<double> arg(1e-4, 1.0 - 1e-4);
  for (int k = 0; k < 300; ++k) {
    const double a = par(rng), b = par(rng), x = arg(rng);
    const double lhs = reg_inc_beta(x, a, b) + reg_inc_beta(1.0 - x, b, a);
    CHECK(std::fabs(lhs - 1.0) <= 1e-12);
  }
  CHECK(reg_inc_beta(0.5, 3.3, 3.3) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(reg_inc_beta(0.0, 2.0, 5.0) == 0.0);
  CHECK(reg_inc_beta(1.0, 2.0, 5.0) == 1.0);
  CHECK(reg_inc_beta(0.3, 2.0, 5.0) < reg_inc_beta(0.31, 2.0, 5.0));
  // I_x(2,2) = x^2 (3 - 2x)
  for (double x : {0.2, 0.55, 0.81})
    CHECK(reg_inc_beta(x, 2.0, 2.0) == doctest::Approx(x * x * (3.0 - 2.0 * x)).epsilon(1e-13));
}

TEST_CASE("inv_reg_inc_beta: roundtrip and endpoints") {
  CHECK(inv_reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(inv_reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> par(0.3, 9.0);
  for (int k = 0; k < 200; ++k) {
    const double a = par(rng), b = par(rng);
    for (double p : {0.001, 0.05, 0.31, 0.5, 0.77, 0.95, 0.999}) {
      const double x = inv_reg_inc_beta(p, a, b);
      CHECK(std::fabs(reg_inc_beta(x, a, b) - p) <= 1e-10);
    }
  }
}

TEST_CASE("log1mexp is accurate on both branches") {
  for (double x : {-1e-12, -1e-6, -0.1, -0.69, -0.7, -2.0, -40.0}) {
    // reference via long double, expm1 form near zero where 1 - e^x cancels
    const long double xl = static_cast<long double>(x);
    const long double ref =
        x < -0.693147L ? log1pl(-expl(xl)) : logl(-expm1l(xl));
    CHECK(std::fabs(log1mexp(x) - static_cast<double>(ref)) <=
          1e-13 * std::max(1.0, std::fabs(static_cast<double>(ref))));
  }
}

TEST_CASE("finite differences recover known derivatives") {
  const ObjectiveFn f = [](const std::vector<double>& v) {
    return v[0] * v[0] * v[1] + v[1] * v[1] * v[1];
  };
  const std::vector<double> x = {1.5, -0.8};
  const auto g = finite_diff_grad(f, x);
  CHECK(g[0] == doctest::Approx(2.0 * 1.5 * -0.8).epsilon(1e-7));
  CHECK(g[1] == doctest::Approx(1.5 * 1.5 + 3.0 * 0.64).epsilon(1e-7));

  const auto h = numerical_hessian(f, x);
  CHECK(h[0][0] == doctest::Approx(2.0 * -0.8).epsilon(1e-5));
  CHECK(h[0][1] == doctest::Approx(2.0 * 1.5).epsilon(1e-5));
  CHECK(h[1][0] == h[0][1]);
  CHECK(h[1][1] == doctest::Approx(6.0 * -0.8).epsilon(1e-5));
}

TEST_CASE("hessian evaluation fails loudly on a non-finite stencil") {
  const ObjectiveFn f = [](const std::vector<double>& v) { return std::log(v[0]); };
  CHECK_THROWS_AS(numerical_hessian(f, {1e-9}), std::runtime_error);
}

TEST_CASE("sym_eigenvalues sorts ascending and is exact on small matrices") {
  const Matrix m = {{2.0, 1.0}, {1.0, 2.0}};
  const auto ev = sym_eigenvalues(m);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));

  const Matrix d = {{3.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 2.0}};
  const auto ev3 = sym_eigenvalues(d);
  CHECK(ev3[0] == doctest::Approx(-1.0));
  CHECK(ev3[1] == doctest::Approx(2.0));
  CHECK(ev3[2] == doctest::Approx(3.0));
}

TEST_CASE("invert_matrix: roundtrip and singular detection") {
  const Matrix a = {{4.0, 1.0, 0.5}, {1.0, 3.0, -0.2}, {0.5, -0.2, 2.0}};
  const auto inv = invert_matrix(a);
  REQUIRE(inv.has_value());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a[i][k] * (*inv)[k][j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  const Matrix singular = {{1.0, 2.0}, {2.0, 4.0}};
  CHECK_FALSE(invert_matrix(singular).has_value());
}
