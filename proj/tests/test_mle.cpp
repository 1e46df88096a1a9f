#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "unitdist/dataio.hpp"
#include "unitdist/mle.hpp"

using namespace unitdist;

namespace {

Dataset water() { return builtin_dataset("oecd-water"); }

double sum_log_pdf(Family family, const std::vector<double>& params, const Dataset& data) {
  const DistributionSpec spec(family, params);
  double s = 0.0;
  for (double y : data.values()) s += log_pdf(spec, y);
  return s;
}

Dataset make_random_dataset(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.02, 0.98);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return Dataset(std::move(v));
}

}  // namespace

TEST_CASE("closed-form log-likelihoods equal the generic sum") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> par(0.3, 4.0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto data = make_random_dataset(rng, 25);
    const std::vector<std::pair<Family, std::vector<double>>> cases = {
        {Family::fatima1, {par(rng), par(rng)}},
        {Family::fatima3, {par(rng), par(rng)}},
        {Family::fatima4, {par(rng), par(rng)}},
    };
    for (const auto& [family, params] : cases) {
      const double closed = log_likelihood(family, params, data);
      const double generic = sum_log_pdf(family, params, data);
      CHECK(std::fabs(closed - generic) <= 1e-10 * std::max(1.0, std::fabs(generic)));
    }
    const double i = par(rng);
    const std::vector<double> p2 = {i - 1.0 + par(rng), par(rng), i};
    const double closed2 = log_likelihood(Family::fatima2, p2, data);
    CHECK(std::fabs(closed2 - sum_log_pdf(Family::fatima2, p2, data)) <=
          1e-10 * std::max(1.0, std::fabs(closed2)));
  }
}

TEST_CASE("log-likelihood known values and rejection semantics") {
  const auto data = water();
  CHECK(log_likelihood(Family::fatima1, {1.0, 1.0}, data) == 0.0);
  CHECK(log_likelihood(Family::fatima5, {0.4776}, data) ==
        doctest::Approx(40.4976).epsilon(2e-5));
  CHECK(log_likelihood(Family::kumaraswamy, {2.2817, 8.4271}, data) ==
        doctest::Approx(40.4467).epsilon(2e-5));
  CHECK(log_likelihood(Family::fatima1, {-1.0, 2.0}, data) ==
        -std::numeric_limits<double>::infinity());
  CHECK(log_likelihood(Family::fatima2, {2.0, 1.0, 5.0}, data) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("analytic scores: fixed points and finite differences") {
  const Dataset single({std::exp(-1.0)});
  const auto g1 = score(Family::fatima1, {1.0, 1.0}, single);
  CHECK(g1[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(g1[1] == doctest::Approx(0.0).epsilon(1e-14));

  const Dataset two({std::exp(-1.0), std::exp(-1.0)});
  const auto g4 = score(Family::fatima4, {1.0, 1.0}, two);
  CHECK(g4[1] == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(score(Family::fatima1, {-1.0, 1.0}, single), std::domain_error);
  CHECK_THROWS_AS(score(Family::kumaraswamy, {1.0, 1.0}, single), std::domain_error);

  std::mt19937 rng(22);
  std::uniform_real_distribution<double> par(0.4, 3.0);
  const auto data = water();
  for (int rep = 0; rep < 10; ++rep) {
    const std::vector<double> p3 = {par(rng), par(rng)};
    const auto analytic = score(Family::fatima3, p3, data);
    const auto fd = specfun::finite_diff_grad(
        [&](const std::vector<double>& q) { return log_likelihood(Family::fatima3, q, data); },
        p3);
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(std::fabs(analytic[j] - fd[j]) <= 1e-5 * std::max(1.0, std::fabs(analytic[j])));
  }
}

TEST_CASE("nelder_mead solves the classical test problems") {
  FitConfig config;
  const auto quad = nelder_mead(
      [](const std::vector<double>& v) { return (v[0] - 2.0) * (v[0] - 2.0); }, {0.0}, config);
  CHECK(quad.converged);
  CHECK(std::fabs(quad.x[0] - 2.0) <= 1e-6);
  CHECK(quad.n_evals > 0);

  const auto rosen = nelder_mead(
      [](const std::vector<double>& v) {
        const double a = 1.0 - v[0], b = v[1] - v[0] * v[0];
        return a * a + 100.0 * b * b;
      },
      {-1.2, 1.0}, config);
  CHECK(rosen.converged);
  CHECK(std::fabs(rosen.x[0] - 1.0) <= 1e-4);
  CHECK(std::fabs(rosen.x[1] - 1.0) <= 1e-4);

  FitConfig strict;
  strict.max_iter = 1;
  const auto capped = nelder_mead(
      [](const std::vector<double>& v) { return v[0] * v[0]; }, {5.0}, strict);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("default_init lands inside every family's valid region") {
  const auto data = water();
  for (const auto& name : registered_family_names()) {
    const Family family = family_from_name(name);
    const auto init = default_init(family, data);
    CHECK(params_valid(family, init));
  }
  const Dataset half({0.5, 0.5, 0.4, 0.6});
  const auto f1 = default_init(Family::fatima1, half);
  CHECK(f1[0] == doctest::Approx(1.0).epsilon(1e-12));  // mean 0.5 => alpha*beta = 1
  CHECK(f1[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit reproduces the published single-family columns") {
  const auto data = water();

  const auto f5 = fit(Family::fatima5, data);
  CHECK(f5.converged);
  CHECK(f5.spec.params()[0] == doctest::Approx(0.4776).epsilon(2e-3));
  CHECK(f5.log_lik == doctest::Approx(40.4976).epsilon(1e-4));
  REQUIRE(f5.vcov.has_value());
  CHECK((*f5.vcov)[0][0] == doctest::Approx(7.29e-4).epsilon(0.05));
  REQUIRE(f5.std_err.has_value());
  CHECK_FALSE(f5.identifiability_flag);

  const auto beta_fit = fit(Family::beta, data);
  CHECK(beta_fit.spec.params()[0] == doctest::Approx(10.8716).epsilon(5e-3));
  CHECK(beta_fit.spec.params()[1] == doctest::Approx(2.1667).epsilon(5e-3));
  CHECK(beta_fit.log_lik == doctest::Approx(40.6698).epsilon(1e-4));
}

TEST_CASE("fit flags the likelihood ridge and reports the identified quantity") {
  const auto data = water();
  double s = 0.0;
  for (double y : data.values()) s += std::log(y);
  const double target = -41.0 / s;

  const auto f1 = fit(Family::fatima1, data);
  CHECK(f1.identifiability_flag);
  CHECK_FALSE(f1.vcov.has_value());
  CHECK(f1.log_lik == doctest::Approx(34.9508).epsilon(1e-4));
  const auto iq = identified_quantity(f1);
  REQUIRE(iq.has_value());
  CHECK(iq->first == "alpha*beta");
  CHECK(iq->second == doctest::Approx(target).epsilon(1e-3));

  const auto f4 = fit(Family::fatima4, data);
  CHECK(f4.identifiability_flag);
  const auto iq4 = identified_quantity(f4);
  REQUIRE(iq4.has_value());
  CHECK(iq4->first == "beta/alpha^2");
  CHECK(iq4->second == doctest::Approx(target).epsilon(1e-3));

  CHECK_FALSE(identified_quantity(fit(Family::fatima5, data)).has_value());
}

TEST_CASE("fitted interior optima are stationary points of the score") {
  const auto data = water();
  const double n = static_cast<double>(data.size());
  for (Family family : {Family::fatima1, Family::fatima3, Family::fatima4}) {
    const auto result = fit(family, data);
    REQUIRE(result.converged);
    const auto g = score(family, result.spec.params(), data);
    double norm = 0.0;
    for (double gj : g) norm += gj * gj;
    CHECK(std::sqrt(norm) < 1e-4 * n);
  }
}

TEST_CASE("fatima3 and kumaraswamy are the same model in different coordinates") {
  const auto data = water();
  const auto f3 = fit(Family::fatima3, data);
  const auto kw = fit(Family::kumaraswamy, data);
  CHECK(std::fabs(f3.log_lik - kw.log_lik) <= 1e-4);
  const double alpha3 = f3.spec.params()[0];
  const double inner = kw.spec.params()[1];  // the y-exponent parameter
  CHECK(std::fabs(1.0 / (alpha3 * alpha3) - inner) <= 1e-3 * inner);
}

TEST_CASE("fit honors config and rejects bad input") {
  const auto data = water();

  FitConfig with_init;
  with_init.init = std::vector<double>{0.6};
  const auto f5 = fit(Family::fatima5, data, with_init);
  CHECK(f5.spec.params()[0] == doctest::Approx(0.4776).epsilon(2e-3));

  FitConfig bad_init;
  bad_init.init = std::vector<double>{-2.0};
  CHECK_THROWS_AS(fit(Family::fatima5, data, bad_init), std::invalid_argument);

  const Dataset tiny({0.4, 0.6});
  CHECK_THROWS_AS(fit(Family::fatima2, tiny, FitConfig{}), std::invalid_argument);

  const Dataset flat({0.5, 0.5, 0.5, 0.5, 0.5});
  CHECK_THROWS_AS(fit(Family::fatima5, flat, FitConfig{}), std::invalid_argument);

  // identical configuration must give identical results
  const auto a = fit(Family::fatima6, data);
  const auto b = fit(Family::fatima6, data);
  CHECK(a.spec.params()[0] == b.spec.params()[0]);
  CHECK(a.spec.params()[1] == b.spec.params()[1]);
  CHECK(a.log_lik == b.log_lik);
}
