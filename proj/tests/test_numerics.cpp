#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "laserent/errors.hpp"
#include "laserent/numerics.hpp"

using namespace laserent;
using namespace laserent::numerics;

TEST_CASE("log_factorial small values") {
  CHECK(log_factorial(std::int64_t{0}) == 0.0);
  CHECK(log_factorial(std::int64_t{1}) == 0.0);
  // ln(3628800), mpmath
  CHECK(log_factorial(std::int64_t{10}) == doctest::Approx(15.104412573075515).epsilon(1e-15));
  CHECK(log_factorial(std::int64_t{100}) == doctest::Approx(363.73937555556349).epsilon(1e-14));
  CHECK_THROWS_AS(log_factorial(std::int64_t{-1}), DomainError);
}

TEST_CASE("log_factorial is monotone and satisfies the recurrence") {
  double prev = log_factorial(std::int64_t{0});
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    const double cur = log_factorial(n);
    CHECK_LE(prev, cur);
    const double residual = cur - std::log(static_cast<double>(n)) - prev;
    // relative to the magnitude of ln(n!) once it exceeds one
    REQUIRE(std::abs(residual) <= 1e-12 * std::max(1.0, cur));
    prev = cur;
  }
}

TEST_CASE("log_gamma against std::lgamma and exact values") {
  CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470009).epsilon(1e-14));
  CHECK(log_gamma(37.5) == doctest::Approx(97.521775222888204).epsilon(1e-14));
  CHECK(log_gamma(1e6) == doctest::Approx(12815504.569147612).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = 0.5 + std::pow(10.0, 6.0 * unit(rng)) - 1.0;
    const double expected = std::lgamma(x);
    REQUIRE(std::abs(log_gamma(x) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
  }
  for (double x : {0.01, 0.1, 0.3, 0.49}) {
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("non-integer factorial is Gamma(x+1)") {
  CHECK(log_factorial(37.5) == doctest::Approx(std::lgamma(38.5)).epsilon(1e-13));
  CHECK(log_factorial(4.0) == doctest::Approx(std::log(24.0)).epsilon(1e-15));
}

TEST_CASE("stirling_log_factorial") {
  CHECK(stirling_log_factorial(1.0) == doctest::Approx(-0.081061466795327258).epsilon(1e-14));
  CHECK(std::abs(stirling_log_factorial(10.0) - log_factorial(std::int64_t{10})) < 0.01);
  const double exact100 = log_factorial(std::int64_t{100});
  CHECK(std::abs(stirling_log_factorial(100.0) - exact100) / exact100 < 1e-4);
  CHECK_THROWS_AS(stirling_log_factorial(0.0), DomainError);
  CHECK_THROWS_AS(stirling_log_factorial(-3.0), DomainError);
}

TEST_CASE("1F1(1;b;a) special cases") {
  auto r = hypergeometric_1f1_1(5.0, 0.0);
  CHECK(r.converged);
  CHECK(r.terms_used == 1);
  CHECK(r.linear() == 1.0);

  r = hypergeometric_1f1_1(1.0, 2.0);
  CHECK(r.converged);
  CHECK(r.linear() == doctest::Approx(std::exp(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(hypergeometric_1f1_1(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(hypergeometric_1f1_1(1.0, -1.0), DomainError);
}

TEST_CASE("1F1(1;b;a) against mpmath reference values") {
  struct Case {
    double b, a, log_value;
  };
  const Case cases[] = {
      {51.0, 100.0, 18.219257640583963}, {11.0, 10.0, 1.4662020352813038},
      {38.5, 1000.0, 842.10529319403443}, {101.0, 1000.0, 672.96384765734978},
      {201.0, 400.0, 64.939077770809076}, {1.5, 3.7, 2.9185076011168737},
  };
  for (const auto& c : cases) {
    CAPTURE(c.b);
    CAPTURE(c.a);
    const auto r = hypergeometric_1f1_1(c.b, c.a);
    CHECK(r.converged);
    CHECK(r.log_domain);
    CHECK(r.value == doctest::Approx(c.log_value).epsilon(1e-12));
  }
}

TEST_CASE("1F1(1;1;a) = e^a") {
  for (double a = 0.0; a <= 50.0; a += 0.5) {
    const auto r = hypergeometric_1f1_1(1.0, a);
    REQUIRE(r.converged);
    REQUIRE(std::abs(std::expm1(r.value - a)) < 1e-10);
  }
}

TEST_CASE("1F1(1;b;a) >= 1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> bs(0.01, 500.0), as(0.0, 2000.0);
  for (int i = 0; i < 300; ++i) {
    const auto r = hypergeometric_1f1_1(bs(rng), as(rng));
    REQUIRE(r.converged);
    REQUIRE(r.value >= 0.0);
    REQUIRE(r.terms_used >= 1);
  }
}

TEST_CASE("1F1 reports non-convergence instead of a silent value") {
  SeriesOptions opts;
  opts.term_cap = 50;
  const auto r = hypergeometric_1f1_1(2.0, 1000.0, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.terms_used <= 50);
}

TEST_CASE("large-argument asymptotic of the normalization") {
  const double a = 400.0, b = 200.0;
  const auto exact = hypergeometric_1f1_1(b + 1.0, a);
  const double asym = log_hypergeometric_1f1_1_asymptotic(b, a);
  CHECK(std::abs(std::expm1(asym - exact.value)) < 1e-3);
}

TEST_CASE("log_sum_exp and the accumulator") {
  const double xs[] = {1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::numbers::ln2).epsilon(1e-15));
  CHECK(std::isinf(log_sum_exp(std::span<const double>{})));
  LogSumAccumulator acc;
  acc.add(-1e300);
  acc.add(0.0);
  CHECK(acc.log_sum() == doctest::Approx(0.0));
}
