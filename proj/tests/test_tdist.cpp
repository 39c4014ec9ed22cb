#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tqeval/errors.hpp"
#include "tqeval/tdist.hpp"

using tqeval::DegreesOfFreedom;
using tqeval::regularized_incomplete_beta;
using tqeval::t_cdf;
using tqeval::t_pdf;
using tqeval::t_quantile;
using tqeval::TCriticalQuery;

TEST_CASE("regularized incomplete beta: boundary and symmetry identities") {
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK(regularized_incomplete_beta(5.0, 5.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("regularized incomplete beta matches the quadrature oracle") {
  // Arcsine-law point with an endpoint singularity.
  const double expected_half = oracles::reg_inc_beta_quadrature(0.5, 0.5, 0.25);
  CHECK(std::fabs(expected_half - 2.0 / oracles::kPi * std::asin(0.5)) < 1e-12);
  CHECK(regularized_incomplete_beta(0.5, 0.5, 0.25) ==
        doctest::Approx(expected_half).epsilon(1e-12));

  // Smooth integer-shape points across both sides of the symmetry switch.
  for (double x : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    CHECK(regularized_incomplete_beta(2.0, 3.0, x) ==
          doctest::Approx(oracles::reg_inc_beta_quadrature(2.0, 3.0, x))
              .epsilon(1e-12));
    CHECK(regularized_incomplete_beta(7.0, 2.5, x) ==
          doctest::Approx(oracles::reg_inc_beta_quadrature(7.0, 2.5, x))
              .epsilon(1e-12));
  }

  // Large symmetric shape, exercising the a, b <= 200 accuracy band.
  CHECK(regularized_incomplete_beta(150.0, 180.0, 0.45) ==
        doctest::Approx(oracles::reg_inc_beta_quadrature(150.0, 180.0, 0.45))
            .epsilon(1e-11));
}

TEST_CASE("regularized incomplete beta: domain errors") {
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, -2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.1), std::domain_error);
}

TEST_CASE("t CDF: centre, Cauchy closed form, and a printed critical value") {
  CHECK(t_cdf(0.0, DegreesOfFreedom(7)) == 0.5);
  CHECK(t_cdf(1.0, DegreesOfFreedom(1)) == doctest::Approx(0.75).epsilon(1e-12));
  // 3.078 is the rounded one-tail-0.10 critical value at df = 1.
  CHECK(t_cdf(3.078, DegreesOfFreedom(1)) == doctest::Approx(0.90).epsilon(5e-4));

  for (double x : {-4.0, -1.3, -0.2, 0.4, 2.7, 9.0}) {
    CHECK(t_cdf(x, DegreesOfFreedom(1)) ==
          doctest::Approx(oracles::cauchy_cdf(x)).epsilon(1e-12));
  }
}

TEST_CASE("t CDF symmetry: cdf(x) + cdf(-x) = 1 within 1e-12") {
  std::mt19937 gen(20240801);
  std::uniform_real_distribution<double> xs(-50.0, 50.0);
  std::uniform_int_distribution<int> dfs(1, 200);
  for (int i = 0; i < 2000; ++i) {
    const double x = xs(gen);
    const DegreesOfFreedom df(dfs(gen));
    CHECK(std::fabs(t_cdf(x, df) + t_cdf(-x, df) - 1.0) <= 1e-12);
  }
}

TEST_CASE("t CDF is strictly increasing in x") {
  for (int df : {1, 2, 5, 30}) {
    double prev = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.25) {
      const double c = t_cdf(x, DegreesOfFreedom(df));
      CHECK(c > prev);
      prev = c;
    }
  }
}

TEST_CASE("t quantile: df=1 closed forms") {
  // One-tail 0.10 at df = 1; 3.078 is the tabulated rounding.
  CHECK(t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(1), 0.10)) ==
        doctest::Approx(3.078).epsilon(1e-3));
  CHECK(t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(1), 0.25)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("t quantile matches df=1 and df=2 closed forms to 1e-8") {
  for (double q : {0.005, 0.01, 0.025, 0.05, 0.1, 0.25}) {
    CHECK(t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(1), q)) ==
          doctest::Approx(oracles::cauchy_upper_quantile(q)).epsilon(1e-8));
    CHECK(t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(2), q)) ==
          doctest::Approx(oracles::t2_upper_quantile(q)).epsilon(1e-8));
  }
  // Spot value: df=2, one-tail 0.05 via the closed form with p = 0.95.
  CHECK(oracles::t2_upper_quantile(0.05) == doctest::Approx(2.9200).epsilon(1e-4));
}

TEST_CASE("t quantile: round-trip through the CDF within 1e-9") {
  for (int df = 1; df <= 30; ++df) {
    for (double q : {0.005, 0.025, 0.05, 0.1, 0.2, 0.35, 0.5}) {
      const double t =
          t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(df), q));
      CHECK(std::fabs(t_cdf(t, DegreesOfFreedom(df)) - (1.0 - q)) <= 1e-9);
    }
  }
}

TEST_CASE("t quantile strictly decreases as the tail probability grows") {
  for (int df : {1, 2, 7, 30}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double q = 0.01; q <= 0.5; q += 0.01) {
      const double t =
          t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(df), q));
      CHECK(t < prev);
      prev = t;
    }
  }
}

TEST_CASE("t quantile approaches the normal critical value at large df") {
  const double t =
      t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(1000), 0.025));
  CHECK(t == doctest::Approx(1.960).epsilon(5e-3 / 1.960));
}

TEST_CASE("query construction: conversions and domain checks") {
  const auto q1 = TCriticalQuery::one_tail(DegreesOfFreedom(5), 0.1);
  CHECK(q1.tail_probability() == 0.1);
  const auto q2 = TCriticalQuery::two_tail(DegreesOfFreedom(5), 0.2);
  CHECK(q2.tail_probability() == 0.1);
  const auto q3 = TCriticalQuery::confidence_level(DegreesOfFreedom(5), 0.8);
  CHECK(q3.tail_probability() == doctest::Approx(0.1).epsilon(1e-15));
  // Same critical value whichever phrasing is used.
  CHECK(t_quantile(q1) == t_quantile(q2));
  CHECK(t_quantile(q1) == doctest::Approx(t_quantile(q3)).epsilon(1e-12));

  CHECK_THROWS_AS(DegreesOfFreedom(0), std::domain_error);
  CHECK_THROWS_AS(DegreesOfFreedom(-3), std::domain_error);
  CHECK_THROWS_AS(TCriticalQuery::one_tail(DegreesOfFreedom(1), 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(TCriticalQuery::one_tail(DegreesOfFreedom(1), 0.6),
                  std::domain_error);
  CHECK_THROWS_AS(TCriticalQuery::two_tail(DegreesOfFreedom(1), 1.2),
                  std::domain_error);
  CHECK_THROWS_AS(TCriticalQuery::confidence_level(DegreesOfFreedom(1), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(TCriticalQuery::confidence_level(DegreesOfFreedom(1), -0.1),
                  std::domain_error);
}

TEST_CASE("t pdf integrates to the CDF increment") {
  // Cross-check density against quadrature of itself around the centre.
  const DegreesOfFreedom df(4);
  const double integral = oracles::adaptive_simpson(
      [&](double x) { return t_pdf(x, df); }, -1.5, 2.0);
  CHECK(integral == doctest::Approx(t_cdf(2.0, df) - t_cdf(-1.5, df))
                        .epsilon(1e-10));
}
