#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tqeval/intervals.hpp"

using namespace tqeval;

TEST_CASE("standardize") {
  CHECK(standardize(42.0, 42.0, 3.7) == 0.0);
  CHECK(standardize(45.7, 42.0, 3.7) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(standardize(85.2, 96.3, 5.0) == doctest::Approx(-2.22).epsilon(1e-12));
  CHECK_THROWS_AS(standardize(1.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(standardize(1.0, 0.0, -2.0), std::domain_error);
}

TEST_CASE("ARF k for unknown distributions: closed form against the table") {
  CHECK(arf_k_unknown(0.5) == 0.5);
  CHECK(std::fabs(arf_k_unknown(0.25) - 2.91) <= 0.005);
  CHECK(std::fabs(arf_k_unknown(0.01) - 99.0) <= 0.01);

  // Every tabulated unknown-row value agrees with the formula to 0.01.
  for (const auto& row : arf_table()) {
    CHECK(std::fabs(arf_k_unknown(row.alpha) - row.k_unknown) <= 0.01);
  }

  // Strictly decreasing in alpha.
  double prev = std::numeric_limits<double>::infinity();
  for (double a = 0.01; a <= 0.5; a += 0.01) {
    const double k = arf_k_unknown(a);
    CHECK(k < prev);
    prev = k;
  }

  CHECK_THROWS_AS(arf_k_unknown(0.0), std::domain_error);
  CHECK_THROWS_AS(arf_k_unknown(0.51), std::domain_error);
  CHECK_THROWS_AS(arf_k_unknown(-0.2), std::domain_error);
}

TEST_CASE("ARF k for the normal row: tabulated values only") {
  CHECK(arf_k_normal(0.25) == 1.8);
  CHECK(arf_k_normal(0.2) == 2.31);
  CHECK(arf_k_normal(0.1) == 4.79);
  CHECK(arf_k_normal(1.0 / 3.0) == 1.26);
  CHECK(arf_k_normal(0.05) == 9.66);
  CHECK(arf_k_normal(0.01) == 48.39);
  // No interpolation between tabulated points.
  CHECK_THROWS_AS(arf_k_normal(0.3), std::domain_error);
  CHECK_THROWS_AS(arf_k_normal(0.15), std::domain_error);

  // The 0.05 entry at alpha = 0.5 sits below the distribution-free 0.5 and
  // is flagged as suspect rather than corrected.
  CHECK(arf_k_normal(0.5) == 0.05);
  CHECK(arf_normal_alpha_suspect(0.5));
  CHECK_FALSE(arf_normal_alpha_suspect(0.25));
}

TEST_CASE("ARF interval reproduces the 75% and 80% reference cases") {
  const ScoreScale scale;  // 0..100
  const SingleObservation obs(96.3, 85.2, scale);

  SUBCASE("k = 1.8 (75%)") {
    const ConfidenceInterval ci = arf_interval(obs, 1.8, 0.75);
    CHECK(std::fabs(ci.center - 90.75) <= 0.01);
    CHECK(std::fabs(ci.half_width - 19.98) <= 0.01);
    CHECK(std::fabs(ci.lower - 70.77) <= 0.01);
    CHECK(ci.upper == 100.0);
    CHECK(ci.clamped_upper);
    CHECK_FALSE(ci.clamped_lower);
    CHECK(ci.confidence == 0.75);
  }

  SUBCASE("k = 2.31 (80%)") {
    const ConfidenceInterval ci = arf_interval(obs, 2.31, 0.80);
    CHECK(std::fabs(ci.half_width - 25.64) <= 0.01);
    CHECK(std::fabs(ci.lower - 65.1) <= 0.01);
    CHECK(ci.upper == 100.0);
    CHECK(ci.clamped_upper);
  }

  SUBCASE("zero deviation gives a zero-width interval") {
    const SingleObservation same(90.0, 90.0, scale);
    const ConfidenceInterval ci = arf_interval(same, 2.31, 0.80);
    CHECK(ci.half_width == 0.0);
    CHECK(ci.lower == 90.0);
    CHECK(ci.upper == 90.0);
  }
}

TEST_CASE("ARF interval properties: midpoint centre, linear width scaling") {
  std::mt19937 gen(7131);
  std::uniform_real_distribution<double> score(0.0, 100.0);
  std::uniform_real_distribution<double> ks(0.0, 20.0);
  const ScoreScale scale;
  for (int i = 0; i < 500; ++i) {
    const double prior = score(gen);
    const double y = score(gen);
    const double k = ks(gen);
    const SingleObservation obs(prior, y, scale);
    const ConfidenceInterval ci = arf_interval(obs, k, 0.75);
    CHECK(ci.center == 0.5 * (y + prior));
    const ConfidenceInterval doubled = arf_interval(obs, 2.0 * k, 0.75);
    CHECK(doubled.half_width == 2.0 * ci.half_width);
    // Pre-clamp symmetry about the centre.
    CHECK(std::fabs((ci.center - ci.raw_lower()) -
                    (ci.raw_upper() - ci.center)) <= 1e-9);
  }
  CHECK_THROWS_AS(arf_interval(SingleObservation(50.0, 60.0, scale), -1.0, 0.75),
                  std::domain_error);
}

TEST_CASE("sample mean") {
  CHECK(std::fabs(sample_mean(ScoreSample({76.85, 81.99})) - 79.42) <= 1e-12);
  CHECK(sample_mean(ScoreSample({33.3, 33.3, 33.3})) ==
        doctest::Approx(33.3).epsilon(1e-14));
  CHECK(sample_mean(ScoreSample({96.3, 85.2})) == doctest::Approx(90.75));
}

TEST_CASE("sample standard deviation") {
  CHECK(std::fabs(sample_stddev(ScoreSample({76.85, 81.99})) - 3.6345) <= 1e-4);
  CHECK(sample_stddev(ScoreSample({42.0, 42.0})) == 0.0);
  CHECK_THROWS_AS(sample_stddev(ScoreSample({42.0})), std::domain_error);

  // Against the independent two-pass oracle on random samples.
  std::mt19937 gen(99821);
  std::uniform_real_distribution<double> score(0.0, 100.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(score(gen));
    CHECK(std::fabs(sample_stddev(ScoreSample(xs)) -
                    oracles::two_pass_sample_stddev(xs)) <= 1e-10);
  }
}

TEST_CASE("t interval reproduces the two-score reference case") {
  const ScoreSample sample({76.85, 81.99});
  const TIntervalSummary r = t_interval(sample, 0.80);
  CHECK(std::fabs(r.mean - 79.42) <= 1e-12);
  CHECK(std::fabs(r.stddev - 3.6345) <= 1e-4);
  CHECK(std::fabs(r.margin - 7.91) <= 0.01);
  CHECK(std::fabs(r.interval.lower - 71.51) <= 0.01);
  CHECK(std::fabs(r.interval.upper - 87.33) <= 0.01);
  CHECK(r.df == 1);
  CHECK(std::fabs(r.critical_t - 3.078) <= 1e-3);
  CHECK_FALSE(r.large_sample);
  CHECK_FALSE(r.interval.clamped_lower);
  CHECK_FALSE(r.interval.clamped_upper);
}

TEST_CASE("t interval: degenerate and closed-form cases") {
  SUBCASE("identical scores give a zero-width interval") {
    const TIntervalSummary r = t_interval(ScoreSample({90.0, 90.0}), 0.95);
    CHECK(r.margin == 0.0);
    CHECK(r.interval.lower == 90.0);
    CHECK(r.interval.upper == 90.0);
  }

  SUBCASE("three scores against the df=2 closed form") {
    const TIntervalSummary r = t_interval(ScoreSample({70.0, 80.0, 90.0}), 0.80);
    // s = 10 by hand; q = 0.10 at df = 2.
    const double expected =
        oracles::t2_upper_quantile(0.10) * 10.0 / std::sqrt(3.0);
    CHECK(std::fabs(r.stddev - 10.0) <= 1e-12);
    CHECK(std::fabs(r.margin - expected) <= 1e-9);
  }

  SUBCASE("insufficient data") {
    CHECK_THROWS_AS(t_interval(ScoreSample({80.0}), 0.80), std::domain_error);
  }

  SUBCASE("confidence bounds") {
    CHECK_THROWS_AS(t_interval(ScoreSample({70.0, 80.0}), 0.0), std::domain_error);
    CHECK_THROWS_AS(t_interval(ScoreSample({70.0, 80.0}), 1.0), std::domain_error);
  }

  SUBCASE("n beyond 30 is accepted with a warning flag") {
    std::vector<double> xs(31, 50.0);
    xs[0] = 55.0;
    const TIntervalSummary r = t_interval(ScoreSample(xs), 0.80);
    CHECK(r.large_sample);
  }
}

TEST_CASE("t interval width decreases in n at fixed spread and confidence") {
  for (double confidence : {0.80, 0.95}) {
    const double q = (1.0 - confidence) / 2.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 30; ++n) {
      const double factor =
          t_quantile(TCriticalQuery::one_tail(DegreesOfFreedom(n - 1), q)) /
          std::sqrt(static_cast<double>(n));
      CHECK(factor < prev);
      prev = factor;
    }
  }
}

TEST_CASE("two-score margin is far tighter than the single-observation one") {
  const TIntervalSummary two = t_interval(ScoreSample({76.85, 81.99}), 0.80);
  const double two_score_margin = two.margin / two.mean;
  CHECK(std::fabs(two_score_margin - 0.0996) <= 0.0005);

  const ConfidenceInterval one =
      arf_interval(SingleObservation(96.3, 85.2), arf_k_normal(0.2), 0.80);
  const double one_score_margin = one.half_width / one.center;
  CHECK(two_score_margin < 0.5 * one_score_margin);
  CHECK(two_score_margin < 0.5 * 0.25);
}

TEST_CASE("scale and sample validation") {
  CHECK_THROWS_AS(ScoreScale(5.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(ScoreScale(10.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ScoreSample({}), std::domain_error);
  CHECK_THROWS_AS(ScoreSample({101.0}), std::domain_error);
  CHECK_THROWS_AS(ScoreSample({-0.5}), std::domain_error);
  CHECK_THROWS_AS(SingleObservation(101.0, 50.0), std::domain_error);
  CHECK_THROWS_AS(SingleObservation(50.0, -1.0), std::domain_error);

  const ScoreScale wide(-10.0, 10.0);
  CHECK(ScoreSample({-9.9, 9.9}, wide).size() == 2);
}

TEST_CASE("interval construction records clamping exactly") {
  const ScoreScale scale;
  const ConfidenceInterval free = make_interval(50.0, 10.0, 0.9, scale);
  CHECK(free.lower == 40.0);
  CHECK(free.upper == 60.0);
  CHECK_FALSE(free.clamped_lower);
  CHECK_FALSE(free.clamped_upper);

  const ConfidenceInterval pinned = make_interval(95.0, 10.0, 0.9, scale);
  CHECK(pinned.lower == 85.0);
  CHECK(pinned.upper == 100.0);
  CHECK(pinned.clamped_upper);
  CHECK(pinned.raw_upper() == 105.0);

  const ConfidenceInterval both = make_interval(50.0, 200.0, 0.9, scale);
  CHECK(both.lower == 0.0);
  CHECK(both.upper == 100.0);
  CHECK(both.clamped_lower);
  CHECK(both.clamped_upper);

  CHECK_THROWS_AS(make_interval(50.0, -1.0, 0.9, scale), std::domain_error);
}
