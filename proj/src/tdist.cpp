#include "tqeval/tdist.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tqeval/errors.hpp"

namespace tqeval {

namespace {

constexpr double kPi = 3.14159265358979323846;

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for I_x(a, b), modified Lentz method.
// Numerical Recipes 6.4; converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kFloor = 1e-300;
  constexpr double kTolerance = 1e-14;
  constexpr int kMaxIterations = 300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFloor) d = kFloor;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double numer = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + numer * d;
    if (std::fabs(d) < kFloor) d = kFloor;
    c = 1.0 + numer / c;
    if (std::fabs(c) < kFloor) c = kFloor;
    d = 1.0 / d;
    h *= d * c;
    numer = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + numer * d;
    if (std::fabs(d) < kFloor) d = kFloor;
    c = 1.0 + numer / c;
    if (std::fabs(c) < kFloor) c = kFloor;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance) return h;
  }
  std::ostringstream msg;
  msg << "incomplete beta continued fraction did not settle for a=" << a
      << " b=" << b << " x=" << x;
  throw numerical_error(msg.str());
}

}  // namespace

DegreesOfFreedom::DegreesOfFreedom(int df) : df_(df) {
  if (df < 1) {
    throw std::domain_error("degrees of freedom must be a positive integer");
  }
}

TCriticalQuery::TCriticalQuery(DegreesOfFreedom df, double q, TailKind kind)
    : df_(df), tail_probability_(q), interpretation_(kind) {
  if (!(q > 0.0) || !(q <= 0.5)) {
    throw std::domain_error("tail probability must lie in (0, 0.5]");
  }
}

TCriticalQuery TCriticalQuery::one_tail(DegreesOfFreedom df,
                                        double upper_tail_area) {
  return {df, upper_tail_area, TailKind::kOneTail};
}

TCriticalQuery TCriticalQuery::two_tail(DegreesOfFreedom df, double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw std::domain_error("two-tail alpha must lie in (0, 1]");
  }
  return {df, alpha / 2.0, TailKind::kTwoTail};
}

TCriticalQuery TCriticalQuery::confidence_level(DegreesOfFreedom df,
                                                double confidence) {
  if (!(confidence >= 0.0) || !(confidence < 1.0)) {
    throw std::domain_error("confidence level must lie in [0, 1)");
  }
  return {df, (1.0 - confidence) / 2.0, TailKind::kConfidenceLevel};
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error(
        "regularized incomplete beta requires positive a and b");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::domain_error(
        "regularized incomplete beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double t_pdf(double x, DegreesOfFreedom df) {
  const double v = static_cast<double>(df.value());
  const double log_norm = std::lgamma(0.5 * (v + 1.0)) -
                          std::lgamma(0.5 * v) - 0.5 * std::log(v * kPi);
  return std::exp(log_norm - 0.5 * (v + 1.0) * std::log1p(x * x / v));
}

double t_cdf(double x, DegreesOfFreedom df) {
  if (!std::isfinite(x)) {
    throw std::domain_error("t_cdf requires finite x");
  }
  if (x == 0.0) return 0.5;

  const double v = static_cast<double>(df.value());
  const double x2 = x * x;
  // Upper half-tail P(T > |x|). When x is small relative to df the
  // argument df/(df + x^2) sits near 1 where I_x loses precision, so the
  // complementary form is used there (same trick as Boost.Math).
  double upper;
  if (v > 2.0 * x2) {
    upper = 0.5 * (1.0 - regularized_incomplete_beta(0.5, 0.5 * v,
                                                     x2 / (v + x2)));
  } else {
    upper = 0.5 * regularized_incomplete_beta(0.5 * v, 0.5, v / (v + x2));
  }
  return x > 0.0 ? 1.0 - upper : upper;
}

double t_quantile(const TCriticalQuery& query) {
  const double q = query.tail_probability();
  if (q == 0.5) return 0.0;
  const double target = 1.0 - q;
  const DegreesOfFreedom df = query.df();

  // Bracket the root, expanding geometrically from the default span.
  double lo = 0.0;
  double hi = 1e6;
  int expansions = 0;
  while (t_cdf(hi, df) < target) {
    hi *= 8.0;
    if (++expansions > 64) {
      throw numerical_error("t_quantile could not bracket the critical value");
    }
  }

  // Newton steps secured by the bracket; any step escaping [lo, hi]
  // degrades to bisection, so the iteration always converges.
  constexpr int kMaxIterations = 200;
  constexpr double kResidualTol = 1e-12;
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double residual = t_cdf(t, df) - target;
    if (std::fabs(residual) <= kResidualTol) return t;
    if (residual > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::fabs(t))) {
      return t;
    }
    const double slope = t_pdf(t, df);
    double next = slope > 0.0 ? t - residual / slope : lo - 1.0;
    if (!(next > lo) || !(next < hi)) {
      next = 0.5 * (lo + hi);
    }
    t = next;
  }
  if (std::fabs(t_cdf(t, df) - target) <= 1e-9) return t;
  std::ostringstream msg;
  msg << "t_quantile failed to converge for df=" << df.value()
      << " tail=" << q;
  throw numerical_error(msg.str());
}

}  // namespace tqeval
