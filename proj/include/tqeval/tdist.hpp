#pragma once

namespace tqeval {

// Degrees of freedom for Student's t. Only integral df >= 1 arise in this
// library (df = n - 1 for a sample of n observations), so fractional df is
// rejected at the type level.
class DegreesOfFreedom {
 public:
  explicit DegreesOfFreedom(int df);
  int value() const { return df_; }

 private:
  int df_;
};

enum class TailKind { kOneTail, kTwoTail, kConfidenceLevel };

// A critical-value query. Whatever the caller's phrasing (one-tail area,
// two-tail alpha, or confidence level), it resolves to the upper-tail area
// q in (0, 0.5] that t_quantile inverts.
class TCriticalQuery {
 public:
  static TCriticalQuery one_tail(DegreesOfFreedom df, double upper_tail_area);
  static TCriticalQuery two_tail(DegreesOfFreedom df, double alpha);
  static TCriticalQuery confidence_level(DegreesOfFreedom df,
                                         double confidence);

  DegreesOfFreedom df() const { return df_; }
  double tail_probability() const { return tail_probability_; }
  TailKind interpretation() const { return interpretation_; }

 private:
  TCriticalQuery(DegreesOfFreedom df, double q, TailKind kind);

  DegreesOfFreedom df_;
  double tail_probability_;
  TailKind interpretation_;
};

// Regularized incomplete beta function I_x(a, b).
// Continued-fraction evaluation (modified Lentz) with the symmetry switch
// at x = (a+1)/(a+b+2). Absolute error <= 1e-12 for a, b <= 200.
// Throws std::domain_error for a <= 0, b <= 0, or x outside [0, 1];
// numerical_error if the fraction fails to settle.
double regularized_incomplete_beta(double a, double b, double x);

// Density of Student's t with the given degrees of freedom.
double t_pdf(double x, DegreesOfFreedom df);

// P(T <= x) for T ~ t_df, via the incomplete beta function.
// t_cdf(0, df) == 0.5 exactly; cdf(x) + cdf(-x) == 1 within 1e-12.
double t_cdf(double x, DegreesOfFreedom df);

// Critical value: the t > 0 with P(T <= t) = 1 - q for the query's
// upper-tail area q. Bisection-secured Newton on the CDF; the round trip
// |t_cdf(t_quantile(q)) - (1 - q)| is within 1e-9. Throws numerical_error
// if the iteration cap is reached before that holds.
double t_quantile(const TCriticalQuery& query);

}  // namespace tqeval
