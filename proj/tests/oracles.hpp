#pragma once

// Independent oracles used to freeze expected values in the test suites.
// Everything here is deliberately implemented by a different route than the
// library under test: quadrature instead of continued fractions, closed
// forms instead of root-finding, two-pass summation instead of Welford,
// raw label counting instead of marginal algebra.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (recursive bisection with Richardson check).
// ---------------------------------------------------------------------------

inline double simpson_panel(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_panel(f, a, m, fa, flm, fm);
  const double right = simpson_panel(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-13) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_panel(f, a, b, fa, fm, fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta by quadrature.
//
// For a, b >= 1 the density x^(a-1) (1-x)^(b-1) is bounded and integrated
// directly. For the half-integer case (1/2, 1/2) the endpoint singularity is
// removed with the substitution t = u^2, giving 2 (1 - u^2)^(-1/2) du on
// [0, sqrt(x)]. Normalization by B(a,b) via lgamma.
// ---------------------------------------------------------------------------

inline double log_beta_fn(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double reg_inc_beta_quadrature(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double norm = std::exp(log_beta_fn(a, b));
  if (a >= 1.0 && b >= 1.0) {
    auto density = [&](double t) {
      return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0);
    };
    return adaptive_simpson(density, 0.0, x) / norm;
  }
  if (a == 0.5 && b == 0.5) {
    auto desingularized = [](double u) {
      return 2.0 / std::sqrt(1.0 - u * u);
    };
    return adaptive_simpson(desingularized, 0.0, std::sqrt(x)) / norm;
  }
  throw std::invalid_argument("quadrature oracle: unsupported (a, b) shape");
}

// ---------------------------------------------------------------------------
// Closed forms for Student's t at df = 1 (Cauchy) and df = 2.
// ---------------------------------------------------------------------------

constexpr double kPi = 3.14159265358979323846;

inline double cauchy_cdf(double x) { return 0.5 + std::atan(x) / kPi; }

// Upper-tail quantile: returns t with P(T > t) = q for T ~ t_1.
inline double cauchy_upper_quantile(double q) {
  return std::tan(kPi * (0.5 - q));
}

// df = 2 closed form: t with P(T <= t) = p is sqrt(2/(4 p (1-p)) - 2),
// signed by p - 1/2.
inline double t2_quantile(double p) {
  const double t = std::sqrt(2.0 / (4.0 * p * (1.0 - p)) - 2.0);
  return p >= 0.5 ? t : -t;
}

inline double t2_upper_quantile(double q) { return t2_quantile(1.0 - q); }

// ---------------------------------------------------------------------------
// Two-pass descriptive statistics (direct summation).
// ---------------------------------------------------------------------------

inline double two_pass_mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double two_pass_sample_stddev(const std::vector<double>& xs) {
  const double m = two_pass_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// ---------------------------------------------------------------------------
// Brute-force Cohen's kappa from raw label pairs: count agreements
// directly, estimate chance agreement from empirical marginals.
// ---------------------------------------------------------------------------

inline double brute_force_kappa(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  const double n = static_cast<double>(pairs.size());
  std::map<std::string, double> first_marginal;
  std::map<std::string, double> second_marginal;
  double agree = 0.0;
  for (const auto& [a, b] : pairs) {
    if (a == b) agree += 1.0;
    first_marginal[a] += 1.0;
    second_marginal[b] += 1.0;
  }
  const double p_observed = agree / n;
  double p_chance = 0.0;
  for (const auto& [label, count] : first_marginal) {
    auto it = second_marginal.find(label);
    if (it != second_marginal.end()) {
      p_chance += (count / n) * (it->second / n);
    }
  }
  return (p_observed - p_chance) / (1.0 - p_chance);
}

// ---------------------------------------------------------------------------
// Type-7 (linear interpolation) quantile, for IQR hand checks.
// ---------------------------------------------------------------------------

inline double quantile_type7(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  const double h = p * static_cast<double>(xs.size() - 1);
  const std::size_t i = static_cast<std::size_t>(h);
  if (i + 1 >= xs.size()) return xs.back();
  return xs[i] + (h - static_cast<double>(i)) * (xs[i + 1] - xs[i]);
}

}  // namespace oracles
