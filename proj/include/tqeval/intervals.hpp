#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tqeval/tdist.hpp"

namespace tqeval {

// Declared bounds of a quality score. Defaults to the 0..100 scale used for
// translation quality ratings.
class ScoreScale {
 public:
  ScoreScale() = default;
  ScoreScale(double min, double max);

  double min() const { return min_; }
  double max() const { return max_; }
  bool contains(double v) const { return v >= min_ && v <= max_; }

  bool operator==(const ScoreScale&) const = default;

 private:
  double min_ = 0.0;
  double max_ = 100.0;
};

// A confidence interval with its clamping record. `lower`/`upper` are the
// bounds after clamping to the scale; the raw (pre-clamp) bounds stay
// recoverable from center and half_width.
struct ConfidenceInterval {
  double center = 0.0;
  double half_width = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double confidence = 0.0;
  bool clamped_lower = false;
  bool clamped_upper = false;

  double raw_lower() const { return center - half_width; }
  double raw_upper() const { return center + half_width; }
  bool contains(double v) const { return v >= lower && v <= upper; }
  bool raw_contains(double v) const {
    return v >= raw_lower() && v <= raw_upper();
  }

  bool operator==(const ConfidenceInterval&) const = default;
};

ConfidenceInterval make_interval(double center, double half_width,
                                 double confidence, const ScoreScale& scale);

// One new measurement y against a prior guess of the true value. The prior
// must be fixed before y is observed; the constructor takes it first to make
// that ordering visible at call sites (it cannot be machine-checked).
class SingleObservation {
 public:
  SingleObservation(double prior_mean, double y, ScoreScale scale = {});

  double y() const { return y_; }
  double prior_mean() const { return prior_mean_; }
  const ScoreScale& scale() const { return scale_; }

 private:
  double prior_mean_;
  double y_;
  ScoreScale scale_;
};

// An ordered collection of quality scores on a declared scale.
class ScoreSample {
 public:
  explicit ScoreSample(std::vector<double> scores, ScoreScale scale = {});

  const std::vector<double>& scores() const { return scores_; }
  const ScoreScale& scale() const { return scale_; }
  std::size_t size() const { return scores_.size(); }

 private:
  std::vector<double> scores_;
  ScoreScale scale_;
};

// Standardised variate z = (y - mu) / sigma.
double standardize(double y, double mu, double sigma);

// --- Single-observation (ARF) intervals -----------------------------------
//
// Construction after Abbott & Rosenblatt (1963) and Furnival et al. (1989):
// the interval (y + prior)/2 +/- k |y - prior| contains the true mean with
// probability at least 1 - alpha. k depends on alpha and on whether the
// population may be assumed normal.

struct ArfKAlphaRow {
  double alpha;
  std::optional<double> k_normal;  // published table value; no generating formula
  double k_unknown;                // published value; matches arf_k_unknown
};

// The published (k, alpha) table for both rows.
std::span<const ArfKAlphaRow> arf_table();

// Distribution-free k: (1 - alpha + sqrt(1 - 2 alpha)) / (2 alpha),
// valid for 0 < alpha <= 0.5. Strictly decreasing in alpha.
double arf_k_unknown(double alpha);

// Normal-population k, by exact table lookup (no interpolation; the row has
// no published generating formula). Throws std::domain_error for alphas
// outside the table.
double arf_k_normal(double alpha);

// True for the alpha = 0.5 normal-row entry, whose published value (0.05)
// sits below the distribution-free 0.5 and is likely a misprint. The value
// is served verbatim; callers should surface a warning.
bool arf_normal_alpha_suspect(double alpha);

enum class ArfRow { kNormal, kUnknown };

double arf_k(ArfRow row, double alpha);

// The ARF interval for a single observation, clamped to the observation's
// scale. `confidence` must be the 1 - alpha matching the supplied k.
ConfidenceInterval arf_interval(const SingleObservation& obs, double k,
                                double confidence);

// --- Small-sample (Student's t) intervals ---------------------------------

// Plain helpers over raw values; used by ScoreSample operations and by the
// coverage simulator, which works on unclamped draws.
double mean_of(std::span<const double> xs);
double sample_stddev_of(std::span<const double> xs);  // n >= 2, Welford

double sample_mean(const ScoreSample& sample);
double sample_stddev(const ScoreSample& sample);

struct TIntervalSummary {
  ConfidenceInterval interval;
  double mean = 0.0;
  double stddev = 0.0;
  double critical_t = 0.0;  // one-tail (1 - confidence)/2 critical value
  double margin = 0.0;      // E = critical_t * stddev / sqrt(n)
  int df = 0;
  bool large_sample = false;  // n > 30: consider the normal approximation
};

// Two-sided t interval for the sample mean: x_bar +/- E, clamped to the
// sample's scale. Requires n >= 2 and confidence in (0, 1). Samples beyond
// 30 observations are accepted but flagged.
TIntervalSummary t_interval(const ScoreSample& sample, double confidence);

}  // namespace tqeval
