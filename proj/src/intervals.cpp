#include "tqeval/intervals.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tqeval {

namespace {

// Tabulated alphas are matched to within 1e-12 so that 1/3 and values
// arriving as 1 - confidence resolve to their table entries.
constexpr double kAlphaMatchTol = 1e-12;

const std::array<ArfKAlphaRow, 7>& table() {
  static const std::array<ArfKAlphaRow, 7> rows = {{
      {0.5, 0.05, 0.5},
      {1.0 / 3.0, 1.26, 1.87},
      {0.25, 1.8, 2.91},
      {0.2, 2.31, 3.94},
      {0.1, 4.79, 8.97},
      {0.05, 9.66, 18.99},
      {0.01, 48.39, 99.0},
  }};
  return rows;
}

}  // namespace

ScoreScale::ScoreScale(double min, double max) : min_(min), max_(max) {
  if (!(min < max)) {
    throw std::domain_error("score scale requires min < max");
  }
}

ConfidenceInterval make_interval(double center, double half_width,
                                 double confidence, const ScoreScale& scale) {
  if (!(half_width >= 0.0)) {
    throw std::domain_error("interval half-width must be non-negative");
  }
  ConfidenceInterval ci;
  ci.center = center;
  ci.half_width = half_width;
  ci.confidence = confidence;
  const double raw_lower = center - half_width;
  const double raw_upper = center + half_width;
  ci.clamped_lower = raw_lower < scale.min();
  ci.clamped_upper = raw_upper > scale.max();
  ci.lower = ci.clamped_lower ? scale.min() : raw_lower;
  ci.upper = ci.clamped_upper ? scale.max() : raw_upper;
  return ci;
}

SingleObservation::SingleObservation(double prior_mean, double y,
                                     ScoreScale scale)
    : prior_mean_(prior_mean), y_(y), scale_(scale) {
  if (!scale_.contains(prior_mean_)) {
    throw std::domain_error("prior mean lies outside the score scale");
  }
  if (!scale_.contains(y_)) {
    throw std::domain_error("observation lies outside the score scale");
  }
}

ScoreSample::ScoreSample(std::vector<double> scores, ScoreScale scale)
    : scores_(std::move(scores)), scale_(scale) {
  if (scores_.empty()) {
    throw std::domain_error("score sample must contain at least one score");
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!scale_.contains(scores_[i])) {
      std::ostringstream msg;
      msg << "score " << scores_[i] << " at position " << i
          << " lies outside the scale [" << scale_.min() << ", "
          << scale_.max() << "]";
      throw std::domain_error(msg.str());
    }
  }
}

double standardize(double y, double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::domain_error("standardize requires a positive sigma");
  }
  return (y - mu) / sigma;
}

std::span<const ArfKAlphaRow> arf_table() { return table(); }

double arf_k_unknown(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 0.5)) {
    throw std::domain_error("ARF alpha must lie in (0, 0.5]");
  }
  return (1.0 - alpha + std::sqrt(1.0 - 2.0 * alpha)) / (2.0 * alpha);
}

double arf_k_normal(double alpha) {
  for (const auto& row : table()) {
    if (std::fabs(row.alpha - alpha) <= kAlphaMatchTol && row.k_normal) {
      return *row.k_normal;
    }
  }
  std::ostringstream msg;
  msg << "alpha " << alpha
      << " has no tabulated normal-row k (no interpolation is performed); "
         "tabulated alphas: 0.5, 1/3, 0.25, 0.2, 0.1, 0.05, 0.01";
  throw std::domain_error(msg.str());
}

bool arf_normal_alpha_suspect(double alpha) {
  return std::fabs(alpha - 0.5) <= kAlphaMatchTol;
}

double arf_k(ArfRow row, double alpha) {
  return row == ArfRow::kNormal ? arf_k_normal(alpha) : arf_k_unknown(alpha);
}

ConfidenceInterval arf_interval(const SingleObservation& obs, double k,
                                double confidence) {
  if (!(k >= 0.0)) {
    throw std::domain_error("ARF k must be non-negative");
  }
  const double center = 0.5 * (obs.y() + obs.prior_mean());
  const double half_width = k * std::fabs(obs.y() - obs.prior_mean());
  return make_interval(center, half_width, confidence, obs.scale());
}

double mean_of(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::domain_error("mean of an empty sample is undefined");
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev_of(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw std::domain_error(
        "sample standard deviation needs at least two observations");
  }
  // Welford's recurrence.
  double mean = 0.0;
  double m2 = 0.0;
  double count = 0.0;
  for (double x : xs) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
  return std::sqrt(m2 / (count - 1.0));
}

double sample_mean(const ScoreSample& sample) { return mean_of(sample.scores()); }

double sample_stddev(const ScoreSample& sample) {
  return sample_stddev_of(sample.scores());
}

TIntervalSummary t_interval(const ScoreSample& sample, double confidence) {
  const std::size_t n = sample.size();
  if (n < 2) {
    throw std::domain_error(
        "a t interval needs at least two observations");
  }
  if (!(confidence > 0.0) || !(confidence < 1.0)) {
    throw std::domain_error("confidence must lie strictly between 0 and 1");
  }

  TIntervalSummary out;
  out.df = static_cast<int>(n) - 1;
  out.mean = sample_mean(sample);
  out.stddev = sample_stddev(sample);
  out.large_sample = n > 30;
  out.critical_t = t_quantile(TCriticalQuery::confidence_level(
      DegreesOfFreedom(out.df), confidence));
  out.margin = out.critical_t * out.stddev / std::sqrt(static_cast<double>(n));
  out.interval = make_interval(out.mean, out.margin, confidence, sample.scale());
  return out;
}

}  // namespace tqeval
