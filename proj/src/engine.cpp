#include "tqeval/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tqeval/irr.hpp"
#include "tqeval/report.hpp"

namespace tqeval {

namespace {

// Linear-interpolation quantile (the common "type 7" convention).
double quantile_of_sorted(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(h);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + (h - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
}

std::string format2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kPass: return "PASS";
    case VerdictKind::kFail: return "FAIL";
    case VerdictKind::kBorderlinePass: return "BORDERLINE_PASS";
    case VerdictKind::kBorderlineFail: return "BORDERLINE_FAIL";
  }
  throw std::logic_error("unreachable verdict kind");
}

VerdictKind verdict_kind_from_string(const std::string& s) {
  if (s == "PASS") return VerdictKind::kPass;
  if (s == "FAIL") return VerdictKind::kFail;
  if (s == "BORDERLINE_PASS") return VerdictKind::kBorderlinePass;
  if (s == "BORDERLINE_FAIL") return VerdictKind::kBorderlineFail;
  throw std::domain_error("unknown verdict kind: " + s);
}

double rule_of_thumb_estimate(double historical_avg, double new_score) {
  return 0.5 * (historical_avg + new_score);
}

Verdict threshold_verdict(const ConfidenceInterval& ci, double mean,
                          const ThresholdPolicy& policy) {
  const double threshold = policy.pass_threshold;
  Verdict v;
  v.interval = ci;
  v.mean = mean;
  v.threshold = threshold;
  if (ci.lower >= threshold) {
    v.kind = VerdictKind::kPass;
    v.rationale = "the whole interval clears the threshold";
  } else if (ci.upper < threshold) {
    v.kind = VerdictKind::kFail;
    v.rationale = "the whole interval falls below the threshold";
  } else if (mean < threshold) {
    v.kind = VerdictKind::kBorderlineFail;
    v.rationale =
        "the interval straddles the threshold and the mean falls below it, "
        "so more than half of the possible values miss the threshold";
  } else {
    v.kind = VerdictKind::kBorderlinePass;
    v.rationale =
        "the interval straddles the threshold and the mean does not fall "
        "below it";
  }
  return v;
}

std::string to_string(FlagKind kind) {
  switch (kind) {
    case FlagKind::kOutlierScore: return "outlier-score";
    case FlagKind::kSampleTooSmall: return "sample-too-small";
    case FlagKind::kSampleTooLarge: return "sample-too-large";
  }
  throw std::logic_error("unreachable flag kind");
}

std::vector<MeasurementFlag> flag_suspect_measurements(
    const std::vector<QualityMeasurement>& history,
    std::optional<SampleSizeBounds> bounds) {
  std::vector<MeasurementFlag> flags;

  // 1.5*IQR fences per project.
  std::map<std::string, std::vector<std::size_t>> by_project;
  for (std::size_t i = 0; i < history.size(); ++i) {
    by_project[history[i].project_id].push_back(i);
  }
  for (const auto& [project, indices] : by_project) {
    std::vector<double> scores;
    scores.reserve(indices.size());
    for (std::size_t i : indices) scores.push_back(history[i].score);
    std::sort(scores.begin(), scores.end());
    const double q1 = quantile_of_sorted(scores, 0.25);
    const double q3 = quantile_of_sorted(scores, 0.75);
    const double iqr = q3 - q1;
    const double low_fence = q1 - 1.5 * iqr;
    const double high_fence = q3 + 1.5 * iqr;
    for (std::size_t i : indices) {
      const double s = history[i].score;
      if (s < low_fence || s > high_fence) {
        std::ostringstream detail;
        detail << "score " << format2(s) << " lies outside the 1.5*IQR fences ["
               << format2(low_fence) << ", " << format2(high_fence)
               << "] of project " << project;
        flags.push_back({i, FlagKind::kOutlierScore, detail.str()});
      }
    }
  }

  if (bounds) {
    for (std::size_t i = 0; i < history.size(); ++i) {
      const auto& size = history[i].sample_size_of_evaluated_text;
      if (!size) continue;
      if (*size < bounds->min_size) {
        std::ostringstream detail;
        detail << "evaluated text sample of " << *size
               << " units is below the configured minimum " << bounds->min_size;
        flags.push_back({i, FlagKind::kSampleTooSmall, detail.str()});
      } else if (*size > bounds->max_size) {
        std::ostringstream detail;
        detail << "evaluated text sample of " << *size
               << " units is above the configured maximum " << bounds->max_size;
        flags.push_back({i, FlagKind::kSampleTooLarge, detail.str()});
      }
    }
  }

  std::sort(flags.begin(), flags.end(),
            [](const MeasurementFlag& a, const MeasurementFlag& b) {
              return a.index != b.index ? a.index < b.index
                                        : static_cast<int>(a.kind) <
                                              static_cast<int>(b.kind);
            });
  return flags;
}

EvaluationReport evaluate(const std::vector<QualityMeasurement>& history,
                          const std::vector<double>& new_scores,
                          const ThresholdPolicy& policy,
                          const EvaluateOptions& options) {
  if (new_scores.empty()) {
    throw std::domain_error("evaluate needs at least one new score");
  }

  if (new_scores.size() == 1) {
    if (history.empty()) {
      throw std::domain_error(
          "a single-score evaluation needs prior history to supply the "
          "fixed prior mean");
    }
    std::vector<double> past;
    past.reserve(history.size());
    for (const auto& m : history) past.push_back(m.score);
    const double prior = mean_of(past);
    const double alpha = 1.0 - policy.confidence;
    const SingleObservation obs(prior, new_scores.front(), options.scale);
    return build_arf_report(obs, alpha, options.arf_row,
                            policy.pass_threshold);
  }

  const ScoreSample sample(new_scores, options.scale);
  return build_t_report(sample, policy.confidence, policy.pass_threshold);
}

}  // namespace tqeval
