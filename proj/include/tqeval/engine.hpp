#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqeval/intervals.hpp"

namespace tqeval {

// One stored quality evaluation. Timestamps are ISO-8601 UTC strings
// ("2024-05-01T12:00:00Z").
struct QualityMeasurement {
  std::string project_id;
  std::string rater_id;
  double score = 0.0;
  std::optional<std::int64_t> sample_size_of_evaluated_text;
  std::string timestamp;

  bool operator==(const QualityMeasurement&) const = default;
};

struct ThresholdPolicy {
  double pass_threshold = 80.0;
  double confidence = 0.80;
};

enum class VerdictKind { kPass, kFail, kBorderlinePass, kBorderlineFail };

std::string to_string(VerdictKind kind);
VerdictKind verdict_kind_from_string(const std::string& s);

struct Verdict {
  VerdictKind kind = VerdictKind::kFail;
  ConfidenceInterval interval;
  double mean = 0.0;
  double threshold = 0.0;
  std::string rationale;

  bool operator==(const Verdict&) const = default;
};

// Halfway between the running average and a deviant new measurement; the
// best single-number guess when only the new score is available.
double rule_of_thumb_estimate(double historical_avg, double new_score);

// PASS when the whole interval clears the threshold, FAIL when it falls
// entirely below, otherwise borderline split by where the mean sits. A mean
// exactly at the threshold counts as borderline PASS: at equality, half of
// the possible values are not below it.
Verdict threshold_verdict(const ConfidenceInterval& ci, double mean,
                          const ThresholdPolicy& policy);

// --- Data-quality flags ----------------------------------------------------

enum class FlagKind { kOutlierScore, kSampleTooSmall, kSampleTooLarge };

std::string to_string(FlagKind kind);

struct SampleSizeBounds {
  std::int64_t min_size = 0;
  std::int64_t max_size = 0;
};

struct MeasurementFlag {
  std::size_t index = 0;  // position within the supplied history
  FlagKind kind = FlagKind::kOutlierScore;
  std::string detail;
};

// Flags measurements that look unreliable: scores outside the 1.5*IQR
// fences of their project's history, and evaluations made on text samples
// outside the configured size bounds. Annotation only; nothing is removed.
std::vector<MeasurementFlag> flag_suspect_measurements(
    const std::vector<QualityMeasurement>& history,
    std::optional<SampleSizeBounds> bounds = std::nullopt);

// --- Orchestration ---------------------------------------------------------

struct EvaluateOptions {
  ArfRow arf_row = ArfRow::kNormal;
  ScoreScale scale{};
};

struct EvaluationReport;  // tqeval/report.hpp

// Runs the interval machinery over stored history plus fresh scores: a
// single new score gets the ARF interval with the historical average as the
// prior (an error without history) plus the rule-of-thumb estimate; two or
// more scores get the t interval, with agreement percentages attached for
// exactly two. A verdict against the policy threshold is always included.
// Callers need tqeval/report.hpp for the result type.
EvaluationReport evaluate(const std::vector<QualityMeasurement>& history,
                          const std::vector<double>& new_scores,
                          const ThresholdPolicy& policy,
                          const EvaluateOptions& options = {});

}  // namespace tqeval
