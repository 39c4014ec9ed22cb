#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqeval/engine.hpp"
#include "tqeval/intervals.hpp"
#include "tqeval/irr.hpp"

namespace tqeval {

enum class ReportMethod { kArf, kT };

std::string to_string(ReportMethod m);
ReportMethod report_method_from_string(const std::string& s);

// Everything one evaluation produces. The JSON form keeps full precision;
// the text rendering rounds to two decimals for display.
struct EvaluationReport {
  ReportMethod method = ReportMethod::kT;
  std::vector<double> scores;
  std::optional<double> prior_mean;  // ARF only
  double confidence = 0.0;
  double mean = 0.0;
  std::optional<double> stddev;        // n >= 2 only
  std::string critical_symbol;         // "k" (ARF) or "t"
  double critical_value = 0.0;
  std::optional<int> df;               // t only
  double margin = 0.0;                 // pre-clamp half-width
  ConfidenceInterval interval;
  std::optional<AgreementPair> agreement;  // exactly two scores
  std::optional<Verdict> verdict;
  std::vector<std::string> warnings;

  bool operator==(const EvaluationReport&) const = default;
};

// ARF report for one observation at the given alpha; confidence = 1 - alpha.
EvaluationReport build_arf_report(const SingleObservation& obs, double alpha,
                                  ArfRow row,
                                  std::optional<double> threshold);

// t-interval report for n >= 2 scores.
EvaluationReport build_t_report(const ScoreSample& sample, double confidence,
                                std::optional<double> threshold);

void to_json(nlohmann::json& j, const ConfidenceInterval& ci);
void from_json(const nlohmann::json& j, ConfidenceInterval& ci);
void to_json(nlohmann::json& j, const AgreementPair& a);
void from_json(const nlohmann::json& j, AgreementPair& a);
void to_json(nlohmann::json& j, const Verdict& v);
void from_json(const nlohmann::json& j, Verdict& v);
void to_json(nlohmann::json& j, const EvaluationReport& r);
void from_json(const nlohmann::json& j, EvaluationReport& r);

// Human-readable rendering, two-decimal display. With `explain`, the
// formula instantiation behind the margin is spelled out.
std::string render_text(const EvaluationReport& report, bool explain = false);

}  // namespace tqeval
