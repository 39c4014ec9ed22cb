#include "tqeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tqeval {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt2(double v) { return fmt("%.2f", v); }

}  // namespace

std::string to_string(ReportMethod m) {
  return m == ReportMethod::kArf ? "ARF" : "T";
}

ReportMethod report_method_from_string(const std::string& s) {
  if (s == "ARF") return ReportMethod::kArf;
  if (s == "T") return ReportMethod::kT;
  throw std::domain_error("unknown report method: " + s);
}

EvaluationReport build_arf_report(const SingleObservation& obs, double alpha,
                                  ArfRow row,
                                  std::optional<double> threshold) {
  EvaluationReport r;
  r.method = ReportMethod::kArf;
  r.scores = {obs.y()};
  r.prior_mean = obs.prior_mean();
  r.confidence = 1.0 - alpha;
  r.critical_symbol = "k";
  r.critical_value = arf_k(row, alpha);
  r.interval = arf_interval(obs, r.critical_value, r.confidence);
  r.mean = r.interval.center;  // the rule-of-thumb estimate
  r.margin = r.interval.half_width;
  if (row == ArfRow::kNormal && arf_normal_alpha_suspect(alpha)) {
    r.warnings.push_back(
        "normal-row k at alpha=0.5 is data-suspect: the published table "
        "lists 0.05 where the distribution-free formula gives 0.5");
  }
  if (threshold) {
    r.verdict = threshold_verdict(r.interval, r.mean,
                                  {*threshold, r.confidence});
  }
  return r;
}

EvaluationReport build_t_report(const ScoreSample& sample, double confidence,
                                std::optional<double> threshold) {
  const TIntervalSummary summary = t_interval(sample, confidence);
  EvaluationReport r;
  r.method = ReportMethod::kT;
  r.scores = sample.scores();
  r.confidence = confidence;
  r.mean = summary.mean;
  r.stddev = summary.stddev;
  r.critical_symbol = "t";
  r.critical_value = summary.critical_t;
  r.df = summary.df;
  r.margin = summary.margin;
  r.interval = summary.interval;
  if (summary.large_sample) {
    r.warnings.push_back("large-sample: consider normal approximation");
  }
  if (sample.size() == 2) {
    const double a = sample.scores()[0];
    const double b = sample.scores()[1];
    if (a > 0.0 && b > 0.0) {
      r.agreement = pairwise_agreement(a, b);
    } else {
      r.warnings.push_back(
          "agreement percentages are undefined for non-positive scores");
    }
  }
  if (threshold) {
    r.verdict = threshold_verdict(r.interval, r.mean, {*threshold, confidence});
  }
  return r;
}

void to_json(nlohmann::json& j, const ConfidenceInterval& ci) {
  j = {{"center", ci.center},
       {"half_width", ci.half_width},
       {"lower", ci.lower},
       {"upper", ci.upper},
       {"confidence", ci.confidence},
       {"clamped_lower", ci.clamped_lower},
       {"clamped_upper", ci.clamped_upper}};
}

void from_json(const nlohmann::json& j, ConfidenceInterval& ci) {
  j.at("center").get_to(ci.center);
  j.at("half_width").get_to(ci.half_width);
  j.at("lower").get_to(ci.lower);
  j.at("upper").get_to(ci.upper);
  j.at("confidence").get_to(ci.confidence);
  j.at("clamped_lower").get_to(ci.clamped_lower);
  j.at("clamped_upper").get_to(ci.clamped_upper);
}

void to_json(nlohmann::json& j, const AgreementPair& a) {
  j = {{"second_vs_first", a.second_vs_first},
       {"first_vs_second", a.first_vs_second}};
}

void from_json(const nlohmann::json& j, AgreementPair& a) {
  j.at("second_vs_first").get_to(a.second_vs_first);
  j.at("first_vs_second").get_to(a.first_vs_second);
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = {{"kind", to_string(v.kind)},
       {"interval", v.interval},
       {"mean", v.mean},
       {"threshold", v.threshold},
       {"rationale", v.rationale}};
}

void from_json(const nlohmann::json& j, Verdict& v) {
  v.kind = verdict_kind_from_string(j.at("kind").get<std::string>());
  j.at("interval").get_to(v.interval);
  j.at("mean").get_to(v.mean);
  j.at("threshold").get_to(v.threshold);
  j.at("rationale").get_to(v.rationale);
}

void to_json(nlohmann::json& j, const EvaluationReport& r) {
  j = nlohmann::json{{"method", to_string(r.method)},
                     {"scores", r.scores},
                     {"confidence", r.confidence},
                     {"mean", r.mean},
                     {"critical_symbol", r.critical_symbol},
                     {"critical_value", r.critical_value},
                     {"margin", r.margin},
                     {"interval", r.interval},
                     {"warnings", r.warnings}};
  if (r.prior_mean) j["prior_mean"] = *r.prior_mean;
  if (r.stddev) j["stddev"] = *r.stddev;
  if (r.df) j["df"] = *r.df;
  if (r.agreement) j["agreement"] = *r.agreement;
  if (r.verdict) j["verdict"] = *r.verdict;
}

void from_json(const nlohmann::json& j, EvaluationReport& r) {
  r = EvaluationReport{};
  r.method = report_method_from_string(j.at("method").get<std::string>());
  j.at("scores").get_to(r.scores);
  j.at("confidence").get_to(r.confidence);
  j.at("mean").get_to(r.mean);
  j.at("critical_symbol").get_to(r.critical_symbol);
  j.at("critical_value").get_to(r.critical_value);
  j.at("margin").get_to(r.margin);
  j.at("interval").get_to(r.interval);
  j.at("warnings").get_to(r.warnings);
  if (j.contains("prior_mean")) r.prior_mean = j.at("prior_mean").get<double>();
  if (j.contains("stddev")) r.stddev = j.at("stddev").get<double>();
  if (j.contains("df")) r.df = j.at("df").get<int>();
  if (j.contains("agreement")) r.agreement = j.at("agreement").get<AgreementPair>();
  if (j.contains("verdict")) r.verdict = j.at("verdict").get<Verdict>();
}

std::string render_text(const EvaluationReport& report, bool explain) {
  std::ostringstream out;
  const bool is_arf = report.method == ReportMethod::kArf;
  out << "method:      "
      << (is_arf ? "single-observation interval (ARF)"
                 : "t interval (df = " + std::to_string(report.df.value_or(0)) +
                       ")")
      << "\n";
  out << "scores:     ";
  for (double s : report.scores) out << " " << fmt2(s);
  out << "\n";
  if (report.prior_mean) {
    out << "prior mean:  " << fmt2(*report.prior_mean) << "\n";
  }
  out << (is_arf ? "estimate:    " : "mean:        ") << fmt2(report.mean)
      << "\n";
  if (report.stddev) {
    out << "stddev:      " << fmt2(*report.stddev) << "\n";
  }
  out << "critical " << report.critical_symbol << ":  "
      << fmt("%.3f", report.critical_value) << "\n";
  out << "margin:      " << fmt2(report.margin) << "\n";
  out << "interval:    [" << fmt2(report.interval.lower) << ", "
      << fmt2(report.interval.upper) << "] at "
      << fmt("%.0f", report.confidence * 100.0) << "% confidence";
  if (report.interval.clamped_lower || report.interval.clamped_upper) {
    out << " (clamped to scale)";
  }
  out << "\n";
  if (report.agreement) {
    out << "agreement:   second vs first "
        << fmt("%.1f", report.agreement->second_vs_first * 100.0)
        << "%, first vs second "
        << fmt("%.1f", report.agreement->first_vs_second * 100.0) << "%\n";
  }
  if (explain) {
    if (is_arf && report.prior_mean && !report.scores.empty()) {
      const double y = report.scores.front();
      const double prior = *report.prior_mean;
      out << "explain:     interval = (y + prior)/2 +/- k*|y - prior| = ("
          << fmt2(y) << " + " << fmt2(prior) << ")/2 +/- "
          << fmt("%.3g", report.critical_value) << "*|" << fmt2(y) << " - "
          << fmt2(prior) << "| = " << fmt2(report.mean) << " +/- "
          << fmt2(report.margin) << "\n";
    } else if (!is_arf && report.stddev) {
      out << "explain:     E = t * s / sqrt(n) = "
          << fmt("%.3f", report.critical_value) << " * "
          << fmt("%.4f", *report.stddev) << " / sqrt("
          << report.scores.size() << ") = " << fmt("%.4f", report.margin)
          << "\n";
    }
  }
  if (report.verdict) {
    out << "verdict:     " << to_string(report.verdict->kind) << " against threshold "
        << fmt2(report.verdict->threshold) << "\n";
    out << "             (" << report.verdict->rationale << ")\n";
  }
  for (const auto& w : report.warnings) {
    out << "warning:     " << w << "\n";
  }
  return out.str();
}

}  // namespace tqeval
