#include "tqeval/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqeval/config.hpp"
#include "tqeval/csv.hpp"
#include "tqeval/engine.hpp"
#include "tqeval/errors.hpp"
#include "tqeval/history.hpp"
#include "tqeval/intervals.hpp"
#include "tqeval/irr.hpp"
#include "tqeval/mc.hpp"
#include "tqeval/report.hpp"
#include "tqeval/tdist.hpp"

namespace tqeval::cli {

namespace {

constexpr const char* kDefaultHistoryFile = "tqe_history.jsonl";

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

ArfRow arf_row_from_string(const std::string& s) {
  if (s == "normal") return ArfRow::kNormal;
  if (s == "unknown") return ArfRow::kUnknown;
  throw std::domain_error("--row must be 'normal' or 'unknown', got '" + s +
                          "'");
}

struct Context {
  ToolConfig config;

  ScoreScale scale(std::optional<double> flag_min,
                   std::optional<double> flag_max) const {
    const double lo = flag_min.value_or(config.scale_min.value_or(0.0));
    const double hi = flag_max.value_or(config.scale_max.value_or(100.0));
    return {lo, hi};
  }

  double confidence(std::optional<double> flag) const {
    return flag.value_or(config.confidence.value_or(0.80));
  }

  std::optional<double> threshold(std::optional<double> flag) const {
    if (flag) return flag;
    return config.threshold;
  }

  std::string history_file(const std::string& flag) const {
    if (!flag.empty()) return flag;
    if (config.history_file) return *config.history_file;
    return kDefaultHistoryFile;
  }
};

void emit_report(const EvaluationReport& report, bool json, bool explain,
                 std::ostream& out) {
  if (json) {
    out << nlohmann::json(report).dump(2) << "\n";
  } else {
    out << render_text(report, explain);
  }
}

int verdict_exit_code(const EvaluationReport& report) {
  if (report.verdict && (report.verdict->kind == VerdictKind::kFail ||
                         report.verdict->kind == VerdictKind::kBorderlineFail)) {
    return kExitGateFail;
  }
  return kExitOk;
}

void print_coverage(const CoverageResult& r, bool json, std::ostream& out) {
  if (json) {
    nlohmann::json j = {
        {"method", to_string(r.scenario.method)},
        {"nominal_confidence", r.scenario.confidence},
        {"n_observations", r.scenario.n_observations},
        {"trials", r.trials},
        {"covered", r.covered},
        {"empirical_coverage", r.empirical_coverage},
        {"mean_halfwidth", r.mean_halfwidth},
        {"seed", r.scenario.seed},
    };
    out << j.dump(2) << "\n";
    return;
  }
  out << "method:              " << to_string(r.scenario.method) << "\n"
      << "nominal confidence:  " << fmt("%.2f", r.scenario.confidence) << "\n"
      << "observations/trial:  " << r.scenario.n_observations << "\n"
      << "trials:              " << r.trials << "\n"
      << "covered:             " << r.covered << "\n"
      << "empirical coverage:  " << fmt("%.4f", r.empirical_coverage) << "\n"
      << "mean half-width:     " << fmt("%.4f", r.mean_halfwidth) << "\n";
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Confidence intervals, verdicts and inter-rater reliability for "
      "scarce quality-evaluation scores"};
  app.name("tqeval");
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "TOML config file (default: $TQEVAL_CONFIG)")
      ->envname("TQEVAL_CONFIG");

  // --- arf -----------------------------------------------------------------
  auto* arf = app.add_subcommand(
      "arf", "Single-observation interval from a new score and a fixed prior");
  double arf_y = 0.0;
  double arf_prior = 0.0;
  double arf_alpha = 0.0;
  std::string arf_row = "normal";
  std::optional<double> arf_scale_min, arf_scale_max, arf_threshold;
  bool arf_json = false, arf_explain = false;
  arf->add_option("--y", arf_y, "the new measurement")->required();
  arf->add_option("--prior", arf_prior,
                  "fixed prior mean, set before the measurement")
      ->required();
  arf->add_option("--alpha", arf_alpha, "miss probability (confidence 1-alpha)")
      ->required();
  arf->add_option("--row", arf_row, "k table row: normal|unknown")
      ->capture_default_str();
  arf->add_option("--scale-min", arf_scale_min, "score scale lower bound");
  arf->add_option("--scale-max", arf_scale_max, "score scale upper bound");
  arf->add_option("--threshold", arf_threshold, "PASS/FAIL threshold");
  arf->add_flag("--json", arf_json, "emit the full-precision JSON report");
  arf->add_flag("--explain", arf_explain, "show the formula instantiation");

  // --- tci -----------------------------------------------------------------
  auto* tci = app.add_subcommand(
      "tci", "Student's t confidence interval for two or more scores");
  std::vector<double> tci_scores;
  std::string tci_file;
  std::optional<double> tci_confidence, tci_threshold, tci_scale_min,
      tci_scale_max;
  bool tci_json = false, tci_explain = false;
  tci->add_option("--scores", tci_scores, "comma-separated scores")
      ->delimiter(',');
  tci->add_option("--file", tci_file, "score file (CSV with header, or JSON)");
  tci->add_option("--confidence", tci_confidence, "confidence level (0,1)");
  tci->add_option("--threshold", tci_threshold, "PASS/FAIL threshold");
  tci->add_option("--scale-min", tci_scale_min, "score scale lower bound");
  tci->add_option("--scale-max", tci_scale_max, "score scale upper bound");
  tci->add_flag("--json", tci_json, "emit the full-precision JSON report");
  tci->add_flag("--explain", tci_explain, "show the formula instantiation");

  // --- tcrit ---------------------------------------------------------------
  auto* tcrit = app.add_subcommand(
      "tcrit", "Student's t critical values (computed, not table lookup)");
  int tcrit_df = 1;
  std::optional<double> tcrit_one_tail, tcrit_two_tail, tcrit_confidence;
  bool tcrit_table = false, tcrit_json = false;
  tcrit->add_option("--df", tcrit_df, "degrees of freedom");
  tcrit->add_option("--one-tail", tcrit_one_tail, "upper-tail area (0, 0.5]");
  tcrit->add_option("--two-tail", tcrit_two_tail, "two-tail alpha (0, 1]");
  tcrit->add_option("--confidence", tcrit_confidence,
                    "confidence level [0, 1)");
  tcrit->add_flag("--table", tcrit_table,
                  "print the critical-value table for df 1..30");
  tcrit->add_flag("--json", tcrit_json, "emit JSON");

  // --- kappa ---------------------------------------------------------------
  auto* kappa = app.add_subcommand(
      "kappa", "Cohen's kappa from proportions, frequencies, a matrix or "
               "raw labels");
  std::optional<double> kappa_po, kappa_pe, kappa_fe;
  std::optional<std::int64_t> kappa_fo, kappa_n;
  std::string kappa_matrix, kappa_matrix_file, kappa_labels_file;
  bool kappa_json = false;
  kappa->add_option("--po", kappa_po, "observed agreement proportion");
  kappa->add_option("--pe", kappa_pe, "chance agreement proportion");
  kappa->add_option("--fo", kappa_fo, "observed agreement count");
  kappa->add_option("--fe", kappa_fe, "chance agreement count (may be fractional)");
  kappa->add_option("--n", kappa_n, "total number of units");
  kappa->add_option("--matrix", kappa_matrix,
                    "inline contingency matrix, e.g. \"45,15;25,15\"");
  kappa->add_option("--matrix-file", kappa_matrix_file,
                    "contingency matrix CSV (no header)");
  kappa->add_option("--labels", kappa_labels_file,
                    "raw label CSV: header row, then one label pair per line");
  kappa->add_flag("--json", kappa_json, "emit JSON");

  // --- agree ---------------------------------------------------------------
  auto* agree = app.add_subcommand(
      "agree", "Pairwise agreement percentages between two scores");
  std::vector<double> agree_scores;
  bool agree_json = false;
  agree->add_option("--scores", agree_scores, "the two scores")
      ->delimiter(',')
      ->expected(2)
      ->required();
  agree->add_flag("--json", agree_json, "emit JSON");

  // --- decide --------------------------------------------------------------
  auto* decide = app.add_subcommand(
      "decide", "Evaluate new scores against history and a PASS threshold");
  std::vector<double> decide_scores;
  std::string decide_project, decide_history, decide_row = "normal";
  std::optional<double> decide_confidence, decide_threshold, decide_scale_min,
      decide_scale_max;
  bool decide_json = false, decide_explain = false;
  decide->add_option("--scores", decide_scores, "new scores")
      ->delimiter(',')
      ->required();
  decide->add_option("--project", decide_project,
                     "restrict history to this project");
  decide->add_option("--history", decide_history, "history JSONL file");
  decide->add_option("--confidence", decide_confidence, "confidence level");
  decide->add_option("--threshold", decide_threshold, "PASS/FAIL threshold");
  decide->add_option("--row", decide_row,
                     "ARF k row for single-score evaluations: normal|unknown")
      ->capture_default_str();
  decide->add_option("--scale-min", decide_scale_min, "score scale lower bound");
  decide->add_option("--scale-max", decide_scale_max, "score scale upper bound");
  decide->add_flag("--json", decide_json, "emit JSON");
  decide->add_flag("--explain", decide_explain, "show the formula instantiation");

  // --- history -------------------------------------------------------------
  auto* history = app.add_subcommand(
      "history", "Append-only store of past quality measurements");
  history->require_subcommand(1);
  std::string hist_file;
  history->add_option("--file", hist_file, "history JSONL file");

  auto* hist_add = history->add_subcommand("add", "append one measurement");
  std::string add_project, add_rater, add_timestamp;
  double add_score = 0.0;
  std::optional<std::int64_t> add_sample_size;
  hist_add->add_option("--project", add_project, "project id")->required();
  hist_add->add_option("--rater", add_rater, "rater id")->required();
  hist_add->add_option("--score", add_score, "quality score")->required();
  hist_add->add_option("--sample-size", add_sample_size,
                       "size of the evaluated text sample");
  hist_add->add_option("--timestamp", add_timestamp,
                       "ISO-8601 UTC timestamp (default: now)");

  auto* hist_list = history->add_subcommand("list", "print stored measurements");
  std::string list_project;
  hist_list->add_option("--project", list_project, "filter by project id");

  auto* hist_flags = history->add_subcommand(
      "flags", "flag suspect measurements (outliers, sample-size bounds)");
  std::string flags_project;
  std::optional<std::int64_t> flags_min_sample, flags_max_sample;
  hist_flags->add_option("--project", flags_project, "filter by project id");
  hist_flags->add_option("--min-sample", flags_min_sample,
                         "smallest acceptable evaluated-text sample");
  hist_flags->add_option("--max-sample", flags_max_sample,
                         "largest acceptable evaluated-text sample");

  // --- coverage / sweep ----------------------------------------------------
  auto* coverage = app.add_subcommand(
      "coverage", "Monte Carlo coverage check for a scenario file");
  std::string coverage_config, coverage_csv;
  std::optional<int> coverage_workers;
  bool coverage_json = false;
  coverage->add_option("--config", coverage_config,
                       "scenario file (.toml or .json)")
      ->required();
  coverage->add_option("--workers", coverage_workers,
                       "worker threads (default: hardware)");
  coverage->add_option("--csv", coverage_csv, "also write a one-row CSV here");
  coverage->add_flag("--json", coverage_json, "emit the JSON summary");

  auto* sweep = app.add_subcommand(
      "sweep", "Mean interval width against sample size (plot-ready CSV)");
  std::string sweep_config, sweep_csv_path;
  std::vector<int> sweep_ns;
  bool sweep_single_row = false;
  std::optional<int> sweep_workers;
  sweep->add_option("--config", sweep_config, "base scenario file")->required();
  sweep->add_option("--n", sweep_ns, "sample sizes, each >= 2")
      ->delimiter(',')
      ->required();
  sweep->add_flag("--single-obs-row", sweep_single_row,
                  "prepend the n=1 single-observation row");
  sweep->add_option("--workers", sweep_workers,
                    "worker threads (default: hardware)");
  sweep->add_option("--csv", sweep_csv_path,
                    "write the CSV here instead of stdout");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Context ctx;
    if (!config_path.empty()) {
      ctx.config = ToolConfig::load(config_path);
    }

    if (arf->parsed()) {
      const ScoreScale scale = ctx.scale(arf_scale_min, arf_scale_max);
      const SingleObservation obs(arf_prior, arf_y, scale);
      const EvaluationReport report = build_arf_report(
          obs, arf_alpha, arf_row_from_string(arf_row),
          ctx.threshold(arf_threshold));
      emit_report(report, arf_json, arf_explain, out);
      return kExitOk;
    }

    if (tci->parsed()) {
      const ScoreScale scale = ctx.scale(tci_scale_min, tci_scale_max);
      std::vector<double> scores = tci_scores;
      if (!tci_file.empty()) {
        if (!scores.empty()) {
          throw std::domain_error("--scores and --file are mutually exclusive");
        }
        for (const auto& m : read_score_file(tci_file, scale)) {
          scores.push_back(m.score);
        }
      }
      if (scores.size() < 2) {
        throw std::domain_error(
            "tci needs at least two scores; use `arf` for a single "
            "observation");
      }
      const EvaluationReport report =
          build_t_report(ScoreSample(scores, scale),
                         ctx.confidence(tci_confidence),
                         ctx.threshold(tci_threshold));
      emit_report(report, tci_json, tci_explain, out);
      return verdict_exit_code(report);
    }

    if (tcrit->parsed()) {
      if (tcrit_table) {
        const double tails[] = {0.10, 0.05, 0.025, 0.01, 0.005};
        out << "df";
        for (double q : tails) out << "\t" << fmt("%.3f", q);
        out << "\n";
        for (int df = 1; df <= 30; ++df) {
          out << df;
          for (double q : tails) {
            out << "\t"
                << fmt("%.3f", t_quantile(TCriticalQuery::one_tail(
                                   DegreesOfFreedom(df), q)));
          }
          out << "\n";
        }
        return kExitOk;
      }
      const int given = (tcrit_one_tail ? 1 : 0) + (tcrit_two_tail ? 1 : 0) +
                        (tcrit_confidence ? 1 : 0);
      if (given != 1) {
        throw std::domain_error(
            "give exactly one of --one-tail, --two-tail, --confidence");
      }
      const DegreesOfFreedom df(tcrit_df);
      TCriticalQuery query =
          tcrit_one_tail     ? TCriticalQuery::one_tail(df, *tcrit_one_tail)
          : tcrit_two_tail   ? TCriticalQuery::two_tail(df, *tcrit_two_tail)
                             : TCriticalQuery::confidence_level(
                                   df, *tcrit_confidence);
      const double t = t_quantile(query);
      if (tcrit_json) {
        out << nlohmann::json{{"df", tcrit_df},
                              {"tail_probability", query.tail_probability()},
                              {"critical_value", t}}
                   .dump(2)
            << "\n";
      } else {
        out << fmt("%.3f", t) << "\n";
      }
      return kExitOk;
    }

    if (kappa->parsed()) {
      double value = 0.0;
      std::optional<double> observed, chance;
      if (kappa_po || kappa_pe) {
        if (!kappa_po || !kappa_pe) {
          throw std::domain_error("--po and --pe must be given together");
        }
        observed = *kappa_po;
        chance = *kappa_pe;
        value = cohen_kappa(KappaProportions{*kappa_po, *kappa_pe});
      } else if (kappa_fo || kappa_fe || kappa_n) {
        if (!kappa_fo || !kappa_fe || !kappa_n) {
          throw std::domain_error("--fo, --fe and --n must be given together");
        }
        value = cohen_kappa(KappaFrequencies{*kappa_fo, *kappa_fe, *kappa_n});
      } else if (!kappa_matrix.empty() || !kappa_matrix_file.empty()) {
        const RaterLabelMatrix m = !kappa_matrix.empty()
                                       ? parse_inline_matrix(kappa_matrix)
                                       : read_matrix_csv(kappa_matrix_file);
        observed = m.observed_agreement();
        chance = m.chance_agreement();
        value = cohen_kappa(m);
      } else if (!kappa_labels_file.empty()) {
        const auto pairs = read_label_pairs_csv(kappa_labels_file);
        const RaterLabelMatrix m = RaterLabelMatrix::from_label_pairs(pairs);
        observed = m.observed_agreement();
        chance = m.chance_agreement();
        value = cohen_kappa(m);
      } else {
        throw std::domain_error(
            "give --po/--pe, --fo/--fe/--n, --matrix, --matrix-file or "
            "--labels");
      }
      if (kappa_json) {
        nlohmann::json j = {{"kappa", value}};
        if (observed) j["observed_agreement"] = *observed;
        if (chance) j["chance_agreement"] = *chance;
        out << j.dump(2) << "\n";
      } else {
        out << fmt("%.4g", value) << "\n";
      }
      return kExitOk;
    }

    if (agree->parsed()) {
      const AgreementPair pair =
          pairwise_agreement(agree_scores[0], agree_scores[1]);
      if (agree_json) {
        out << nlohmann::json(pair).dump(2) << "\n";
      } else {
        out << "second vs first: "
            << fmt("%.1f", pair.second_vs_first * 100.0) << "%\n"
            << "first vs second: "
            << fmt("%.1f", pair.first_vs_second * 100.0) << "%\n";
      }
      return kExitOk;
    }

    if (decide->parsed()) {
      const HistoryStore store(ctx.history_file(decide_history));
      const std::vector<QualityMeasurement> past =
          decide_project.empty() ? store.load()
                                 : store.load_project(decide_project);
      ThresholdPolicy policy;
      policy.pass_threshold = ctx.threshold(decide_threshold).value_or(80.0);
      policy.confidence = ctx.confidence(decide_confidence);
      EvaluateOptions options;
      options.arf_row = arf_row_from_string(decide_row);
      options.scale = ctx.scale(decide_scale_min, decide_scale_max);
      const EvaluationReport report =
          evaluate(past, decide_scores, policy, options);
      emit_report(report, decide_json, decide_explain, out);
      return verdict_exit_code(report);
    }

    if (history->parsed()) {
      const HistoryStore store(ctx.history_file(hist_file));
      if (hist_add->parsed()) {
        QualityMeasurement m;
        m.project_id = add_project;
        m.rater_id = add_rater;
        m.score = add_score;
        m.sample_size_of_evaluated_text = add_sample_size;
        m.timestamp = add_timestamp.empty() ? now_utc_iso8601() : add_timestamp;
        store.append(m);
        out << "appended to " << store.path().string() << "\n";
        return kExitOk;
      }
      if (hist_list->parsed()) {
        const auto measurements = list_project.empty()
                                      ? store.load()
                                      : store.load_project(list_project);
        for (const auto& m : measurements) {
          out << m.timestamp << "  " << m.project_id << "  " << m.rater_id
              << "  " << fmt("%.2f", m.score);
          if (m.sample_size_of_evaluated_text) {
            out << "  sample=" << *m.sample_size_of_evaluated_text;
          }
          out << "\n";
        }
        return kExitOk;
      }
      // flags
      const auto measurements = flags_project.empty()
                                    ? store.load()
                                    : store.load_project(flags_project);
      std::optional<SampleSizeBounds> bounds;
      if (flags_min_sample || flags_max_sample) {
        if (!flags_min_sample || !flags_max_sample) {
          throw std::domain_error(
              "--min-sample and --max-sample must be given together");
        }
        bounds = SampleSizeBounds{*flags_min_sample, *flags_max_sample};
      }
      for (const auto& flag : flag_suspect_measurements(measurements, bounds)) {
        const auto& m = measurements[flag.index];
        out << to_string(flag.kind) << "  " << m.timestamp << "  "
            << m.project_id << "  " << m.rater_id << "  "
            << fmt("%.2f", m.score) << "  (" << flag.detail << ")\n";
      }
      return kExitOk;
    }

    if (coverage->parsed()) {
      SimulationScenario scenario = load_scenario(coverage_config);
      if (coverage_workers) scenario.workers = *coverage_workers;
      const CoverageResult result = run_coverage(scenario);
      print_coverage(result, coverage_json, out);
      if (!coverage_csv.empty()) {
        std::ofstream csv(coverage_csv);
        if (!csv) {
          throw parse_error("cannot open CSV output: " + coverage_csv);
        }
        const double rel =
            scenario.true_mean != 0.0
                ? result.mean_halfwidth / std::fabs(scenario.true_mean)
                : std::numeric_limits<double>::quiet_NaN();
        csv << sweep_csv({{scenario.n_observations, result.empirical_coverage,
                           result.mean_halfwidth, rel}});
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      SimulationScenario base = load_scenario(sweep_config);
      if (sweep_workers) base.workers = *sweep_workers;
      const auto rows = width_vs_n_sweep(base, sweep_ns, sweep_single_row);
      const std::string csv = sweep_csv(rows);
      if (sweep_csv_path.empty()) {
        out << csv;
      } else {
        std::ofstream file(sweep_csv_path);
        if (!file) {
          throw parse_error("cannot open CSV output: " + sweep_csv_path);
        }
        file << csv;
        out << "wrote " << rows.size() << " rows to " << sweep_csv_path
            << "\n";
      }
      return kExitOk;
    }

    err << "error: no subcommand selected\n";
    return kExitInput;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace tqeval::cli
