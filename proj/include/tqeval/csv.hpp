#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tqeval/engine.hpp"
#include "tqeval/irr.hpp"

namespace tqeval {

// Score-file ingestion (CSV with a header row, or an equivalent JSON array
// chosen by the .json extension). Known columns: project_id, rater_id,
// score, sample_size, timestamp; the first three are required. Unknown
// columns are rejected by name and malformed rows by line number; nothing
// is skipped silently.
std::vector<QualityMeasurement> read_score_file(
    const std::filesystem::path& path, const ScoreScale& scale);

// A square contingency matrix of counts, one row per line, no header.
RaterLabelMatrix read_matrix_csv(const std::filesystem::path& path);

// Inline matrix syntax for the command line: "45,15;25,15".
RaterLabelMatrix parse_inline_matrix(const std::string& text);

// Raw label pairs: a header row naming the two raters, then one label pair
// per line.
std::vector<std::pair<std::string, std::string>> read_label_pairs_csv(
    const std::filesystem::path& path);

// Strict locale-independent numeric parsing (dot decimal separator only).
double parse_double(const std::string& token, const std::string& what);
std::int64_t parse_int(const std::string& token, const std::string& what);

}  // namespace tqeval
