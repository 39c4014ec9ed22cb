#include "tqeval/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tqeval/errors.hpp"
#include "tqeval/history.hpp"

namespace tqeval {

namespace {

const std::vector<std::string> kKnownColumns = {
    "project_id", "rater_id", "score", "sample_size", "timestamp"};

// One CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line,
                                        std::size_t line_number,
                                        const std::string& origin) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) {
    std::ostringstream msg;
    msg << origin << ":" << line_number << ": unterminated quoted field";
    throw parse_error(msg.str());
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

QualityMeasurement measurement_from_fields(
    const std::vector<std::string>& header,
    const std::vector<std::string>& fields, const ScoreScale& scale,
    std::size_t line_number, const std::string& origin) {
  QualityMeasurement m;
  auto fail = [&](const std::string& what) -> void {
    std::ostringstream msg;
    msg << origin << ":" << line_number << ": " << what;
    throw parse_error(msg.str());
  };
  if (fields.size() != header.size()) {
    fail("expected " + std::to_string(header.size()) + " fields, got " +
         std::to_string(fields.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& column = header[i];
    const std::string& value = fields[i];
    if (column == "project_id") {
      m.project_id = value;
    } else if (column == "rater_id") {
      m.rater_id = value;
    } else if (column == "score") {
      m.score = parse_double(value, origin + ":" +
                                        std::to_string(line_number) +
                                        ": score");
      if (!scale.contains(m.score)) {
        fail("score " + value + " lies outside the configured scale");
      }
    } else if (column == "sample_size") {
      if (!value.empty()) {
        m.sample_size_of_evaluated_text = parse_int(
            value,
            origin + ":" + std::to_string(line_number) + ": sample_size");
      }
    } else if (column == "timestamp") {
      if (!value.empty()) {
        if (!is_iso8601_utc(value)) {
          fail("timestamp '" + value +
               "' is not ISO-8601 UTC (YYYY-MM-DDTHH:MM:SSZ)");
        }
        m.timestamp = value;
      }
    }
  }
  return m;
}

std::vector<QualityMeasurement> read_score_json(
    const std::filesystem::path& path, const ScoreScale& scale) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open score file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw parse_error(path.string() + ": expected a JSON array of rows");
  }
  std::vector<QualityMeasurement> out;
  std::size_t row_number = 0;
  for (const auto& row : doc) {
    ++row_number;
    auto fail = [&](const std::string& what) -> void {
      std::ostringstream msg;
      msg << path.string() << ": row " << row_number << ": " << what;
      throw parse_error(msg.str());
    };
    if (!row.is_object()) fail("expected an object");
    for (const auto& [key, _] : row.items()) {
      if (std::find(kKnownColumns.begin(), kKnownColumns.end(), key) ==
          kKnownColumns.end()) {
        fail("unknown column '" + key + "'");
      }
    }
    if (!row.contains("project_id") || !row.contains("rater_id") ||
        !row.contains("score")) {
      fail("project_id, rater_id and score are required");
    }
    QualityMeasurement m;
    try {
      m.project_id = row.at("project_id").get<std::string>();
      m.rater_id = row.at("rater_id").get<std::string>();
      m.score = row.at("score").get<double>();
      if (row.contains("sample_size") && !row.at("sample_size").is_null()) {
        m.sample_size_of_evaluated_text =
            row.at("sample_size").get<std::int64_t>();
      }
      if (row.contains("timestamp") && !row.at("timestamp").is_null()) {
        m.timestamp = row.at("timestamp").get<std::string>();
        if (!is_iso8601_utc(m.timestamp)) {
          fail("timestamp '" + m.timestamp + "' is not ISO-8601 UTC");
        }
      }
    } catch (const nlohmann::json::exception& e) {
      fail(e.what());
    }
    if (!scale.contains(m.score)) {
      fail("score lies outside the configured scale");
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

double parse_double(const std::string& token, const std::string& what) {
  double value{};
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw parse_error(what + ": '" + token + "' is not a number");
  }
  return value;
}

std::int64_t parse_int(const std::string& token, const std::string& what) {
  std::int64_t value{};
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw parse_error(what + ": '" + token + "' is not an integer");
  }
  return value;
}

std::vector<QualityMeasurement> read_score_file(
    const std::filesystem::path& path, const ScoreScale& scale) {
  if (path.extension() == ".json") {
    return read_score_json(path, scale);
  }
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open score file: " + path.string());
  const std::string origin = path.string();

  std::string line;
  if (!std::getline(in, line)) {
    throw parse_error(origin + ": missing header row");
  }
  const std::vector<std::string> header =
      split_csv_line(strip_cr(line), 1, origin);
  for (const auto& column : header) {
    if (std::find(kKnownColumns.begin(), kKnownColumns.end(), column) ==
        kKnownColumns.end()) {
      throw parse_error(origin + ":1: unknown column '" + column + "'");
    }
  }
  for (const char* required : {"project_id", "rater_id", "score"}) {
    if (std::find(header.begin(), header.end(), required) == header.end()) {
      throw parse_error(origin + ":1: required column '" +
                        std::string(required) + "' is missing");
    }
  }

  std::vector<QualityMeasurement> out;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    out.push_back(measurement_from_fields(
        header, split_csv_line(line, line_number, origin), scale, line_number,
        origin));
  }
  return out;
}

RaterLabelMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open matrix file: " + path.string());
  std::vector<std::vector<std::int64_t>> counts;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::int64_t> row;
    for (const auto& token :
         split_csv_line(line, line_number, path.string())) {
      row.push_back(parse_int(
          token, path.string() + ":" + std::to_string(line_number)));
    }
    counts.push_back(std::move(row));
  }
  try {
    return RaterLabelMatrix(std::move(counts));
  } catch (const std::domain_error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
}

RaterLabelMatrix parse_inline_matrix(const std::string& text) {
  std::vector<std::vector<std::int64_t>> counts;
  std::istringstream rows(text);
  std::string row_text;
  while (std::getline(rows, row_text, ';')) {
    std::vector<std::int64_t> row;
    std::istringstream cells(row_text);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_int(cell, "matrix entry"));
    }
    counts.push_back(std::move(row));
  }
  try {
    return RaterLabelMatrix(std::move(counts));
  } catch (const std::domain_error& e) {
    throw parse_error(std::string("inline matrix: ") + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> read_label_pairs_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open label file: " + path.string());
  const std::string origin = path.string();

  std::string line;
  if (!std::getline(in, line)) {
    throw parse_error(origin + ": missing header row");
  }
  if (split_csv_line(strip_cr(line), 1, origin).size() != 2) {
    throw parse_error(origin + ":1: expected exactly two rater columns");
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_number, origin);
    if (fields.size() != 2) {
      std::ostringstream msg;
      msg << origin << ":" << line_number << ": expected two labels, got "
          << fields.size();
      throw parse_error(msg.str());
    }
    pairs.emplace_back(std::move(fields[0]), std::move(fields[1]));
  }
  return pairs;
}

}  // namespace tqeval
