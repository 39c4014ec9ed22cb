#include "tqeval/history.hpp"

#include <cctype>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "tqeval/errors.hpp"

namespace tqeval {

void to_json(nlohmann::json& j, const QualityMeasurement& m) {
  j = {{"project_id", m.project_id},
       {"rater_id", m.rater_id},
       {"score", m.score},
       {"timestamp", m.timestamp}};
  if (m.sample_size_of_evaluated_text) {
    j["sample_size_of_evaluated_text"] = *m.sample_size_of_evaluated_text;
  } else {
    j["sample_size_of_evaluated_text"] = nullptr;
  }
}

void from_json(const nlohmann::json& j, QualityMeasurement& m) {
  j.at("project_id").get_to(m.project_id);
  j.at("rater_id").get_to(m.rater_id);
  j.at("score").get_to(m.score);
  j.at("timestamp").get_to(m.timestamp);
  const auto it = j.find("sample_size_of_evaluated_text");
  if (it != j.end() && !it->is_null()) {
    m.sample_size_of_evaluated_text = it->get<std::int64_t>();
  } else {
    m.sample_size_of_evaluated_text.reset();
  }
}

HistoryStore::HistoryStore(std::filesystem::path path)
    : path_(std::move(path)) {}

void HistoryStore::append(const QualityMeasurement& m) {
  if (!is_iso8601_utc(m.timestamp)) {
    throw std::domain_error(
        "timestamp must be ISO-8601 UTC (YYYY-MM-DDTHH:MM:SSZ), got '" +
        m.timestamp + "'");
  }
  std::ofstream out(path_, std::ios::app);
  if (!out) {
    throw parse_error("cannot open history file for append: " +
                      path_.string());
  }
  out << nlohmann::json(m).dump() << "\n";
}

std::vector<QualityMeasurement> HistoryStore::load() const {
  std::vector<QualityMeasurement> history;
  std::ifstream in(path_);
  if (!in) return history;  // no file yet: empty history
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      history.push_back(nlohmann::json::parse(line).get<QualityMeasurement>());
    } catch (const nlohmann::json::exception& e) {
      std::ostringstream msg;
      msg << path_.string() << ":" << line_number
          << ": bad history line: " << e.what();
      throw parse_error(msg.str());
    }
  }
  return history;
}

std::vector<QualityMeasurement> HistoryStore::load_project(
    const std::string& project_id) const {
  std::vector<QualityMeasurement> out;
  for (auto& m : load()) {
    if (m.project_id == project_id) out.push_back(std::move(m));
  }
  return out;
}

std::string now_utc_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                utc.tm_year + 1900, utc.tm_mon + 1, utc.tm_mday, utc.tm_hour,
                utc.tm_min, utc.tm_sec);
  return buf;
}

bool is_iso8601_utc(const std::string& ts) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (ts.size() != 20) return false;
  static constexpr char kLayout[] = "dddd-dd-ddTdd:dd:ddZ";
  for (std::size_t i = 0; i < 20; ++i) {
    if (kLayout[i] == 'd') {
      if (!std::isdigit(static_cast<unsigned char>(ts[i]))) return false;
    } else if (ts[i] != kLayout[i]) {
      return false;
    }
  }
  const int month = (ts[5] - '0') * 10 + (ts[6] - '0');
  const int day = (ts[8] - '0') * 10 + (ts[9] - '0');
  const int hour = (ts[11] - '0') * 10 + (ts[12] - '0');
  const int minute = (ts[14] - '0') * 10 + (ts[15] - '0');
  const int second = (ts[17] - '0') * 10 + (ts[18] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour <= 23 &&
         minute <= 59 && second <= 60;
}

}  // namespace tqeval
