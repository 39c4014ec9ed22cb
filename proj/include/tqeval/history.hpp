#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqeval/engine.hpp"

namespace tqeval {

void to_json(nlohmann::json& j, const QualityMeasurement& m);
void from_json(const nlohmann::json& j, QualityMeasurement& m);

// Append-only JSON-lines store of quality measurements, one per line.
// Readers may run concurrently with a single writer; concurrent writers
// must be serialized by the caller (the store does no locking itself).
class HistoryStore {
 public:
  explicit HistoryStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  // Validates the timestamp and appends one line.
  void append(const QualityMeasurement& m);

  // Loads every measurement; a missing file reads as empty history.
  std::vector<QualityMeasurement> load() const;

  std::vector<QualityMeasurement> load_project(
      const std::string& project_id) const;

 private:
  std::filesystem::path path_;
};

std::string now_utc_iso8601();
bool is_iso8601_utc(const std::string& ts);

}  // namespace tqeval
