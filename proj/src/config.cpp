#include "tqeval/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tqeval/csv.hpp"
#include "tqeval/errors.hpp"

namespace tqeval {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& value, const std::string& where) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    return value.substr(1, value.size() - 2);
  }
  if (!value.empty() && value.front() == '"') {
    throw parse_error(where + ": unterminated string");
  }
  return value;
}

using KeyValues = std::map<std::string, std::string>;

class ScenarioReader {
 public:
  ScenarioReader(KeyValues values, std::string origin)
      : values_(std::move(values)), origin_(std::move(origin)) {}

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string value = it->second;
    values_.erase(it);
    return value;
  }

  void expect_empty() const {
    if (values_.empty()) return;
    std::ostringstream msg;
    msg << origin_ << ": unknown scenario key '" << values_.begin()->first
        << "'";
    throw parse_error(msg.str());
  }

  const std::string& origin() const { return origin_; }

 private:
  KeyValues values_;
  std::string origin_;
};

SimulationScenario scenario_from_values(ScenarioReader reader) {
  SimulationScenario s;
  const std::string& origin = reader.origin();

  const auto method = reader.take("method");
  if (!method) throw parse_error(origin + ": scenario needs a 'method'");
  s.method = simulation_method_from_string(unquote(*method, origin));

  if (const auto v = reader.take("true_mean")) {
    s.true_mean = parse_double(*v, origin + ": true_mean");
  }
  if (const auto v = reader.take("true_stddev")) {
    s.true_stddev = parse_double(*v, origin + ": true_stddev");
  }
  if (const auto v = reader.take("n_observations")) {
    s.n_observations =
        static_cast<int>(parse_int(*v, origin + ": n_observations"));
  }
  if (const auto v = reader.take("confidence")) {
    s.confidence = parse_double(*v, origin + ": confidence");
  }
  if (const auto v = reader.take("trials")) {
    s.trials = parse_int(*v, origin + ": trials");
  }
  if (const auto v = reader.take("seed")) {
    s.seed = static_cast<std::uint64_t>(parse_int(*v, origin + ": seed"));
  }
  if (const auto v = reader.take("prior_mode")) {
    s.prior_mode = prior_mode_from_string(unquote(*v, origin));
  }
  if (const auto v = reader.take("prior_value")) {
    s.prior_value = parse_double(*v, origin + ": prior_value");
  }
  if (const auto v = reader.take("prior_bias")) {
    s.prior_bias = parse_double(*v, origin + ": prior_bias");
  }
  if (const auto v = reader.take("prior_halfrange")) {
    s.prior_halfrange = parse_double(*v, origin + ": prior_halfrange");
  }
  if (const auto v = reader.take("workers")) {
    s.workers = static_cast<int>(parse_int(*v, origin + ": workers"));
  }
  reader.expect_empty();
  return s;
}

KeyValues flatten_json(const nlohmann::json& doc, const std::string& origin) {
  if (!doc.is_object()) {
    throw parse_error(origin + ": expected a JSON object");
  }
  KeyValues values;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      values[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      values[key] = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
      values[key] = value.dump();
    } else {
      throw parse_error(origin + ": key '" + key +
                        "' has an unsupported value type");
    }
  }
  return values;
}

}  // namespace

std::map<std::string, std::string> parse_toml_lite(std::istream& in,
                                                   const std::string& origin) {
  KeyValues values;
  std::string section;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    // Strip comments outside of strings.
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    std::ostringstream where;
    where << origin << ":" << line_number;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw parse_error(where.str() + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw parse_error(where.str() + ": empty section name");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw parse_error(where.str() + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw parse_error(where.str() + ": empty key");
    }
    if (value.empty()) {
      throw parse_error(where.str() + ": empty value for '" + key + "'");
    }
    const std::string full_key = section.empty() ? key : section + "." + key;
    if (!values.emplace(full_key, value).second) {
      throw parse_error(where.str() + ": duplicate key '" + full_key + "'");
    }
  }
  return values;
}

ToolConfig ToolConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open config file: " + path.string());
  }
  auto values = parse_toml_lite(in, path.string());
  ToolConfig config;
  for (auto& [key, raw] : values) {
    if (key == "scale_min") {
      config.scale_min = parse_double(raw, path.string() + ": scale_min");
    } else if (key == "scale_max") {
      config.scale_max = parse_double(raw, path.string() + ": scale_max");
    } else if (key == "confidence") {
      config.confidence = parse_double(raw, path.string() + ": confidence");
    } else if (key == "threshold") {
      config.threshold = parse_double(raw, path.string() + ": threshold");
    } else if (key == "history_file") {
      config.history_file = unquote(raw, path.string());
    } else {
      throw parse_error(path.string() + ": unknown config key '" + key + "'");
    }
  }
  return config;
}

SimulationScenario load_scenario(const std::filesystem::path& path) {
  const std::string origin = path.string();
  if (path.extension() == ".json") {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario file: " + origin);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(origin + ": " + e.what());
    }
    return scenario_from_values({flatten_json(doc, origin), origin});
  }
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open scenario file: " + origin);
  return scenario_from_values({parse_toml_lite(in, origin), origin});
}

}  // namespace tqeval
