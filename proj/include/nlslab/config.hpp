#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlslab {

// Flat key = value configuration with dotted namespaces and '#' comments. A
// JSON object is accepted as well; nested objects flatten to dotted keys.
// Every getter records the value it returns (the default if the key is
// absent), so echo() lists every tunable a command used. finish() rejects keys
// that no getter asked for.
class Config {
public:
  Config() = default;
  static Config parse_text(const std::string& text, const std::string& origin = "<text>");
  static Config parse_json(const nlohmann::json& j, const std::string& origin = "<json>");
  // Picks the JSON reader for a ".json" path or content starting with '{'.
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& def);
  double get_double(const std::string& key, double def);
  int get_int(const std::string& key, int def);
  std::uint64_t get_u64(const std::string& key, std::uint64_t def);
  bool get_bool(const std::string& key, bool def);
  // Comma separated list, e.g. "4, 8, 16".
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& def);
  std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& def);

  // Throws ValidationError naming the first key no getter consumed.
  void finish() const;
  nlohmann::json echo() const { return echo_; }
  const std::string& origin() const { return origin_; }

private:
  const std::string* raw(const std::string& key);
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
  nlohmann::json echo_ = nlohmann::json::object();
  std::string origin_ = "<defaults>";
};

}  // namespace nlslab
