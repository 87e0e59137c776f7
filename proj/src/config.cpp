#include "nlslab/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  return k.find("..") == std::string::npos;
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::map<std::string, std::string>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const auto& v = it.value();
    if (v.is_object()) {
      flatten(v, key, out);
    } else if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!s.empty()) s += ",";
        s += e.is_string() ? e.get<std::string>() : e.dump();
      }
      out[key] = s;
    } else if (v.is_string()) {
      out[key] = v.get<std::string>();
    } else {
      out[key] = v.dump();
    }
  }
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  double x = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), x);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size() || t.empty())
    throw ValidationError(key, "not a number: '" + v + "'");
  return x;
}

std::vector<std::string> split(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ValidationError(where, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ValidationError(where, "bad key '" + key + "'");
    if (c.values_.count(key)) throw ValidationError(where, "duplicate key '" + key + "'");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::parse_json(const nlohmann::json& j, const std::string& origin) {
  if (!j.is_object()) throw ValidationError(origin, "top level must be an object");
  Config c;
  c.origin_ = origin;
  flatten(j, "", c.values_);
  for (const auto& [k, v] : c.values_)
    if (!valid_key(k)) throw ValidationError(origin, "bad key '" + k + "'");
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("config", "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const bool json = (path.size() >= 5 && path.substr(path.size() - 5) == ".json") || trim(text).rfind('{', 0) == 0;
  if (json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("config", path + ": " + e.what());
    }
    return parse_json(j, path);
  }
  return parse_text(text, path);
}

const std::string* Config::raw(const std::string& key) {
  used_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::string Config::get_string(const std::string& key, const std::string& def) {
  const auto* v = raw(key);
  const std::string r = v ? *v : def;
  echo_[key] = r;
  return r;
}

double Config::get_double(const std::string& key, double def) {
  const auto* v = raw(key);
  const double r = v ? to_double(key, *v) : def;
  echo_[key] = r;
  return r;
}

int Config::get_int(const std::string& key, int def) {
  const auto* v = raw(key);
  int r = def;
  if (v) {
    const double x = to_double(key, *v);
    if (x != static_cast<double>(static_cast<long long>(x)) || std::abs(x) > 2147483647.0)
      throw ValidationError(key, "not an integer: '" + *v + "'");
    r = static_cast<int>(x);
  }
  echo_[key] = r;
  return r;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t def) {
  const auto* v = raw(key);
  std::uint64_t r = def;
  if (v) {
    const std::string t = trim(*v);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), r);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
      throw ValidationError(key, "not an unsigned integer: '" + *v + "'");
  }
  echo_[key] = r;
  return r;
}

bool Config::get_bool(const std::string& key, bool def) {
  const auto* v = raw(key);
  bool r = def;
  if (v) {
    const std::string t = trim(*v);
    if (t == "true" || t == "1" || t == "yes") {
      r = true;
    } else if (t == "false" || t == "0" || t == "no") {
      r = false;
    } else {
      throw ValidationError(key, "not a boolean: '" + *v + "'");
    }
  }
  echo_[key] = r;
  return r;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& def) {
  const auto* v = raw(key);
  std::vector<double> r = def;
  if (v) {
    r.clear();
    for (const auto& item : split(*v)) r.push_back(to_double(key, item));
    if (r.empty()) throw ValidationError(key, "empty list");
  }
  echo_[key] = r;
  return r;
}

std::vector<std::string> Config::get_strings(const std::string& key, const std::vector<std::string>& def) {
  const auto* v = raw(key);
  std::vector<std::string> r = v ? split(*v) : def;
  echo_[key] = r;
  return r;
}

void Config::finish() const {
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) throw ValidationError(k, "unknown key in " + origin_);
}

}  // namespace nlslab
