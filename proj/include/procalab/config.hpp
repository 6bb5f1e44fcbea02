#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <locale>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "procalab/errors.hpp"

namespace procalab {

/// Flat `key = value` configuration with `#` comments and no nesting.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>") {
    KeyValueConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string_view body = trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw PreconditionError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key(trim(body.substr(0, eq)));
      if (key.empty()) throw PreconditionError(source + ":" + std::to_string(lineno) + ": empty key");
      cfg.values_[key] = std::string(trim(body.substr(eq + 1)));
    }
    return cfg;
  }

  static KeyValueConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open config file " + path);
    return parse(in, path);
  }

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void set_default(const std::string& key, std::string value) { values_.try_emplace(key, std::move(value)); }
  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback = "") const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key) const { return to_double(key, require(key)); }
  double get_double(const std::string& key, double fallback) const {
    return contains(key) ? get_double(key) : fallback;
  }

  long long get_int(const std::string& key) const {
    const std::string& v = require(key);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw PreconditionError("config key '" + key + "': expected an integer, got '" + v + "'");
    return out;
  }
  long long get_int(const std::string& key, long long fallback) const {
    return contains(key) ? get_int(key) : fallback;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!contains(key)) return fallback;
    const std::string& v = require(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw PreconditionError("config key '" + key + "': expected a boolean, got '" + v + "'");
  }

  /// Numbers separated by whitespace or commas.
  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : split(require(key), ", \t")) out.push_back(to_double(key, tok));
    return out;
  }

  /// Groups separated by ';', each a list of numbers (e.g. "1 0 0; 2 0 0").
  std::vector<std::vector<double>> get_double_groups(const std::string& key) const {
    std::vector<std::vector<double>> out;
    for (const auto& group : split(require(key), ";")) {
      std::vector<double> row;
      for (const auto& tok : split(group, ", \t")) row.push_back(to_double(key, tok));
      if (!row.empty()) out.push_back(std::move(row));
    }
    return out;
  }

  /// Sorted `key = value` lines; the input to the config hash.
  std::string canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
  }

  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  static std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  static std::vector<std::string> split(const std::string& s, const char* seps) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      const auto start = s.find_first_not_of(seps, pos);
      if (start == std::string::npos) break;
      const auto end = s.find_first_of(seps, start);
      out.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
      pos = end == std::string::npos ? s.size() : end;
    }
    return out;
  }

  const std::string& require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw PreconditionError("missing config key '" + key + "'");
    return it->second;
  }

  static double to_double(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    is.imbue(std::locale::classic());
    double out = 0.0;
    if (!(is >> out) || !is.eof())
      throw PreconditionError("config key '" + key + "': expected a number, got '" + v + "'");
    return out;
  }

  std::map<std::string, std::string> values_;
};

}  // namespace procalab
