#pragma once

// Flat "key = value" files.  '#' starts a comment; keys may repeat.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hawkins {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<ConfigEntry> parse_config(std::istream& in, const std::string& source = "<config>") {
  std::vector<ConfigEntry> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(source + ":" + std::to_string(line) + ": expected key = value");
    ConfigEntry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (e.key.empty()) throw std::invalid_argument(source + ":" + std::to_string(line) + ": empty key");
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

// Accepts 1000000, 1e6, 1E+6 or 10^6.
inline std::uint64_t parse_count(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("expected an integer, got ''");
  if (s.find_first_not_of("0123456789") == std::string::npos) {
    if (s.size() > 19) throw std::invalid_argument("integer too large: " + s);
    return std::stoull(s);
  }
  if (auto caret = s.find('^'); caret != std::string::npos) {
    const std::uint64_t base = parse_count(s.substr(0, caret));
    const std::uint64_t exp = parse_count(s.substr(caret + 1));
    long double v = std::pow(static_cast<long double>(base), static_cast<long double>(exp));
    if (v > 1.8e19L) throw std::invalid_argument("integer too large: " + s);
    return static_cast<std::uint64_t>(v + 0.5L);
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  if (used != s.size() || v < 0 || v > 1.8e19 || v != std::floor(v))
    throw std::invalid_argument("expected a non-negative integer, got '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

inline std::vector<std::uint64_t> parse_count_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_count(item));
  }
  return out;
}

inline double parse_real(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

inline bool parse_bool(const std::string& text) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

}  // namespace hawkins
