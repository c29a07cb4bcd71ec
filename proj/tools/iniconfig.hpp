// INI-style experiment config: flat [sections] of key = value pairs,
// '#' comments, physical quantities written as "value unit". Parse errors
// carry file:line so the CLI can point at the offending entry.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwcli {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigValue {
  std::string text;
  int line = 0;
};

class IniConfig {
public:
  IniConfig() = default;

  static IniConfig parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ConfigError("cannot open config file: " + path);
    IniConfig cfg;
    cfg.path_ = path;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string stripped = strip(strip_comment(line));
      if (stripped.empty()) continue;
      if (stripped.front() == '[') {
        if (stripped.back() != ']')
          throw ConfigError(cfg.where(lineno) + ": malformed section header");
        section = strip(stripped.substr(1, stripped.size() - 2));
        if (section.empty())
          throw ConfigError(cfg.where(lineno) + ": empty section name");
        cfg.sections_[section];  // sections may be empty
        cfg.section_lines_[section] = lineno;
        continue;
      }
      const auto eq = stripped.find('=');
      if (eq == std::string::npos)
        throw ConfigError(cfg.where(lineno) + ": expected key = value");
      if (section.empty())
        throw ConfigError(cfg.where(lineno) + ": entry outside any [section]");
      const std::string key = strip(stripped.substr(0, eq));
      const std::string value = strip(stripped.substr(eq + 1));
      if (key.empty())
        throw ConfigError(cfg.where(lineno) + ": empty key");
      auto& sec = cfg.sections_[section];
      if (sec.count(key))
        throw ConfigError(cfg.where(lineno) + ": duplicate key '" + key +
                          "' in [" + section + "]");
      sec[key] = ConfigValue{value, lineno};
    }
    return cfg;
  }

  bool has_section(const std::string& section) const {
    return sections_.count(section) != 0;
  }
  bool has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) != 0;
  }

  void require_section(const std::string& section, const std::string& kind) const {
    if (!has_section(section))
      throw ConfigError(path_ + ": missing [" + section +
                        "] section required by kind '" + kind + "'");
  }

  // Rejects keys nobody consumes; typos fail loudly with their line number.
  void check_known_keys(const std::string& section,
                        const std::set<std::string>& allowed) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return;
    for (const auto& [key, value] : it->second) {
      if (!allowed.count(key))
        throw ConfigError(where(value.line) + ": unknown key '" + key +
                          "' in [" + section + "]");
    }
  }
  void check_known_sections(const std::set<std::string>& allowed) const {
    for (const auto& [name, entries] : sections_) {
      if (!allowed.count(name))
        throw ConfigError(where(section_line(name)) + ": unknown section [" +
                          name + "]");
    }
  }

  std::string get_string(const std::string& section, const std::string& key) const {
    return lookup(section, key).text;
  }
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    return has(section, key) ? lookup(section, key).text : fallback;
  }

  double get_double(const std::string& section, const std::string& key) const {
    const ConfigValue& v = lookup(section, key);
    return parse_double(v.text, v.line, section, key);
  }
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
  }

  long get_int(const std::string& section, const std::string& key) const {
    const ConfigValue& v = lookup(section, key);
    try {
      std::size_t used = 0;
      const long out = std::stol(v.text, &used);
      if (used != v.text.size()) throw std::invalid_argument("trailing text");
      return out;
    } catch (const std::exception&) {
      throw ConfigError(where(v.line) + ": [" + section + "] " + key +
                        " must be an integer, got '" + v.text + "'");
    }
  }
  long get_int(const std::string& section, const std::string& key,
               long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
  }

  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const {
    if (!has(section, key)) return fallback;
    const ConfigValue& v = lookup(section, key);
    if (v.text == "true" || v.text == "on" || v.text == "1") return true;
    if (v.text == "false" || v.text == "off" || v.text == "0") return false;
    throw ConfigError(where(v.line) + ": [" + section + "] " + key +
                      " must be true/false");
  }

  // "value unit" with a required unit suffix, e.g. "-13.6 eV", "50 kV".
  // Returns the value scaled into the base unit.
  double get_quantity(const std::string& section, const std::string& key,
                      const std::map<std::string, double>& units) const {
    const ConfigValue& v = lookup(section, key);
    std::istringstream ss(v.text);
    double value = 0.0;
    std::string unit;
    if (!(ss >> value >> unit) || !ss.eof()) {
      std::string expected;
      for (const auto& [u, m] : units) expected += (expected.empty() ? "" : "|") + u;
      throw ConfigError(where(v.line) + ": [" + section + "] " + key +
                        " needs a unit suffix (<value> " + expected + "), got '" +
                        v.text + "'");
    }
    auto it = units.find(unit);
    if (it == units.end())
      throw ConfigError(where(v.line) + ": [" + section + "] " + key +
                        " has unsupported unit '" + unit + "'");
    return value * it->second;
  }

  // Semicolon-separated groups of whitespace-separated numbers,
  // e.g. "0.5 0.5 1; -0.5 -0.5 -1".
  std::vector<std::vector<double>> get_tuples(const std::string& section,
                                              const std::string& key,
                                              std::size_t arity) const {
    const ConfigValue& v = lookup(section, key);
    std::vector<std::vector<double>> out;
    std::stringstream groups(v.text);
    std::string group;
    while (std::getline(groups, group, ';')) {
      if (strip(group).empty()) continue;
      std::istringstream ss(group);
      std::vector<double> tuple;
      double x;
      while (ss >> x) tuple.push_back(x);
      if (tuple.size() != arity)
        throw ConfigError(where(v.line) + ": [" + section + "] " + key +
                          " expects groups of " + std::to_string(arity) +
                          " numbers separated by ';'");
      out.push_back(std::move(tuple));
    }
    return out;
  }

  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const {
    const ConfigValue& v = lookup(section, key);
    std::istringstream ss(v.text);
    std::vector<double> out;
    double x;
    while (ss >> x) out.push_back(x);
    if (!ss.eof())
      throw ConfigError(where(v.line) + ": [" + section + "] " + key +
                        " must be a whitespace-separated number list");
    return out;
  }

  const std::string& path() const { return path_; }

private:
  static std::string strip_comment(const std::string& s) {
    const auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
  }
  static std::string strip(const std::string& s) {
    auto begin = s.begin(), end = s.end();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin)))
      ++begin;
    while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1))))
      --end;
    return std::string(begin, end);
  }

  std::string where(int line) const {
    return path_ + ":" + std::to_string(line);
  }

  int section_line(const std::string& name) const {
    auto it = section_lines_.find(name);
    return it == section_lines_.end() ? 0 : it->second;
  }

  const ConfigValue& lookup(const std::string& section,
                            const std::string& key) const {
    auto sec = sections_.find(section);
    if (sec == sections_.end())
      throw ConfigError(path_ + ": missing section [" + section + "]");
    auto it = sec->second.find(key);
    if (it == sec->second.end())
      throw ConfigError(path_ + ": missing key '" + key + "' in [" + section +
                        "] (section starts at line " +
                        std::to_string(section_line(section)) + ")");
    return it->second;
  }

  double parse_double(const std::string& text, int line,
                      const std::string& section, const std::string& key) const {
    try {
      std::size_t used = 0;
      const double out = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing text");
      return out;
    } catch (const std::exception&) {
      throw ConfigError(where(line) + ": [" + section + "] " + key +
                        " must be a number, got '" + text + "'");
    }
  }

  std::string path_ = "<config>";
  std::map<std::string, std::map<std::string, ConfigValue>> sections_;
  std::map<std::string, int> section_lines_;
};

}  // namespace mwcli
