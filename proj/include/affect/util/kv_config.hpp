#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace affect {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + (line ? ":" + std::to_string(line) : "") + ": " + what),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// `key = value` text configuration. Lines starting with '#' are comments.
/// List values are '|'-separated.
class KvConfig {
 public:
  static KvConfig parse(std::string_view content, std::string source = "<memory>");
  static KvConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace affect
