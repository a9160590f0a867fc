#include "affect/util/kv_config.hpp"

#include <charconv>

#include "affect/util/text.hpp"

namespace affect {

KvConfig KvConfig::parse(std::string_view content, std::string source) {
  KvConfig cfg;
  cfg.source_ = std::move(source);
  std::size_t lineno = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(cfg.source_, lineno, "expected key = value");
    std::string key(text::trim(line.substr(0, eq)));
    std::string value(text::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(cfg.source_, lineno, "empty key");
    if (!cfg.values_.emplace(key, value).second)
      throw ConfigError(cfg.source_, lineno, "duplicate key '" + key + "'");
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

KvConfig KvConfig::load(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const std::runtime_error&) {
    throw ConfigError(path, 0, "cannot open file");
  }
  return parse(content, path);
}

const std::string& KvConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(source_, 0, "missing key '" + key + "'");
  return it->second;
}

std::string KvConfig::get_or(const std::string& key, std::string fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? std::move(fallback) : it->second;
}

double KvConfig::get_double(const std::string& key) const {
  const auto& v = get(key);
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(source_, lines_.at(key), "'" + key + "' is not a number");
  }
}

double KvConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t KvConfig::get_int_or(const std::string& key, std::int64_t fallback) const {
  if (!has(key)) return fallback;
  const auto& v = get(key);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(source_, lines_.at(key), "'" + key + "' is not an integer");
  return out;
}

bool KvConfig::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto v = text::to_lower(get(key));
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(source_, lines_.at(key), "'" + key + "' is not a boolean");
}

std::vector<std::string> KvConfig::get_list(const std::string& key) const {
  if (!has(key)) return {};
  return text::split_list(get(key), '|');
}

}  // namespace affect
