#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <unistd.h>

#include "affect/runtime.hpp"

namespace test {

inline std::string data_dir() { return AFFECT_TEST_DATA_DIR; }
inline std::string fixture(const std::string& rel) { return std::string(AFFECT_TEST_FIXTURES) + "/" + rel; }

/// Resources loaded once per test binary.
inline const affect::Runtime& runtime() {
  static const auto rt = affect::Runtime::load({data_dir(), std::nullopt, std::nullopt, "v3_1"});
  return *rt;
}
inline const affect::lexicon::LexiconBundle& bundle() { return runtime().bundle(); }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto p = std::filesystem::temp_directory_path() /
           ("affect-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace test
