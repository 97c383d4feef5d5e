#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dexseq/app/commands.hpp"

namespace support {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dexseq::app::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("dexseq_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Commands in dependency order; each reads the previous outputs from `out`.
inline const std::vector<std::string>& command_chain() {
  static const std::vector<std::string> chain{"train-grasp",     "train-second",  "evaluate",
                                              "collect-dataset", "retrieve-exec", "run-curriculum",
                                              "report"};
  return chain;
}

}  // namespace support
