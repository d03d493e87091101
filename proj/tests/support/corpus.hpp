#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rssiloc/calibration.hpp"
#include "rssiloc/error.hpp"
#include "rssiloc/formats.hpp"
#include "rssiloc/simulator.hpp"

namespace rssiloc::testing {

struct CorpusCase {
  std::filesystem::path file;
  std::string kind;
  std::string expected_code;
};

inline std::vector<CorpusCase> malformed_corpus(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.csv");
  std::vector<CorpusCase> cases;
  std::string line;
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    CorpusCase c;
    std::string file;
    std::getline(row, file, ',');
    std::getline(row, c.kind, ',');
    std::getline(row, c.expected_code, ',');
    c.file = dir / file;
    cases.push_back(std::move(c));
  }
  return cases;
}

/// Loads `path` with the parser for `kind`; returns the error code name or
/// "ok".
inline std::string load_outcome(const std::string& kind, const std::filesystem::path& path) {
  try {
    if (kind == "anchors") load_anchors(path);
    else if (kind == "trace") load_trace(path);
    else if (kind == "groundtruth") load_ground_truth(path);
    else if (kind == "database") load_database(path);
    else if (kind == "config") load_simulation_config(path);
    else return "unknown-kind";
  } catch (const Error& e) {
    return std::string(to_string(e.code()));
  }
  return "ok";
}

}  // namespace rssiloc::testing
