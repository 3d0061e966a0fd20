#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpswf/error.hpp"

namespace qpswf::io {

/// %.12e, the serialisation format of every number in CSV output.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

struct Sample {
  int k;
  double value;
  int line;  // 1-based source line
};

/// Parses "k value" lines; '#' starts a comment, blank lines are skipped.
/// Throws InputFileError naming the first bad line; an input without any
/// sample is an error.
inline std::vector<Sample> parse_samples(std::istream& in) {
  std::vector<Sample> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    Sample s{};
    s.line = lineno;
    std::string second, extra;
    try {
      std::size_t used = 0;
      s.k = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
      if (!(ss >> second)) throw std::invalid_argument("missing value");
      s.value = std::stod(second, &used);
      if (used != second.size()) throw std::invalid_argument(second);
    } catch (const std::exception&) {
      throw InputFileError("malformed sample line, expected \"k value\"", lineno);
    }
    if (ss >> extra) throw InputFileError("trailing characters on sample line", lineno);
    out.push_back(s);
  }
  if (out.empty()) throw InputFileError("sample file contains no samples");
  return out;
}

inline std::vector<Sample> read_samples_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputFileError("cannot open sample file " + path.string());
  return parse_samples(in);
}

/// Writes through a temporary sibling and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qpswf::io
