#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpswf/error.hpp"
#include "qpswf/pswf.hpp"
#include "qpswf/qcalc.hpp"
#include "qpswf/sampling.hpp"

namespace qpswf::cli {

/// Fully resolved run parameters.  Empty a_exps and formats mean "command
/// default"; the manifest always records the resolved values.
struct RunConfig {
  double q = 0.5;
  double v = -0.5;
  std::vector<int> a_exps;
  int depth = kDefaultDepth;
  LatticeWindow window{-15, 60};
  SamplingGrid grid{-10, 40};
  int keep = kDefaultKeep;
  double eps = kDefaultEps;
  std::string output_dir = ".";
  std::vector<std::string> formats;
  bool roundtrip = false;
  std::string function = "runge";
  std::string samples_file;

  QParams params() const { return QParams(q, v, eps); }

  /// Throws InvalidParameter with the first violated constraint.
  void validate() const {
    (void)params();
    if (depth < 1) throw InvalidParameter("depth must be >= 1");
    if (keep < 1 || keep > depth) throw InvalidParameter("keep must lie in [1, depth]");
    if (window.n_min > window.n_max) throw InvalidParameter("window requires MIN <= MAX");
    if (grid.k_min > grid.k_max) throw InvalidParameter("grid requires MIN <= MAX");
    if (output_dir.empty()) throw InvalidParameter("output directory must not be empty");
    const std::set<std::string> known{"csv", "json", "svg"};
    for (const std::string& f : formats) {
      if (!known.contains(f)) throw InvalidParameter("unknown format '" + f + "' (expected csv, json or svg)");
    }
  }

  bool wants(const std::string& format) const {
    return formats.empty() || std::find(formats.begin(), formats.end(), format) != formats.end();
  }
};

inline nlohmann::json to_json(const RunConfig& c) {
  return {
      {"q", c.q},
      {"v", c.v},
      {"a_exps", c.a_exps},
      {"depth", c.depth},
      {"window", {c.window.n_min, c.window.n_max}},
      {"grid", {c.grid.k_min, c.grid.k_max}},
      {"keep", c.keep},
      {"eps", c.eps},
      {"output_dir", c.output_dir},
      {"formats", c.formats},
      {"roundtrip", c.roundtrip},
      {"function", c.function},
      {"samples_file", c.samples_file},
  };
}

namespace detail {

inline std::pair<int, int> read_range(const nlohmann::json& j, const char* key) {
  if (!j.is_array() || j.size() != 2) throw InvalidParameter(std::string(key) + " must be a [min, max] pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

/// Applies the keys present in j on top of c.  A manifest (which also carries
/// "command") is accepted; any other unknown key is an error.
inline void merge_json(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "q") c.q = value.get<double>();
      else if (key == "v") c.v = value.get<double>();
      else if (key == "a_exps") c.a_exps = value.get<std::vector<int>>();
      else if (key == "depth") c.depth = value.get<int>();
      else if (key == "window") {
        const auto [lo, hi] = detail::read_range(value, "window");
        c.window = LatticeWindow(lo, hi);
      } else if (key == "grid") {
        const auto [lo, hi] = detail::read_range(value, "grid");
        c.grid = SamplingGrid(lo, hi);
      } else if (key == "keep") c.keep = value.get<int>();
      else if (key == "eps") c.eps = value.get<double>();
      else if (key == "output_dir") c.output_dir = value.get<std::string>();
      else if (key == "formats") c.formats = value.get<std::vector<std::string>>();
      else if (key == "roundtrip") c.roundtrip = value.get<bool>();
      else if (key == "function") c.function = value.get<std::string>();
      else if (key == "samples_file") c.samples_file = value.get<std::string>();
      else if (key == "command") continue;
      else throw InvalidParameter("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad config value: ") + e.what());
  }
}

inline RunConfig from_json(const nlohmann::json& j) {
  RunConfig c;
  merge_json(c, j);
  return c;
}

inline nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace qpswf::cli
