// qpswf: eigen / reconstruct / transform subcommands.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpswf/cli/commands.hpp"
#include "qpswf/cli/run_config.hpp"

namespace {

using qpswf::InvalidParameter;
using qpswf::cli::RunConfig;

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = 0, b = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    const int x = std::stoi(lo, &a);
    const int y = std::stoi(hi, &b);
    if (a != lo.size() || b != hi.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::exception&) {
    throw InvalidParameter(std::string(flag) + " expects MIN:MAX, got '" + text + "'");
  }
}

struct Flags {
  std::optional<double> q, v, eps;
  std::vector<int> a_exps;
  std::optional<int> depth, keep;
  std::optional<std::string> window, grid, out, config, function, samples;
  std::vector<std::string> formats;
  bool roundtrip = false;
  bool compact_grid = false;

  void attach(CLI::App& app, bool with_function, bool with_roundtrip) {
    app.add_option("--q", q, "deformation parameter in (0,1) [0.5]");
    app.add_option("--v", v, "order, > -1 [-0.5]");
    app.add_option("--a-exp", a_exps, "band exponent, a = q^a_exp (repeatable)")->allow_extra_args(false);
    app.add_option("--depth", depth, "lattice points retained on [0,a] [60]");
    app.add_option("--window", window, "lattice window MIN:MAX [-15:60]");
    app.add_option("--grid", grid, "sampling grid MIN:MAX [-10:40]");
    app.add_option("--keep", keep, "eigenpairs retained [15]");
    app.add_option("--eps", eps, "series truncation tolerance [1e-14]");
    app.add_option("--out", out, "output directory [.]");
    app.add_option("--format", formats, "csv, json or svg (repeatable; default: all the command writes)")
        ->allow_extra_args(false);
    app.add_option("--config", config, "JSON config or manifest; flags override it");
    app.add_option("--samples", samples, "sample file of 'k value' lines");
    if (with_function) {
      app.add_option("--function", function, "builtin function [runge]");
      app.add_flag("--compact-grid", compact_grid, "sampling grid q^-1 .. q^10");
    }
    if (with_roundtrip) app.add_flag("--roundtrip", roundtrip, "also write F(F f) and its deviation from f");
  }

  RunConfig resolve() const {
    RunConfig c;
    if (config) qpswf::cli::merge_json(c, qpswf::cli::load_json_file(*config));
    if (q) c.q = *q;
    if (v) c.v = *v;
    if (eps) c.eps = *eps;
    if (!a_exps.empty()) c.a_exps = a_exps;
    if (depth) c.depth = *depth;
    if (keep) c.keep = *keep;
    if (window) {
      const auto [lo, hi] = parse_range(*window, "--window");
      c.window = qpswf::LatticeWindow(lo, hi);
    }
    if (grid) {
      const auto [lo, hi] = parse_range(*grid, "--grid");
      c.grid = qpswf::SamplingGrid(lo, hi);
    }
    if (compact_grid) c.grid = qpswf::compact_grid();
    if (out) c.output_dir = *out;
    if (!formats.empty()) c.formats = formats;
    if (roundtrip) c.roundtrip = true;
    if (function) c.function = *function;
    if (samples) c.samples_file = *samples;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Bessel Fourier analysis and q-prolate spheroidal wave functions"};
  app.require_subcommand(1);
  Flags eigen_flags, reconstruct_flags, transform_flags;
  CLI::App* eigen = app.add_subcommand("eigen", "eigenpairs of the concentration operator");
  CLI::App* reconstruct = app.add_subcommand("reconstruct", "band projection and sampling reconstruction");
  CLI::App* transform = app.add_subcommand("transform", "q-Bessel Fourier transform of a sample file");
  eigen_flags.attach(*eigen, false, false);
  reconstruct_flags.attach(*reconstruct, true, false);
  transform_flags.attach(*transform, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qpswf::cli::kConfigError;
  }

  auto run = [](const Flags& flags, auto command) {
    RunConfig c;
    const int rc = qpswf::cli::guarded(std::cerr, [&] {
      c = flags.resolve();
      return 0;
    });
    return rc != 0 ? rc : command(c, std::cout, std::cerr);
  };
  if (eigen->parsed()) return run(eigen_flags, [](const RunConfig& c, auto& o, auto& e) { return qpswf::cli::cmd_eigen(c, o, e); });
  if (reconstruct->parsed()) {
    return run(reconstruct_flags, [](const RunConfig& c, auto& o, auto& e) { return qpswf::cli::cmd_reconstruct(c, o, e); });
  }
  return run(transform_flags, [](const RunConfig& c, auto& o, auto& e) { return qpswf::cli::cmd_transform(c, o, e); });
}
