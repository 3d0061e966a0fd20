#pragma once

// Subcommand bodies.  Each returns the process exit code and reports errors
// on `err`; nothing here calls exit().

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpswf/cli/run_config.hpp"
#include "qpswf/error.hpp"
#include "qpswf/io.hpp"
#include "qpswf/pswf.hpp"
#include "qpswf/qfourier.hpp"
#include "qpswf/report.hpp"
#include "qpswf/sampling.hpp"
#include "qpswf/svg.hpp"

namespace qpswf::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kInputError = 4 };

/// Runs body and maps exceptions onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputFileError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const WindowTooSmall& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

namespace detail {

inline void require_formats(const RunConfig& c, std::initializer_list<const char*> supported, const char* command) {
  for (const std::string& f : c.formats) {
    bool ok = false;
    for (const char* s : supported) ok = ok || f == s;
    if (!ok) throw InvalidParameter(std::string(command) + " cannot write format '" + f + "'");
  }
}

inline std::filesystem::path prepare_output(const RunConfig& c) {
  std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_manifest(const std::filesystem::path& dir, const char* command, const RunConfig& c) {
  nlohmann::json j = to_json(c);
  j["command"] = command;
  io::write_file_atomic(dir / "manifest.json", j.dump(2) + "\n");
}

inline std::string exp_tag(int a_exp) { return "aexp" + std::to_string(a_exp); }

/// Function values on the window from a sample file; every k must lie in the
/// window and appear once.  Unlisted points are zero.
inline LatticeFunction load_lattice_function(const std::string& path, const LatticeWindow& w) {
  if (path.empty()) throw InvalidParameter("a samples file is required (--samples FILE)");
  const std::vector<io::Sample> samples = io::read_samples_file(path);
  LatticeFunction f(w);
  std::vector<int> seen(w.size(), 0);
  for (const io::Sample& s : samples) {
    if (!w.contains(s.k)) {
      throw InputFileError("exponent " + std::to_string(s.k) + " lies outside the window [" +
                               std::to_string(w.n_min) + ", " + std::to_string(w.n_max) + "]",
                           s.line);
    }
    if (seen[w.index(s.k)]++ != 0) throw InputFileError("duplicate exponent " + std::to_string(s.k), s.line);
    f[s.k] = s.value;
  }
  return f;
}

struct EvalPoint {
  double z;
  std::optional<int> lattice;  // exponent when z is a lattice point
};

/// 200 uniform points on [q^10, q^-1] merged with the lattice points in range.
inline std::vector<EvalPoint> evaluation_points(const QParams& p) {
  constexpr int kUniform = 200;
  constexpr int kFar = 10;
  constexpr int kNear = -1;
  const double lo = p.point(kFar);
  const double hi = p.point(kNear);
  std::map<double, std::optional<int>> pts;
  for (int i = 0; i < kUniform; ++i) pts.emplace(lo + (hi - lo) * i / (kUniform - 1), std::nullopt);
  for (int n = kNear; n <= kFar; ++n) pts[p.point(n)] = n;
  std::vector<EvalPoint> out;
  out.reserve(pts.size());
  for (const auto& [z, n] : pts) out.push_back({z, n});
  return out;
}

inline double runge(double x) { return 1.0 / (1.0 + x * x); }

}  // namespace detail

/// Eigenpairs for each a_exp (default {0}); one JSON and one CSV report per band.
inline int cmd_eigen(RunConfig c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(err, [&] {
    c.validate();
    detail::require_formats(c, {"json", "csv"}, "eigen");
    if (c.a_exps.empty()) c.a_exps = {0};
    const QParams p = c.params();
    const auto dir = detail::prepare_output(c);
    detail::write_manifest(dir, "eigen", c);
    for (const int a_exp : c.a_exps) {
      const Bandlimit b(a_exp, c.depth);
      const PswfBasis basis = compute_pswf(b, p, static_cast<std::size_t>(c.keep));
      const std::string stem = "eigen_" + detail::exp_tag(a_exp);
      if (c.wants("json")) io::write_file_atomic(dir / (stem + ".json"), eigen_report_json(basis).dump(2) + "\n");
      if (c.wants("csv")) io::write_file_atomic(dir / (stem + ".csv"), eigen_report_csv(basis));
      out << "a_exp " << a_exp << '\n';
      for (std::size_t i = 0; i < basis.count(); ++i) {
        out << "lambda_" << i << ' ' << io::format_number(basis.eigenvalue(i)) << '\n';
      }
    }
    return kOk;
  });
}

struct ReconstructionSummary {
  int a_exp;
  double lattice_sup_error;  // |f - f_a| over lattice points q^10 .. q^-1
  double dense_sup_error;    // |f - reconstruction| where f is known, NaN if nowhere
};

/// Projects f onto each band, reconstructs it from grid samples and writes a
/// CSV and an SVG overlay per band.  Bands default to a_exp = 0, -1, -2.
inline int cmd_reconstruct(RunConfig c, std::ostream& out = std::cout, std::ostream& err = std::cerr,
                           std::vector<ReconstructionSummary>* summaries = nullptr) {
  return guarded(err, [&] {
    c.validate();
    detail::require_formats(c, {"csv", "svg"}, "reconstruct");
    if (c.a_exps.empty()) c.a_exps = {0, -1, -2};
    for (const int a_exp : c.a_exps) {
      if (!c.window.contains(a_exp)) throw InvalidParameter("a_exp " + std::to_string(a_exp) + " lies outside the window");
    }
    if (!c.window.contains(c.grid.window())) throw InvalidParameter("sampling grid must lie inside the window");
    const bool builtin = c.samples_file.empty();
    if (builtin && c.function != "runge") throw InvalidParameter("unknown builtin function '" + c.function + "'");
    if (!builtin) c.function.clear();

    const QParams p = c.params();
    const LatticeFunction f = builtin ? LatticeFunction::tabulate(c.window, p, detail::runge)
                                      : detail::load_lattice_function(c.samples_file, c.window);
    const auto dir = detail::prepare_output(c);
    detail::write_manifest(dir, "reconstruct", c);

    const TransformPlan plan(p, c.window);
    const std::vector<detail::EvalPoint> points = detail::evaluation_points(p);
    const LatticeWindow span{std::max(c.window.n_min, -1), std::min(c.window.n_max, 10)};

    for (const int a_exp : c.a_exps) {
      const Bandlimit b(a_exp, c.depth);
      const LatticeFunction fa = project(f, b, plan);
      const std::vector<double> samples = grid_samples(fa, c.grid);
      const SamplingKernel kernel(b, p, c.grid);

      ReconstructionSummary s{a_exp, 0.0, std::nan("")};
      for (int n = span.n_min; n <= span.n_max; ++n) s.lattice_sup_error = std::max(s.lattice_sup_error, std::abs(f[n] - fa[n]));

      std::vector<ReconstructionRow> rows;
      rows.reserve(points.size());
      for (const detail::EvalPoint& pt : points) {
        ReconstructionRow r{pt.z, std::nullopt, reconstruct(samples, pt.z, c.grid, kernel, p)};
        if (builtin) r.f_true = detail::runge(pt.z);
        else if (pt.lattice) r.f_true = f.at(*pt.lattice);
        if (r.f_true) {
          const double e = std::abs(*r.f_true - r.f_reconstructed);
          s.dense_sup_error = std::isnan(s.dense_sup_error) ? e : std::max(s.dense_sup_error, e);
        }
        rows.push_back(r);
      }

      const std::string stem = "reconstruct_" + detail::exp_tag(a_exp);
      if (c.wants("csv")) io::write_file_atomic(dir / (stem + ".csv"), reconstruction_csv(rows));
      if (c.wants("svg")) {
        svg::Series truth{"f", "#1f3a93", {}, {}};
        svg::Series approx{"f_a", "#c0392b", {}, {}};
        for (const ReconstructionRow& r : rows) {
          if (r.f_true) {
            truth.x.push_back(r.z);
            truth.y.push_back(*r.f_true);
          }
          approx.x.push_back(r.z);
          approx.y.push_back(r.f_reconstructed);
        }
        svg::PlotOptions opt;
        opt.title = "f and f_a, a = " + io::format_number(p.point(a_exp));
        opt.log_x = true;
        io::write_file_atomic(dir / (stem + ".svg"), svg::render({truth, approx}, opt));
      }

      out << "a_exp " << a_exp << " a " << io::format_number(p.point(a_exp)) << " sup_error "
          << io::format_number(s.lattice_sup_error) << " reconstruction_sup_error "
          << (std::isnan(s.dense_sup_error) ? std::string("nan") : io::format_number(s.dense_sup_error)) << '\n';
      if (summaries != nullptr) summaries->push_back(s);
    }
    return kOk;
  });
}

/// F f on the window from a sample file; with roundtrip also F(F f) and its
/// sup deviation from f.
inline int cmd_transform(RunConfig c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(err, [&] {
    c.validate();
    detail::require_formats(c, {"csv"}, "transform");
    const QParams p = c.params();
    const LatticeFunction f = detail::load_lattice_function(c.samples_file, c.window);
    const auto dir = detail::prepare_output(c);
    detail::write_manifest(dir, "transform", c);

    const TransformPlan plan(p, c.window);
    const LatticeFunction g = fqv_transform(f, plan);
    const LatticeWindow& w = c.window;
    std::ostringstream csv;
    csv << "k,x,f,Ff\n";
    for (int k = w.n_min; k <= w.n_max; ++k) {
      csv << k << ',' << io::format_number(p.point(k)) << ',' << io::format_number(f[k]) << ','
          << io::format_number(g[k]) << '\n';
    }
    io::write_file_atomic(dir / "transform.csv", csv.str());

    if (c.roundtrip) {
      const LatticeFunction back = fqv_transform(g, plan);
      double sup = 0.0;
      std::ostringstream rt;
      rt << "k,x,f,FFf,abs_deviation\n";
      for (int k = w.n_min; k <= w.n_max; ++k) {
        const double d = std::abs(back[k] - f[k]);
        sup = std::max(sup, d);
        rt << k << ',' << io::format_number(p.point(k)) << ',' << io::format_number(f[k]) << ','
           << io::format_number(back[k]) << ',' << io::format_number(d) << '\n';
      }
      io::write_file_atomic(dir / "roundtrip.csv", rt.str());
      out << "roundtrip_sup_deviation " << io::format_number(sup) << '\n';
    }
    return kOk;
  });
}

}  // namespace qpswf::cli
