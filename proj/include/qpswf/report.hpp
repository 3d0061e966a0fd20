#pragma once

// Serialised reports: the eigen report (JSON and CSV) and the reconstruction
// report (CSV).

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpswf/io.hpp"
#include "qpswf/pswf.hpp"

namespace qpswf {

/// {q, v, a_exp, M, eigenvalues: [...], samples: [[psi_i(a q^m)]_m]_i}
inline nlohmann::json eigen_report_json(const PswfBasis& basis) {
  nlohmann::json j;
  j["q"] = basis.params().q();
  j["v"] = basis.params().v();
  j["a_exp"] = basis.bandlimit().a_exp;
  j["M"] = basis.bandlimit().depth;
  j["eigenvalues"] = std::vector<double>(basis.eigenvalues().begin(), basis.eigenvalues().end());
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.count(); ++i) {
    const auto s = basis.samples(i);
    rows.push_back(std::vector<double>(s.begin(), s.end()));
  }
  j["samples"] = std::move(rows);
  return j;
}

/// One row per retained lattice point: k, x = q^k, psi_0(x), psi_1(x), ...
inline std::string eigen_report_csv(const PswfBasis& basis) {
  std::ostringstream out;
  out << "k,x";
  for (std::size_t i = 0; i < basis.count(); ++i) out << ",psi_" << i;
  out << '\n';
  const Bandlimit& b = basis.bandlimit();
  for (int m = 0; m < b.depth; ++m) {
    out << b.exponent(m) << ',' << io::format_number(b.point(m, basis.params()));
    for (std::size_t i = 0; i < basis.count(); ++i) out << ',' << io::format_number(basis.sample(i, m));
    out << '\n';
  }
  return out.str();
}

struct ReconstructionRow {
  double z;
  std::optional<double> f_true;
  double f_reconstructed;
};

/// Columns z, f_true, f_reconstructed, abs_error; f_true and abs_error are
/// left empty where the true value is unknown.
inline std::string reconstruction_csv(const std::vector<ReconstructionRow>& rows) {
  std::ostringstream out;
  out << "z,f_true,f_reconstructed,abs_error\n";
  for (const ReconstructionRow& r : rows) {
    out << io::format_number(r.z) << ',';
    if (r.f_true) out << io::format_number(*r.f_true);
    out << ',' << io::format_number(r.f_reconstructed) << ',';
    if (r.f_true) out << io::format_number(std::abs(*r.f_true - r.f_reconstructed));
    out << '\n';
  }
  return out.str();
}

}  // namespace qpswf
