#pragma once

// q-sampling: a function bandlimited to [0, a]_q is recovered everywhere from
// its values on the lattice,
//
//   f(z) = (1-q) sum_k q^{2k(v+1)} f(q^k) k_z(q^k),
//
// where k_z(q^n) = k(z, q^n) has the closed form
//
//   (1-q) c^2 / (1 - q^{2v+2}) a^{2v+2}
//     [q^{2n} j_{v+1}(a q^n) j_v(a z/q) - z^2 j_{v+1}(a z) j_v(a q^{n-1})] / (q^{2n} - z^2).

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpswf/error.hpp"
#include "qpswf/pswf.hpp"
#include "qpswf/qbessel.hpp"
#include "qpswf/qcalc.hpp"
#include "qpswf/qfourier.hpp"

namespace qpswf {

/// Sample positions q^k, k_min <= k <= k_max.
struct SamplingGrid {
  int k_min = -10;
  int k_max = 40;

  SamplingGrid() = default;
  SamplingGrid(int lo, int hi) : k_min(lo), k_max(hi) {
    if (lo > hi) throw InvalidParameter("sampling grid requires k_min <= k_max");
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(k_max - k_min + 1); }
  /// (1-q) q^{2k(v+1)}
  double weight(int k, const QParams& p) const { return (1.0 - p.q()) * p.weight(k); }
  LatticeWindow window() const { return {k_min, k_max}; }
};

/// Short grid q^n, n = -1..10: only the points the plots span.
inline SamplingGrid compact_grid() { return {-1, 10}; }

/// k_z(q^n) for one band, with the z-independent lattice factors tabulated
/// over [n_min, n_max].
class SamplingKernel {
 public:
  SamplingKernel(const Bandlimit& b, const QParams& p, int n_min, int n_max)
      : band_(b),
        params_(p),
        jv_(p),
        jv1_(p, 1),
        jv1_at_n_(jv1_, b.a_exp + n_min, b.a_exp + n_max),
        jv_at_n_(jv_, b.a_exp + n_min - 1, b.a_exp + n_max - 1) {
    const double q = p.q();
    const double c = p.c_qv();
    prefactor_ = (1.0 - q) * c * c / (1.0 - std::pow(q, 2.0 * p.v() + 2.0)) * p.weight(b.a_exp);
  }
  SamplingKernel(const Bandlimit& b, const QParams& p, const SamplingGrid& grid)
      : SamplingKernel(b, p, grid.k_min, grid.k_max) {}

  /// z-dependent factors j_v(a z / q) and j_{v+1}(a z), evaluated once per z.
  struct Point {
    double z;
    double jv_azq;
    double jv1_az;
  };

  Point at(double z) const {
    return {z, jv_.scaled(z, band_.a_exp - 1).value, jv1_.scaled(z, band_.a_exp).value};
  }

  double operator()(double z, int n) const { return (*this)(at(z), n); }

  double operator()(const Point& pt, int n) const {
    const double y = params_.point(n);
    if (nearly_degenerate(y, pt.z)) return direct(pt.z, n);
    const double y2 = params_.point(2 * n);
    const double z2 = pt.z * pt.z;
    const double numer = y2 * jv1_at_n_(band_.a_exp + n) * pt.jv_azq - z2 * pt.jv1_az * jv_at_n_(band_.a_exp + n - 1);
    return prefactor_ * numer / (y2 - z2);
  }

  /// c^2 int_0^a j_v(zt) j_v(q^n t) t^{2v+1} d_q t as a truncated Jackson sum.
  double direct(double z, int n) const {
    const bool on_lattice = z == params_.point(n);
    const double c = params_.c_qv();
    const double s = detail::lattice_sum(band_.a_exp, band_.a_exp + band_.depth - 1, params_.eps(), nullptr, [&](int e) {
      const double jz = on_lattice ? jv_.lattice(n + e).value : jv_.scaled(z, e).value;
      return params_.weight(e) * jz * jv_.lattice(n + e).value;
    });
    return c * c * (1.0 - params_.q()) * s;
  }

 private:
  Bandlimit band_;
  QParams params_;
  HahnExton jv_;
  HahnExton jv1_;
  BesselTable jv1_at_n_;
  BesselTable jv_at_n_;
  double prefactor_ = 0.0;
};

/// k_z(q^n); closed form unless q^{2n} ~ z^2, where the Jackson sum is used.
inline double sampling_kernel(double z, int n, const Bandlimit& b, const QParams& p) {
  return SamplingKernel(b, p, n, n)(z, n);
}

/// Truncated sampling series at z; samples[k - k_min] = f(q^k).
inline double reconstruct(std::span<const double> samples, double z, const SamplingGrid& grid,
                          const SamplingKernel& kernel, const QParams& p, SumDiagnostics* diag = nullptr) {
  if (samples.size() != grid.size()) {
    throw InvalidParameter("reconstruct: expected " + std::to_string(grid.size()) + " samples, got " +
                           std::to_string(samples.size()));
  }
  const SamplingKernel::Point pt = kernel.at(z);
  return (1.0 - p.q()) * detail::lattice_sum(grid.k_min, grid.k_max, p.eps(), diag, [&](int k) {
           return p.weight(k) * samples[static_cast<std::size_t>(k - grid.k_min)] * kernel(pt, k);
         });
}

inline double reconstruct(std::span<const double> samples, double z, const SamplingGrid& grid, const Bandlimit& b,
                          const QParams& p, SumDiagnostics* diag = nullptr) {
  return reconstruct(samples, z, grid, SamplingKernel(b, p, grid), p, diag);
}

/// Samples f(q^k) over the grid from a tabulated function (zero off-window).
inline std::vector<double> grid_samples(const LatticeFunction& f, const SamplingGrid& grid) {
  std::vector<double> s(grid.size());
  for (int k = grid.k_min; k <= grid.k_max; ++k) s[static_cast<std::size_t>(k - grid.k_min)] = f.at(k);
  return s;
}

/// f_a(x) = <f, k_x>: transform, cut the spectrum to [0, a]_q, transform back.
inline LatticeFunction project(const LatticeFunction& f, const Bandlimit& b, const TransformPlan& plan) {
  detail::require_square(plan, "project");
  detail::require_window(f, plan.in_window(), "project");
  LatticeFunction spectrum = fqv_transform(f, plan);
  const LatticeWindow& w = spectrum.window();
  for (int t = w.n_min; t <= w.n_max && t < b.a_exp; ++t) spectrum[t] = 0.0;
  return fqv_transform(spectrum, plan);
}

struct ConvergencePoint {
  int a_exp;
  double sup_error;
};

/// sup |f - f_a| over lattice points x = q^n with delta_exp >= n >= upper_exp
/// (x >= q^{delta_exp}, and x <= q^{upper_exp} when given), for each band.
/// a_exps must be strictly decreasing (a increasing).
inline std::vector<ConvergencePoint> convergence_study(const LatticeFunction& f, std::span<const int> a_exps,
                                                       int delta_exp, const TransformPlan& plan,
                                                       std::optional<int> upper_exp = std::nullopt) {
  for (std::size_t i = 1; i < a_exps.size(); ++i) {
    if (a_exps[i] >= a_exps[i - 1]) throw InvalidParameter("convergence_study needs a_exps in decreasing order");
  }
  const LatticeWindow& w = f.window();
  const int lo = std::max(w.n_min, upper_exp.value_or(w.n_min));
  const int hi = std::min(w.n_max, delta_exp);
  std::vector<ConvergencePoint> out;
  out.reserve(a_exps.size());
  for (const int a_exp : a_exps) {
    const LatticeFunction fa = project(f, Bandlimit(a_exp, kDefaultDepth), plan);
    double sup = 0.0;
    for (int n = lo; n <= hi; ++n) sup = std::max(sup, std::abs(f[n] - fa[n]));
    out.push_back({a_exp, sup});
  }
  return out;
}

}  // namespace qpswf
