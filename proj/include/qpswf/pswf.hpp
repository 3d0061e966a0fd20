#pragma once

// q-prolate spheroidal wave functions: eigenfunctions of the concentration
// operator
//
//   T_a u(x) = c_{q,v} int_0^a u(t) j_v(xt, q^2) t^{2v+1} d_q t
//
// on [0, a]_q, a = q^{a_exp}.  The Jackson sum is truncated after `depth`
// points a q^m, m = 0..depth-1, with weights w_m = (1-q) a^{2v+2} q^{m(2v+2)}.
// The discretised operator A_{km} = c w_m j_v(a^2 q^{k+m}) is similar to the
// symmetric B = D^{1/2} A D^{-1/2}, D = diag(w), and B is what gets
// diagonalised.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qpswf/error.hpp"
#include "qpswf/jacobi.hpp"
#include "qpswf/matrix.hpp"
#include "qpswf/qbessel.hpp"
#include "qpswf/qcalc.hpp"

namespace qpswf {

inline constexpr int kDefaultDepth = 60;
inline constexpr int kDefaultKeep = 15;

/// Band [0, a]_q with a = q^{a_exp}, truncated to `depth` lattice points.
struct Bandlimit {
  int a_exp = 0;
  int depth = kDefaultDepth;

  Bandlimit() = default;
  Bandlimit(int a, int m) : a_exp(a), depth(m) {
    if (m < 1) throw InvalidParameter("bandlimit depth must be >= 1");
  }

  int exponent(int m) const noexcept { return a_exp + m; }
  double point(int m, const QParams& p) const { return p.point(a_exp + m); }
  double weight(int m, const QParams& p) const { return (1.0 - p.q()) * p.weight(a_exp + m); }
  LatticeWindow retained() const { return {a_exp, a_exp + depth - 1}; }
};

/// Discretised T_a^v with its kernel table j_v(q^{2 a_exp + s}), s = k + m.
class ConcentrationOperator {
 public:
  ConcentrationOperator(const Bandlimit& b, const QParams& p)
      : band_(b), params_(p), table_(HahnExton(p), 2 * b.a_exp, 2 * b.a_exp + 2 * b.depth - 2) {
    weights_.resize(static_cast<std::size_t>(b.depth));
    for (int m = 0; m < b.depth; ++m) weights_[static_cast<std::size_t>(m)] = b.weight(m, p);
  }

  const Bandlimit& bandlimit() const noexcept { return band_; }
  const QParams& params() const noexcept { return params_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// j_v(a^2 q^{k+m}).
  double kernel(int k, int m) const { return table_(2 * band_.a_exp + k + m); }

  /// (T u)(a q^k) for samples u(a q^m).
  std::vector<double> apply(std::span<const double> u) const {
    const auto n = static_cast<int>(weights_.size());
    if (u.size() != weights_.size()) throw InvalidParameter("operator applied to wrong sample count");
    std::vector<double> out(weights_.size());
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += weights_[static_cast<std::size_t>(m)] * u[static_cast<std::size_t>(m)] * kernel(k, m);
      out[static_cast<std::size_t>(k)] = params_.c_qv() * s;
    }
    return out;
  }

  /// B_{km} = c sqrt(w_k w_m) j_v(a^2 q^{k+m}); exactly symmetric.
  DenseMatrix<double> symmetric_matrix() const {
    const std::size_t n = weights_.size();
    DenseMatrix<double> b(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t m = k; m < n; ++m) {
        const double entry = params_.c_qv() * std::sqrt(weights_[k] * weights_[m]) *
                             kernel(static_cast<int>(k), static_cast<int>(m));
        b(k, m) = entry;
        b(m, k) = entry;
      }
    }
    return b;
  }

  /// Weighted L^2 norm over the retained points of [0, a]_q.
  double band_norm(std::span<const double> u) const {
    double s = 0.0;
    for (std::size_t m = 0; m < weights_.size(); ++m) s += weights_[m] * u[m] * u[m];
    return std::sqrt(s);
  }

 private:
  Bandlimit band_;
  QParams params_;
  BesselTable table_;
  std::vector<double> weights_;
};

inline DenseMatrix<double> build_operator_matrix(const Bandlimit& b, const QParams& p) {
  return ConcentrationOperator(b, p).symmetric_matrix();
}

/// Eigenpairs of T_a^v, sorted by |lambda| descending.  Row i of the sample
/// matrix holds psi_i(a q^m), normalised to ||psi_i||_{q,2,v} = 1 on the full
/// lattice (equivalently int_0^a psi_i^2 = lambda_i^2) with psi_i(a) > 0.
class PswfBasis {
 public:
  PswfBasis(Bandlimit b, QParams p, std::vector<double> eigenvalues, DenseMatrix<double> samples)
      : band_(b), params_(p), eigenvalues_(std::move(eigenvalues)), samples_(std::move(samples)) {
    if (samples_.rows() != eigenvalues_.size() || samples_.cols() != static_cast<std::size_t>(b.depth)) {
      throw InvalidParameter("PswfBasis: sample matrix shape does not match eigenvalues and depth");
    }
  }

  const Bandlimit& bandlimit() const noexcept { return band_; }
  const QParams& params() const noexcept { return params_; }
  std::size_t count() const noexcept { return eigenvalues_.size(); }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t i) const { return eigenvalues_.at(i); }

  std::span<const double> samples(std::size_t i) const { return samples_.row(i); }
  double sample(std::size_t i, int m) const { return samples_(i, static_cast<std::size_t>(m)); }

  /// Analytic extension psi_i(z) = (c / lambda_i) int_0^a psi_i(t) j_v(zt) t^{2v+1} d_q t, z >= 0.
  double eval(std::size_t i, double z) const {
    const HahnExton j(params_);
    return extension(i, [&](int m) { return j.scaled(z, band_.exponent(m)).value; });
  }

  /// Extension at the lattice point q^n, with the Bessel arguments formed exactly.
  double eval_lattice(std::size_t i, int n) const {
    const HahnExton j(params_);
    return extension(i, [&](int m) { return j.lattice(n + band_.exponent(m)).value; });
  }

  /// Window holding the basis on the full lattice to double precision.  The
  /// transform maps the band point a q^m to q^{-m}/a, so the functions reach
  /// out to q^{-(2 a_exp + depth - 1)}; beyond `margin` further steps the
  /// kernel has decayed like q^{margin^2}.
  LatticeWindow natural_window(int margin = 12) const {
    const int far = band_.a_exp + band_.depth - 1;
    return {-(band_.a_exp + far) - margin, far + margin};
  }

  /// psi_i on a lattice window through the extension formula.
  LatticeFunction tabulate(std::size_t i, LatticeWindow w) const { return std::move(tabulate_all(w, i + 1).at(i)); }

  /// psi_0 .. psi_{n-1} on a lattice window, sharing one Bessel table.
  std::vector<LatticeFunction> tabulate_all(LatticeWindow w, std::size_t n) const {
    n = std::min(n, count());
    const BesselTable table(HahnExton(params_), w.n_min + band_.a_exp, w.n_max + band_.a_exp + band_.depth - 1);
    std::vector<LatticeFunction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(LatticeFunction::from_exponents(w, [&](int k) {
        return extension(i, [&](int m) { return table(k + band_.exponent(m)); });
      }));
    }
    return out;
  }

 private:
  template <typename Kernel>
  double extension(std::size_t i, Kernel&& kernel) const {
    const double lambda = eigenvalues_.at(i);
    double s = 0.0;
    for (int m = 0; m < band_.depth; ++m) s += band_.weight(m, params_) * sample(i, m) * kernel(m);
    return params_.c_qv() * s / lambda;
  }

  Bandlimit band_;
  QParams params_;
  std::vector<double> eigenvalues_;
  DenseMatrix<double> samples_;
};

inline constexpr double kSignThreshold = 1e-12;

/// Diagonalises B (from build_operator_matrix) and keeps the `keep` pairs of
/// largest |lambda|; eigenvalues keep their signs.
inline PswfBasis eigendecompose(const DenseMatrix<double>& b_matrix, const Bandlimit& b, const QParams& p,
                                std::size_t keep) {
  const auto n = static_cast<std::size_t>(b.depth);
  if (b_matrix.rows() != n || b_matrix.cols() != n) {
    throw InvalidParameter("operator matrix size does not match bandlimit depth");
  }
  if (keep < 1 || keep > n) {
    throw InvalidParameter("keep must lie in [1, depth] (got " + std::to_string(keep) + ")");
  }
  const SymmetricEigensystem<double> sys = jacobi_eigen(b_matrix);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(sys.values[x]) > std::abs(sys.values[y]);
  });

  std::vector<double> lambdas(keep);
  DenseMatrix<double> samples(keep, n);
  for (std::size_t r = 0; r < keep; ++r) {
    const std::size_t col = order[r];
    const double lambda = sys.values[col];
    lambdas[r] = lambda;
    std::vector<double> psi(n);
    for (std::size_t m = 0; m < n; ++m) {
      psi[m] = std::abs(lambda) * sys.vectors(m, col) / std::sqrt(b.weight(static_cast<int>(m), p));
    }
    // psi(a) > 0, or the first sample above the threshold when psi(a) ~ 0.
    double lead = psi[0];
    for (std::size_t m = 0; m < n && std::abs(lead) <= kSignThreshold; ++m) lead = psi[m];
    const double sign = lead < 0.0 ? -1.0 : 1.0;
    for (std::size_t m = 0; m < n; ++m) samples(r, m) = sign * psi[m];
  }
  return PswfBasis(b, p, std::move(lambdas), std::move(samples));
}

inline PswfBasis compute_pswf(const Bandlimit& b, const QParams& p, std::size_t keep = kDefaultKeep) {
  return eigendecompose(build_operator_matrix(b, p), b, p, keep);
}

/// psi_i(z) through the analytic extension.
inline double eval_pswf_at(const PswfBasis& basis, std::size_t i, double z) { return basis.eval(i, z); }

/// || T psi_i - lambda_i psi_i || over the retained points of [0, a]_q.
inline double eigen_residual(const PswfBasis& basis, const ConcentrationOperator& op, std::size_t i) {
  const std::span<const double> psi = basis.samples(i);
  std::vector<double> r = op.apply(psi);
  for (std::size_t m = 0; m < r.size(); ++m) r[m] -= basis.eigenvalue(i) * psi[m];
  return op.band_norm(r);
}

enum class KernelMode { closed_form, direct_sum, eigen_series };

/// Reproducing kernel of PW_{q,a}^v,
///   k(x, y) = c^2 int_0^a j_v(xt) j_v(yt) t^{2v+1} d_q t.
/// closed_form uses the product-integral identity (undefined at x^2 ~ y^2),
/// direct_sum the truncated Jackson sum, eigen_series sum_i psi_i(x) psi_i(y).
class KernelEvaluator {
 public:
  KernelEvaluator(Bandlimit b, QParams p, KernelMode mode) : band_(b), params_(p), mode_(mode) {
    if (mode == KernelMode::eigen_series) throw InvalidParameter("eigen_series kernel needs a PswfBasis");
  }
  explicit KernelEvaluator(std::shared_ptr<const PswfBasis> basis)
      : band_(basis->bandlimit()), params_(basis->params()), mode_(KernelMode::eigen_series), basis_(std::move(basis)) {}

  KernelMode mode() const noexcept { return mode_; }
  const Bandlimit& bandlimit() const noexcept { return band_; }

  double operator()(double x, double y) const {
    const double c = params_.c_qv();
    switch (mode_) {
      case KernelMode::closed_form:
        return c * c * product_integral_closed(x, y, band_.a_exp, params_);
      case KernelMode::direct_sum: {
        const HahnExton j(params_);
        return direct([&](int e) { return j.scaled(x, e).value * j.scaled(y, e).value; });
      }
      case KernelMode::eigen_series: {
        double s = 0.0;
        for (std::size_t i = 0; i < basis_->count(); ++i) s += basis_->eval(i, x) * basis_->eval(i, y);
        return s;
      }
    }
    return 0.0;
  }

  /// k(q^nx, q^ny).
  double lattice(int nx, int ny) const {
    const double c = params_.c_qv();
    const HahnExton j(params_);
    switch (mode_) {
      case KernelMode::closed_form: {
        if (nx == ny) throw DegenerateArguments("closed-form kernel is degenerate on the diagonal");
        const HahnExton j1(params_, 1);
        const double q = params_.q();
        const double x2 = params_.point(2 * nx);
        const double y2 = params_.point(2 * ny);
        const int a = band_.a_exp;
        const double numer = x2 * j1.lattice(a + nx).value * j.lattice(a + ny - 1).value -
                             y2 * j1.lattice(a + ny).value * j.lattice(a + nx - 1).value;
        const double pre = (1.0 - q) / (1.0 - std::pow(q, 2.0 * params_.v() + 2.0)) * params_.weight(a);
        return c * c * pre * numer / (x2 - y2);
      }
      case KernelMode::direct_sum:
        return direct([&](int e) { return j.lattice(nx + e).value * j.lattice(ny + e).value; });
      case KernelMode::eigen_series: {
        double s = 0.0;
        for (std::size_t i = 0; i < basis_->count(); ++i) s += basis_->eval_lattice(i, nx) * basis_->eval_lattice(i, ny);
        return s;
      }
    }
    return 0.0;
  }

 private:
  template <typename Product>
  double direct(Product&& product) const {
    const double c = params_.c_qv();
    const double s = detail::lattice_sum(band_.a_exp, band_.a_exp + band_.depth - 1, params_.eps(), nullptr,
                                         [&](int e) { return params_.weight(e) * product(e); });
    return c * c * (1.0 - params_.q()) * s;
  }

  Bandlimit band_;
  QParams params_;
  KernelMode mode_;
  std::shared_ptr<const PswfBasis> basis_;
};

inline double kernel(const KernelEvaluator& e, double x, double y) { return e(x, y); }

/// theta_a f = int_0^a f^2 t^{2v+1} d_q t / ||f||^2, using the window's part of [0, a]_q.
inline double concentration_index(const LatticeFunction& f, const Bandlimit& b, const QParams& p) {
  const double total = inner_product(f, f, p);
  if (!(std::sqrt(total) > 1e-300)) throw ZeroFunction("concentration index of a zero function");
  const LatticeWindow& w = f.window();
  const int lo = std::max(w.n_min, b.a_exp);
  const double inside = (1.0 - p.q()) * detail::lattice_sum(lo, w.n_max, p.eps(), nullptr, [&](int k) {
                          return p.weight(k) * f[k] * f[k];
                        });
  return inside / total;
}

}  // namespace qpswf
