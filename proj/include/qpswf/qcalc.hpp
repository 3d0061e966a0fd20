#pragma once

// q-calculus on the geometric lattice {q^n}: q-Pochhammer symbols, Jackson
// integrals and the weighted Hilbert structure of L_{q,2,v}.
//
// Functions are even and tabulated on a finite window of lattice exponents
// [n_min, n_max]; the point with exponent k is q^k, so larger exponents are
// closer to the origin.  Values outside a window are exactly zero.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpswf/error.hpp"

namespace qpswf {

inline constexpr double kDefaultEps = 1e-14;
inline constexpr double kConstantTol = 1e-17;

/// Finite q-Pochhammer symbol (z;q)_n.
inline double qpochhammer(double z, double q, std::size_t n) {
  double product = 1.0;
  double zq = z;
  for (std::size_t i = 0; i < n; ++i) {
    product *= 1.0 - zq;
    zq *= q;
  }
  return product;
}

/// Infinite q-Pochhammer symbol (z;q)_inf, truncated at the first factor with
/// |z| q^i < eps (1 - q).  Relative error is O(eps).
inline double qpochhammer_inf(double z, double q, double eps = kDefaultEps) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("q must lie in (0,1)");
  double product = 1.0;
  double zq = z;
  const double stop = eps * (1.0 - q);
  while (std::abs(zq) >= stop) {
    product *= 1.0 - zq;
    zq *= q;
  }
  return product;
}

/// Global parameters: deformation q, order v and the transform constant
///   c_{q,v} = (q^{2v+2}; q^2)_inf / ((1 - q) (q^2; q^2)_inf).
/// Immutable; derive a new instance to change q or v.
class QParams {
 public:
  QParams(double q, double v, double eps = kDefaultEps) : q_(q), v_(v), eps_(eps) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("q must lie in (0,1)");
    if (!(v > -1.0)) throw InvalidParameter("v must be greater than -1");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must lie in (0,1)");
    // c_{q,v} is taken to full double precision regardless of eps.
    const double q2 = q * q;
    const double tol = std::min(eps, kConstantTol);
    c_qv_ = qpochhammer_inf(std::pow(q, 2 * v + 2), q2, tol) /
            ((1.0 - q) * qpochhammer_inf(q2, q2, tol));
  }

  double q() const noexcept { return q_; }
  double v() const noexcept { return v_; }
  double eps() const noexcept { return eps_; }
  double c_qv() const noexcept { return c_qv_; }

  QParams with_order(double v) const { return QParams(q_, v, eps_); }

  /// Lattice point q^k.
  double point(int k) const { return std::pow(q_, k); }

  /// Measure weight of the lattice point q^k in <f, g>: q^{k(2v+2)}.
  double weight(int k) const { return std::pow(q_, k * (2.0 * v_ + 2.0)); }

 private:
  double q_;
  double v_;
  double eps_;
  double c_qv_;
};

/// Finite range of lattice exponents [n_min, n_max].
struct LatticeWindow {
  int n_min = -15;
  int n_max = 60;

  LatticeWindow() = default;
  LatticeWindow(int lo, int hi) : n_min(lo), n_max(hi) {
    if (lo > hi) {
      throw InvalidParameter("lattice window requires n_min <= n_max (got " + std::to_string(lo) +
                             ":" + std::to_string(hi) + ")");
    }
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(n_max - n_min + 1); }
  bool contains(int k) const noexcept { return k >= n_min && k <= n_max; }
  bool contains(const LatticeWindow& w) const noexcept {
    return w.n_min >= n_min && w.n_max <= n_max;
  }
  std::size_t index(int k) const noexcept { return static_cast<std::size_t>(k - n_min); }

  friend bool operator==(const LatticeWindow&, const LatticeWindow&) = default;
};

/// Even function tabulated on a LatticeWindow; value(k) is f(q^k) = f(-q^k).
class LatticeFunction {
 public:
  LatticeFunction() = default;
  explicit LatticeFunction(LatticeWindow window) : window_(window), values_(window.size(), 0.0) {}
  LatticeFunction(LatticeWindow window, std::vector<double> values)
      : window_(window), values_(std::move(values)) {
    if (values_.size() != window_.size()) {
      throw InvalidParameter("lattice function needs exactly " + std::to_string(window_.size()) +
                             " values, got " + std::to_string(values_.size()));
    }
  }

  /// Tabulates fn(x) at x = q^k over the window.
  template <typename Fn>
  static LatticeFunction tabulate(LatticeWindow window, const QParams& p, Fn&& fn) {
    LatticeFunction f(window);
    for (int k = window.n_min; k <= window.n_max; ++k) f[k] = fn(p.point(k));
    return f;
  }

  /// Tabulates fn(k) by lattice exponent.
  template <typename Fn>
  static LatticeFunction from_exponents(LatticeWindow window, Fn&& fn) {
    LatticeFunction f(window);
    for (int k = window.n_min; k <= window.n_max; ++k) f[k] = fn(k);
    return f;
  }

  const LatticeWindow& window() const noexcept { return window_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double& operator[](int k) { return values_[window_.index(k)]; }
  double operator[](int k) const { return values_[window_.index(k)]; }

  /// f(q^k), zero outside the window.
  double at(int k) const noexcept { return window_.contains(k) ? values_[window_.index(k)] : 0.0; }

  /// Same function re-tabulated on another window (zero padded / cropped).
  LatticeFunction rewindowed(LatticeWindow w) const {
    LatticeFunction g(w);
    for (int k = w.n_min; k <= w.n_max; ++k) g[k] = at(k);
    return g;
  }

  LatticeFunction& operator+=(const LatticeFunction& g) {
    require_same_window(g);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += g.values_[i];
    return *this;
  }
  LatticeFunction& operator-=(const LatticeFunction& g) {
    require_same_window(g);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= g.values_[i];
    return *this;
  }
  LatticeFunction& operator*=(double s) {
    for (double& x : values_) x *= s;
    return *this;
  }
  friend LatticeFunction operator+(LatticeFunction f, const LatticeFunction& g) { return f += g; }
  friend LatticeFunction operator-(LatticeFunction f, const LatticeFunction& g) { return f -= g; }
  friend LatticeFunction operator*(double s, LatticeFunction f) { return f *= s; }

 private:
  void require_same_window(const LatticeFunction& g) const {
    if (!(g.window_ == window_)) throw InvalidParameter("lattice functions on different windows");
  }

  LatticeWindow window_{};
  std::vector<double> values_{};
};

/// Indicator of the single lattice point q^k.
inline LatticeFunction lattice_delta(LatticeWindow window, int k) {
  LatticeFunction f(window);
  if (window.contains(k)) f[k] = 1.0;
  return f;
}

/// Boundary-term report for truncated lattice sums.
struct SumDiagnostics {
  double value = 0.0;
  double first_term = 0.0;  // term at the smallest exponent (largest point)
  double last_term = 0.0;   // term at the largest exponent (point nearest 0)
  bool tail_warning = false;

  double boundary_max() const noexcept { return std::max(std::abs(first_term), std::abs(last_term)); }
};

namespace detail {

// Sums term(k) for k = lo..hi.  Increasing k is decreasing measure weight for
// every v > -1, so the accumulation order is by descending weight.
template <typename Term>
double lattice_sum(int lo, int hi, double eps, SumDiagnostics* diag, Term&& term) {
  double sum = 0.0;
  double first = 0.0;
  double last = 0.0;
  for (int k = lo; k <= hi; ++k) {
    const double t = term(k);
    if (k == lo) first = t;
    last = t;
    sum += t;
  }
  if (diag != nullptr) {
    diag->value = sum;
    diag->first_term = first;
    diag->last_term = last;
    diag->tail_warning = lo <= hi && diag->boundary_max() > eps * std::abs(sum);
  }
  return sum;
}

}  // namespace detail

/// Jackson integral over [0, a] with a = q^{a_exp}:
///   (1 - q) a sum_{m >= 0} q^m f(a q^m), truncated at the window's n_max.
inline double jackson_integral_0a(const LatticeFunction& f, int a_exp, const QParams& p,
                                  SumDiagnostics* diag = nullptr) {
  const LatticeWindow& w = f.window();
  if (!w.contains(a_exp)) {
    throw WindowTooSmall("window [" + std::to_string(w.n_min) + ", " + std::to_string(w.n_max) +
                         "] does not contain a_exp = " + std::to_string(a_exp));
  }
  const double q = p.q();
  // a q^m == q^k with k = a_exp + m, evaluated through the same lattice point
  // as jackson_integral_0inf so that the two agree bit-for-bit.
  return (1.0 - q) * detail::lattice_sum(a_exp, w.n_max, p.eps(), diag,
                                         [&](int k) { return p.point(k) * f[k]; });
}

/// Bilateral Jackson integral over [0, inf) restricted to the window.
inline double jackson_integral_0inf(const LatticeFunction& f, const QParams& p,
                                    SumDiagnostics* diag = nullptr) {
  const LatticeWindow& w = f.window();
  const double q = p.q();
  return (1.0 - q) * detail::lattice_sum(w.n_min, w.n_max, p.eps(), diag,
                                         [&](int k) { return p.point(k) * f[k]; });
}

/// <f, g> = int_0^inf f g t^{2v+1} d_q t over the window intersection.
inline double inner_product(const LatticeFunction& f, const LatticeFunction& g, const QParams& p,
                            SumDiagnostics* diag = nullptr) {
  const int lo = std::max(f.window().n_min, g.window().n_min);
  const int hi = std::min(f.window().n_max, g.window().n_max);
  return (1.0 - p.q()) * detail::lattice_sum(lo, hi, p.eps(), diag, [&](int k) {
           return p.weight(k) * f[k] * g[k];
         });
}

/// Weighted L^p norm ||f||_{q,p,v} on the window.
inline double norm_lqpv(const LatticeFunction& f, double p_exponent, const QParams& p) {
  if (!(p_exponent >= 1.0)) throw InvalidParameter("norm exponent must be >= 1");
  if (p_exponent == 2.0) return std::sqrt(inner_product(f, f, p));
  const LatticeWindow& w = f.window();
  const double s = (1.0 - p.q()) * detail::lattice_sum(w.n_min, w.n_max, p.eps(), nullptr, [&](int k) {
                     return p.weight(k) * std::pow(std::abs(f[k]), p_exponent);
                   });
  return std::pow(s, 1.0 / p_exponent);
}

}  // namespace qpswf
