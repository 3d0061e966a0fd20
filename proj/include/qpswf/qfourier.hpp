#pragma once

// q-Bessel Fourier transform on a truncated lattice,
//
//   F f(x) = c_{q,v} int_0^inf f(t) j_v(xt, q^2) t^{2v+1} d_q t,
//
// together with the q-translation and q-convolution defined through it.  On
// the lattice the kernel j_v(q^m q^n) depends only on m + n, so a plan stores
// a one-dimensional table over that sum.

#include <string>
#include <vector>

#include "qpswf/error.hpp"
#include "qpswf/qbessel.hpp"
#include "qpswf/qcalc.hpp"

namespace qpswf {

class TransformPlan {
 public:
  TransformPlan(const QParams& p, LatticeWindow in, LatticeWindow out)
      : params_(p),
        in_(in),
        out_(out),
        table_(HahnExton(p), in.n_min + out.n_min, in.n_max + out.n_max) {}

  TransformPlan(const QParams& p, LatticeWindow window) : TransformPlan(p, window, window) {}

  const QParams& params() const noexcept { return params_; }
  const LatticeWindow& in_window() const noexcept { return in_; }
  const LatticeWindow& out_window() const noexcept { return out_; }
  bool square() const noexcept { return in_ == out_; }

  /// j_v(q^{m+n}, q^2).
  double kernel(int m, int n) const { return table_(m + n); }
  const BesselTable& table() const noexcept { return table_; }

 private:
  QParams params_;
  LatticeWindow in_;
  LatticeWindow out_;
  BesselTable table_;
};

namespace detail {

inline void require_square(const TransformPlan& plan, const char* what) {
  if (!plan.square()) throw InvalidParameter(std::string(what) + " needs a plan with equal windows");
}

inline void require_window(const LatticeFunction& f, const LatticeWindow& w, const char* what) {
  if (!(f.window() == w)) {
    throw InvalidParameter(std::string(what) + ": function window [" + std::to_string(f.window().n_min) +
                           ", " + std::to_string(f.window().n_max) + "] does not match plan window [" +
                           std::to_string(w.n_min) + ", " + std::to_string(w.n_max) + "]");
  }
}

}  // namespace detail

/// g(q^m) = c (1-q) sum_n q^{n(2v+2)} f(q^n) j_v(q^{m+n}) for m in the output window.
/// When diag is given it receives the boundary report of the worst output
/// point, with tail_warning set if any point raised it.
inline LatticeFunction fqv_transform(const LatticeFunction& f, const TransformPlan& plan,
                                     SumDiagnostics* diag = nullptr) {
  detail::require_window(f, plan.in_window(), "fqv_transform");
  const QParams& p = plan.params();
  const LatticeWindow& in = plan.in_window();
  const LatticeWindow& out = plan.out_window();

  std::vector<double> weighted(in.size());
  for (int n = in.n_min; n <= in.n_max; ++n) weighted[in.index(n)] = p.weight(n) * f[n];

  const double scale = p.c_qv() * (1.0 - p.q());
  LatticeFunction g(out);
  SumDiagnostics worst;
  bool any_warning = false;
  for (int m = out.n_min; m <= out.n_max; ++m) {
    SumDiagnostics d;
    const double s = detail::lattice_sum(in.n_min, in.n_max, p.eps(), diag != nullptr ? &d : nullptr,
                                         [&](int n) { return weighted[in.index(n)] * plan.kernel(m, n); });
    g[m] = scale * s;
    any_warning = any_warning || d.tail_warning;
    if (diag != nullptr && (m == out.n_min || d.boundary_max() * std::abs(worst.value) >
                                                  worst.boundary_max() * std::abs(d.value))) {
      worst = d;
    }
  }
  if (diag != nullptr) {
    *diag = worst;
    diag->tail_warning = any_warning;
  }
  return g;
}

/// Inverse transform; F is an involution, so this is F with the windows swapped.
inline LatticeFunction inverse_transform(const LatticeFunction& g, const QParams& p, LatticeWindow out) {
  return fqv_transform(g, TransformPlan(p, g.window(), out));
}

namespace detail {

// T_{q,x} f(y) for y on the plan window, from a precomputed spectrum Ff.
inline LatticeFunction translate_from_spectrum(int x_exp, const LatticeFunction& spectrum,
                                               const TransformPlan& plan) {
  const QParams& p = plan.params();
  const LatticeWindow& w = plan.in_window();
  const LatticeWindow& spec = spectrum.window();
  std::vector<double> weighted(spec.size());
  for (int t = spec.n_min; t <= spec.n_max; ++t) {
    weighted[spec.index(t)] = p.weight(t) * spectrum[t] * plan.table()(x_exp + t);
  }
  const double scale = p.c_qv() * (1.0 - p.q());
  LatticeFunction out(w);
  for (int y = w.n_min; y <= w.n_max; ++y) {
    out[y] = scale * lattice_sum(spec.n_min, spec.n_max, p.eps(), nullptr,
                                 [&](int t) { return weighted[spec.index(t)] * plan.kernel(y, t); });
  }
  return out;
}

}  // namespace detail

/// q-Bessel translation y -> T_{q,x} f(y), x = q^{x_exp}, computed spectrally:
///   c (1-q) sum_t q^{t(2v+2)} Ff(q^t) j_v(q^{x_exp+t}) j_v(q^{y+t}).
inline LatticeFunction translate(int x_exp, const LatticeFunction& f, const TransformPlan& plan) {
  detail::require_square(plan, "translate");
  detail::require_window(f, plan.in_window(), "translate");
  return detail::translate_from_spectrum(x_exp, fqv_transform(f, plan), plan);
}

enum class ConvolutionRoute { spectral, direct };

/// q-convolution f *_q g(x) = c int_0^inf T_{q,x} f(y) g(y) y^{2v+1} d_q y.
/// The spectral route evaluates F(Ff . Fg); the direct route forms every
/// translate and sums against g.
inline LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g, const TransformPlan& plan,
                                ConvolutionRoute route = ConvolutionRoute::spectral) {
  detail::require_square(plan, "convolve");
  detail::require_window(f, plan.in_window(), "convolve");
  detail::require_window(g, plan.in_window(), "convolve");
  const LatticeFunction ff = fqv_transform(f, plan);
  if (route == ConvolutionRoute::spectral) {
    const LatticeFunction fg = fqv_transform(g, plan);
    LatticeFunction product(ff.window());
    for (int t = product.window().n_min; t <= product.window().n_max; ++t) product[t] = ff[t] * fg[t];
    return fqv_transform(product, plan);
  }
  const QParams& p = plan.params();
  const LatticeWindow& w = plan.in_window();
  LatticeFunction out(w);
  for (int x = w.n_min; x <= w.n_max; ++x) {
    const LatticeFunction tx = detail::translate_from_spectrum(x, ff, plan);
    out[x] = p.c_qv() * inner_product(tx, g, p);
  }
  return out;
}

}  // namespace qpswf
