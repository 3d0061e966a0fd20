#pragma once

// Normalized Hahn-Exton q-Bessel function
//
//   j_v(z; q^2) = sum_n (-1)^n q^{n(n+1)} z^{2n} / ((q^2;q^2)_n (q^{2v+2};q^2)_n)
//
// and the two identities built on it: the closed-form product integral over
// [0, a]_q and the lattice bound on |j_v(q^n; q^2)|.
//
// The series is entire but alternating.  At z = q^{-N} its terms peak near
// q^{-N^2} while the value on the lattice is of order q^{N^2}, so double
// precision is hopeless beyond a few lattice steps.  Evaluation therefore runs
// a double pass first and re-sums in MPFR, at a precision sized from the
// observed cancellation, whenever the double result cannot be trusted to eps.
// Arguments of the form s q^k are formed inside the extended precision, which
// matters on the lattice: rounding q^k itself would already destroy the value.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qpswf/detail/mpfr.hpp"
#include "qpswf/error.hpp"
#include "qpswf/qcalc.hpp"

namespace qpswf {

struct BesselEvalReport {
  double value = 1.0;
  std::size_t terms_used = 1;
  double max_term_magnitude = 1.0;  // +inf when it exceeds the double range
  bool cancellation_flag = false;   // max_term_magnitude > 1e12 |value|
  unsigned precision_bits = 53;     // 53 when the double pass sufficed
};

namespace detail {

inline constexpr double kCancellationRatio = 1e12;
inline constexpr long kMaxPrecisionBits = 1L << 17;

// Magnitude profile of the series from a log-space scan (no overflow).
struct SeriesProfile {
  double log_max_term = 0.0;       // ln max_n |t_n|
  double log_weighted_sum = 0.0;   // ln sum_n (n+1)|t_n|, a rounding-error scale
  std::size_t terms = 1;
};

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline SeriesProfile scan_series(double log_z2, double q, double order) {
  SeriesProfile prof;
  const double log_q = std::log(q);
  double log_t = 0.0;
  double prev = 0.0;
  for (std::size_t n = 1;; ++n) {
    const double q2n = std::pow(q, 2.0 * static_cast<double>(n));
    const double q2vn = std::pow(q, 2.0 * order + 2.0 * static_cast<double>(n));
    log_t += 2.0 * static_cast<double>(n) * log_q + log_z2 - std::log1p(-q2n) - std::log1p(-q2vn);
    prof.log_max_term = std::max(prof.log_max_term, log_t);
    prof.log_weighted_sum = log_add(prof.log_weighted_sum, std::log(static_cast<double>(n + 1)) + log_t);
    prof.terms = n + 1;
    if (log_t < prev && log_t < prof.log_max_term - 80.0) break;
    prev = log_t;
  }
  return prof;
}

struct PassResult {
  double value;
  double max_term;
  std::size_t terms;
};

// Double-precision pass.  Stops once a term is below eps * max(1, max term)
// and the terms are decaying, so the exit never precedes the term peak.
inline PassResult sum_double(double z2, double q, double order, double eps) {
  const double q2 = q * q;
  const double q2v = std::pow(q, 2.0 * order);
  double term = 1.0;
  double sum = 1.0;
  double max_term = 1.0;
  double q2n = 1.0;
  std::size_t n = 0;
  for (;;) {
    ++n;
    q2n *= q2;
    const double prev = std::abs(term);
    term *= -q2n * z2 / ((1.0 - q2n) * (1.0 - q2v * q2n));
    sum += term;
    const double mag = std::abs(term);
    max_term = std::max(max_term, mag);
    if (mag < eps * std::max(1.0, max_term) && mag < prev) break;
    if (term == 0.0) break;
  }
  return {sum, max_term, n + 1};
}

// Same series in MPFR at `bits`; z^2 = s^2 q^{2k} is formed at that precision.
inline PassResult sum_mpfr(double scale, int k, double q, double order, long bits) {
  const auto prec = static_cast<mpfr_prec_t>(bits);
  MpReal qq(prec, q);
  MpReal q2(prec);
  mpfr_sqr(q2.get(), qq.get(), MPFR_RNDN);
  MpReal q2v(prec);
  {
    MpReal two_v(prec, 2.0 * order);
    mpfr_pow(q2v.get(), qq.get(), two_v.get(), MPFR_RNDN);
  }
  MpReal z2(prec);
  mpfr_pow_si(z2.get(), qq.get(), 2L * k, MPFR_RNDN);
  {
    MpReal s(prec, scale);
    mpfr_mul(z2.get(), z2.get(), s.get(), MPFR_RNDN);
    mpfr_mul(z2.get(), z2.get(), s.get(), MPFR_RNDN);
  }

  MpReal term(prec, 1.0);
  MpReal sum(prec, 1.0);
  MpReal max_term(prec, 1.0);
  MpReal q2n(prec, 1.0);
  MpReal num(prec), den(prec), tmp(prec), mag(prec), prev(prec, 1.0), threshold(prec);
  std::size_t n = 0;
  for (;;) {
    ++n;
    mpfr_mul(q2n.get(), q2n.get(), q2.get(), MPFR_RNDN);
    mpfr_mul(num.get(), q2n.get(), z2.get(), MPFR_RNDN);
    mpfr_ui_sub(den.get(), 1, q2n.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), q2v.get(), q2n.get(), MPFR_RNDN);
    mpfr_ui_sub(tmp.get(), 1, tmp.get(), MPFR_RNDN);
    mpfr_mul(den.get(), den.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), num.get(), MPFR_RNDN);
    mpfr_div(term.get(), term.get(), den.get(), MPFR_RNDN);
    mpfr_neg(term.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);

    mpfr_abs(mag.get(), term.get(), MPFR_RNDN);
    if (mpfr_cmp(mag.get(), max_term.get()) > 0) mpfr_set(max_term.get(), mag.get(), MPFR_RNDN);
    // Past the peak and below the working precision relative to the peak term.
    mpfr_mul_2si(threshold.get(), max_term.get(), -bits, MPFR_RNDN);
    const bool decaying = mpfr_cmp(mag.get(), prev.get()) < 0;
    if ((decaying && mpfr_cmp(mag.get(), threshold.get()) < 0) || mpfr_zero_p(mag.get())) break;
    mpfr_set(prev.get(), mag.get(), MPFR_RNDN);
  }
  return {sum.to_double(), max_term.to_double(), n + 1};
}

inline BesselEvalReport evaluate_hahn_exton(double scale, int k, double q, double order, double eps) {
  scale = std::abs(scale);
  if (scale == 0.0) return {};

  const double log_z2 = 2.0 * (std::log(scale) + k * std::log(q));
  const SeriesProfile prof = scan_series(log_z2, q, order);
  constexpr double kLn2 = 0.69314718055994530942;

  BesselEvalReport report;
  // Double pass when the terms fit comfortably in double range.
  if (prof.log_max_term < 600.0) {
    const double z = scale * std::pow(q, k);
    const PassResult r = sum_double(z * z, q, order, eps);
    const double err = DBL_EPSILON * std::exp(prof.log_weighted_sum);
    if (err <= 0.5 * eps * std::abs(r.value)) {
      report.value = r.value;
      report.terms_used = r.terms;
      report.max_term_magnitude = r.max_term;
      report.cancellation_flag = r.max_term > kCancellationRatio * std::abs(r.value);
      report.precision_bits = 53;
      return report;
    }
  }

  // Extended pass.  The first guess assumes the value may be as small as
  // 1 / max term (the lattice case); refine from the achieved magnitude.
  const double log2_eps = std::log2(eps);
  long bits = static_cast<long>(std::ceil((prof.log_weighted_sum + prof.log_max_term) / kLn2 - log2_eps)) + 64;
  PassResult r{};
  for (int attempt = 0; attempt < 8; ++attempt) {
    bits = std::clamp(bits, 64L, kMaxPrecisionBits);
    r = sum_mpfr(scale, k, q, order, bits);
    const double log2_value = r.value != 0.0 ? std::log2(std::abs(r.value)) : -std::numeric_limits<double>::infinity();
    // achieved relative error ~ 2^{-bits} * weighted_sum / |value|
    const double log2_needed = prof.log_weighted_sum / kLn2 - log2_value - log2_eps + 3.0;
    if (static_cast<double>(bits) >= log2_needed || bits >= kMaxPrecisionBits) break;
    // Underflowed to zero in double: the value is below double range anyway.
    if (r.value == 0.0) break;
    bits = static_cast<long>(std::ceil(log2_needed)) + 64;
  }
  report.value = r.value;
  report.terms_used = r.terms;
  report.max_term_magnitude = prof.log_max_term > 709.0 ? std::numeric_limits<double>::infinity() : r.max_term;
  report.cancellation_flag = report.max_term_magnitude > kCancellationRatio * std::abs(r.value);
  report.precision_bits = static_cast<unsigned>(bits);
  return report;
}

}  // namespace detail

/// j_{v + shift}(., q^2) for fixed q; evaluation is pure and thread-safe.
class HahnExton {
 public:
  HahnExton(double q, double order, double eps = kDefaultEps) : q_(q), order_(order), eps_(eps) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("q must lie in (0,1)");
    if (!(order > -1.0)) throw InvalidParameter("Bessel order must be greater than -1");
  }
  explicit HahnExton(const QParams& p, int order_shift = 0)
      : HahnExton(p.q(), p.v() + order_shift, p.eps()) {}

  double q() const noexcept { return q_; }
  double order() const noexcept { return order_; }

  /// j(z); even in z.
  BesselEvalReport operator()(double z) const { return detail::evaluate_hahn_exton(z, 0, q_, order_, eps_); }
  /// j(q^k) with the lattice point formed exactly.
  BesselEvalReport lattice(int k) const { return detail::evaluate_hahn_exton(1.0, k, q_, order_, eps_); }
  /// j(s q^k).
  BesselEvalReport scaled(double s, int k) const { return detail::evaluate_hahn_exton(s, k, q_, order_, eps_); }

 private:
  double q_;
  double order_;
  double eps_;
};

/// j_v(z, q^2) at the order of p.
inline BesselEvalReport jv(double z, const QParams& p) { return HahnExton(p)(z); }

/// Lattice values j(q^e) for e in [e_min, e_max], tabulated once; exponents
/// outside the range are evaluated on demand.
class BesselTable {
 public:
  BesselTable(HahnExton fn, int e_min, int e_max) : fn_(fn), e_min_(e_min) {
    if (e_min > e_max) throw InvalidParameter("empty Bessel table range");
    values_.reserve(static_cast<std::size_t>(e_max - e_min + 1));
    for (int e = e_min; e <= e_max; ++e) values_.push_back(fn_.lattice(e).value);
  }

  double operator()(int e) const {
    const long idx = static_cast<long>(e) - e_min_;
    if (idx >= 0 && idx < static_cast<long>(values_.size())) return values_[static_cast<std::size_t>(idx)];
    return fn_.lattice(e).value;
  }

  const HahnExton& function() const noexcept { return fn_; }
  int e_min() const noexcept { return e_min_; }
  int e_max() const noexcept { return e_min_ + static_cast<int>(values_.size()) - 1; }

 private:
  HahnExton fn_;
  int e_min_;
  std::vector<double> values_;
};

/// Upper bound for |j_v(q^n, q^2)|:
///   C(q,v) = (-q^2;q^2)_inf (-q^{2v+2};q^2)_inf / (q^{2v+2};q^2)_inf,
/// times q^{n^2 + (2v+1) n} when n < 0.
inline double jv_bound(int n, const QParams& p) {
  const double q = p.q();
  const double q2 = q * q;
  const double q2v2 = std::pow(q, 2.0 * p.v() + 2.0);
  const double c = qpochhammer_inf(-q2, q2, p.eps()) * qpochhammer_inf(-q2v2, q2, p.eps()) /
                   qpochhammer_inf(q2v2, q2, p.eps());
  if (n >= 0) return c;
  const double nn = static_cast<double>(n);
  return c * std::pow(q, nn * nn + (2.0 * p.v() + 1.0) * nn);
}

inline constexpr double kDegeneracyThreshold = 1e-9;

inline bool nearly_degenerate(double y, double z) {
  const double y2 = y * y;
  const double z2 = z * z;
  return std::abs(y2 - z2) <= kDegeneracyThreshold * std::max(y2, z2);
}

/// Closed form of int_0^a j_v(yt) j_v(zt) t^{2v+1} d_q t, a = q^{a_exp}:
///   (1-q)/(1-q^{2v+2}) a^{2v+2}
///     [y^2 j_{v+1}(ay) j_v(a z/q) - z^2 j_{v+1}(az) j_v(a y/q)] / (y^2 - z^2).
inline double product_integral_closed(double y, double z, int a_exp, const QParams& p) {
  if (!(y >= 0.0 && z >= 0.0)) throw InvalidParameter("product integral needs y, z >= 0");
  if (nearly_degenerate(y, z)) {
    throw DegenerateArguments("closed-form product integral is degenerate at y^2 ~ z^2");
  }
  const double q = p.q();
  const HahnExton jv0(p);
  const HahnExton jv1(p, 1);
  const double y2 = y * y;
  const double z2 = z * z;
  const double numer = y2 * jv1.scaled(y, a_exp).value * jv0.scaled(z, a_exp - 1).value -
                       z2 * jv1.scaled(z, a_exp).value * jv0.scaled(y, a_exp - 1).value;
  const double pre = (1.0 - q) / (1.0 - std::pow(q, 2.0 * p.v() + 2.0)) * p.weight(a_exp);
  return pre * numer / (y2 - z2);
}

/// Truncated Jackson sum of the same integral with `depth` lattice terms.
inline double product_integral_direct(double y, double z, int a_exp, const QParams& p, int depth) {
  if (depth < 1) throw InvalidParameter("product integral depth must be >= 1");
  const HahnExton jv0(p);
  const double sum = detail::lattice_sum(a_exp, a_exp + depth - 1, p.eps(), nullptr, [&](int k) {
    return p.weight(k) * jv0.scaled(y, k).value * jv0.scaled(z, k).value;
  });
  return (1.0 - p.q()) * sum;
}

}  // namespace qpswf
