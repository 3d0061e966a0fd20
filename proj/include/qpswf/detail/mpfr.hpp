#pragma once

// Minimal RAII holder for an mpfr_t with a per-value precision.

#include <mpfr.h>

#include <utility>

namespace qpswf::detail {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t bits) { mpfr_init2(x_, bits); mpfr_set_zero(x_, 1); }
  MpReal(mpfr_prec_t bits, double value) {
    mpfr_init2(x_, bits);
    mpfr_set_d(x_, value, MPFR_RNDN);
  }
  MpReal(const MpReal& other) {
    mpfr_init2(x_, mpfr_get_prec(other.x_));
    mpfr_set(x_, other.x_, MPFR_RNDN);
  }
  MpReal& operator=(const MpReal& other) {
    if (this != &other) {
      mpfr_set_prec(x_, mpfr_get_prec(other.x_));
      mpfr_set(x_, other.x_, MPFR_RNDN);
    }
    return *this;
  }
  ~MpReal() { mpfr_clear(x_); }

  mpfr_ptr get() noexcept { return x_; }
  mpfr_srcptr get() const noexcept { return x_; }

  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

 private:
  mpfr_t x_;
};

}  // namespace qpswf::detail
