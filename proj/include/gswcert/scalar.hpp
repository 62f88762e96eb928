#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace gswcert {

class arithmetic_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extended-precision real backed by MPFR, round-to-nearest everywhere.
// Every value carries its own significand width; binary operations produce
// a result at the wider of the two operand precisions, so one rounding per
// operation (relative error <= 2^(1-p)).  Invalid operations (division by
// zero, sqrt of a negative, log of a nonpositive, unparsable text) throw
// arithmetic_error instead of producing NaN.
class Scalar {
 public:
  explicit Scalar(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Scalar(long value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Scalar(const Scalar& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Scalar(Scalar&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Scalar& operator=(Scalar&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Scalar() { mpfr_clear(v_); }

  static Scalar from_decimal(const std::string& text, mpfr_prec_t prec);
  static Scalar from_double(double value, mpfr_prec_t prec) {
    Scalar r(prec);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    if (mpfr_nan_p(r.v_)) throw arithmetic_error("NaN is not a valid Scalar");
    return r;
  }
  // 2^e, exact at any precision.
  static Scalar pow2(long e, mpfr_prec_t prec) {
    Scalar r(prec);
    mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }
  static Scalar ratio(long num, long den, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Decimal serialization: fixed count of significant digits
  // (ceil(p*log10 2) + 2, enough for an exact round-trip at precision p),
  // scientific form  [-]d.ddd...e<exp>.
  std::string to_decimal() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    Scalar r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (mpfr_zero_p(b.v_)) throw arithmetic_error("division by zero");
    Scalar r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar& operator+=(long v) {
    mpfr_add_si(v_, v_, v, MPFR_RNDN);
    return *this;
  }
  Scalar& operator-=(long v) {
    mpfr_sub_si(v_, v_, v, MPFR_RNDN);
    return *this;
  }
  Scalar& operator*=(long v) {
    mpfr_mul_si(v_, v_, v, MPFR_RNDN);
    return *this;
  }
  Scalar& operator/=(long v) {
    if (v == 0) throw arithmetic_error("division by zero");
    mpfr_div_si(v_, v_, v, MPFR_RNDN);
    return *this;
  }

  friend Scalar operator+(const Scalar& a, long b) { return a + Scalar(b, a.precision()); }
  friend Scalar operator+(long a, const Scalar& b) { return Scalar(a, b.precision()) + b; }
  friend Scalar operator-(const Scalar& a, long b) { return a - Scalar(b, a.precision()); }
  friend Scalar operator-(long a, const Scalar& b) { return Scalar(a, b.precision()) - b; }
  friend Scalar operator*(const Scalar& a, long b) {
    Scalar r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Scalar operator*(long a, const Scalar& b) { return b * a; }
  friend Scalar operator/(const Scalar& a, long b) {
    if (b == 0) throw arithmetic_error("division by zero");
    Scalar r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Scalar operator/(long a, const Scalar& b) { return Scalar(a, b.precision()) / b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator<(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Scalar& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  friend Scalar sqrt(const Scalar& a) {
    if (mpfr_sgn(a.v_) < 0) throw arithmetic_error("sqrt of a negative value");
    Scalar r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Scalar abs(const Scalar& a) {
    Scalar r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  // a^e for integer e >= 0.
  friend Scalar pow_ui(const Scalar& a, unsigned long e) {
    Scalar r(a.precision());
    mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend Scalar log(const Scalar& a) {
    if (mpfr_sgn(a.v_) <= 0) throw arithmetic_error("log of a nonpositive value");
    Scalar r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
  friend const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

  mpfr_srcptr raw() const { return v_; }

 private:
  static mpfr_prec_t join(const Scalar& a, const Scalar& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
  }
  void widen(const Scalar& o) {
    if (o.precision() > precision()) {
      mpfr_t t;
      mpfr_init2(t, o.precision());
      mpfr_set(t, v_, MPFR_RNDN);
      mpfr_swap(t, v_);
      mpfr_clear(t);
    }
  }
  mpfr_t v_;
};

// Precision/tolerance pair shared by every construction and check.  Identity
// checks pass iff |residual| <= 2^(-t) * scale with the scale supplied
// explicitly by the caller (typically R or R^2), never a raw magnitude.
struct PrecisionConfig {
  long precision_bits;
  long tolerance_exponent;

  Scalar scalar(long v) const { return Scalar(v, precision_bits); }
  Scalar ratio(long num, long den) const { return Scalar::ratio(num, den, precision_bits); }
  Scalar tolerance() const { return Scalar::pow2(-tolerance_exponent, precision_bits); }

  bool within(const Scalar& residual, const Scalar& scale) const {
    return abs(residual) <= tolerance() * abs(scale);
  }
  bool within_abs(const Scalar& residual) const { return abs(residual) <= tolerance(); }
};

// Validates the guard-digit contract: p >= 64, t >= 16, p >= 2t.
PrecisionConfig configure(long precision_bits, long tolerance_exponent);

}  // namespace gswcert
