#include "gswcert/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace gswcert {
namespace {

long decimal_digits(mpfr_prec_t prec) {
  // ceil(p * log10 2) + 2 guard digits, enough for an exact decimal round-trip.
  return static_cast<long>(std::ceil(static_cast<double>(prec) * 0.30102999566398119521)) + 2;
}

bool plausible_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    digits = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      digits = true;
    }
  }
  if (!digits) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  return i == s.size();
}

}  // namespace

Scalar Scalar::from_decimal(const std::string& text, mpfr_prec_t prec) {
  if (!plausible_decimal(text)) throw arithmetic_error("unparsable decimal string: " + text);
  Scalar r(prec);
  mpfr_t tmp;
  mpfr_init2(tmp, prec);
  int rc = mpfr_set_str(tmp, text.c_str(), 10, MPFR_RNDN);
  if (rc != 0 || mpfr_nan_p(tmp)) {
    mpfr_clear(tmp);
    throw arithmetic_error("unparsable decimal string: " + text);
  }
  mpfr_swap(tmp, r.v_);
  mpfr_clear(tmp);
  return r;
}

Scalar Scalar::ratio(long num, long den, mpfr_prec_t prec) {
  if (den == 0) throw arithmetic_error("division by zero");
  Scalar r(num, prec);
  mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
  return r;
}

std::string Scalar::to_decimal() const {
  if (mpfr_zero_p(v_)) return "0";
  const long digits = decimal_digits(precision());
  mpfr_exp_t exp = 0;
  char* s = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  if (s == nullptr) throw arithmetic_error("decimal conversion failed");
  std::string mant(s);
  mpfr_free_str(s);

  std::string out;
  std::size_t start = 0;
  if (mant[0] == '-') {
    out.push_back('-');
    start = 1;
  }
  out.push_back(mant[start]);
  out.push_back('.');
  out.append(mant, start + 1, std::string::npos);
  out.push_back('e');
  out.append(std::to_string(static_cast<long>(exp) - 1));
  return out;
}

PrecisionConfig configure(long precision_bits, long tolerance_exponent) {
  if (precision_bits < 64)
    throw std::invalid_argument("precision below 64 bits");
  if (tolerance_exponent < 16)
    throw std::invalid_argument("tolerance exponent below 16");
  if (precision_bits < 2 * tolerance_exponent)
    throw std::invalid_argument("insufficient guard digits");
  return PrecisionConfig{precision_bits, tolerance_exponent};
}

}  // namespace gswcert
