#include "gswcert/altsums.hpp"

#include <stdexcept>

namespace gswcert {

Scalar a_poly(long L, const Scalar& rho) {
  if (L < 0) throw std::invalid_argument("a_poly requires L >= 0");
  const mpfr_prec_t prec = rho.precision();
  Scalar sum(prec), power(1, prec);
  for (long s = 0; s <= L; ++s) {
    Scalar term = (L + 1 - s) * power;
    if (s % 2 == 0)
      sum += term;
    else
      sum -= term;
    power *= rho;
  }
  return sum;
}

Scalar a_closed(long L, const Scalar& rho) {
  if (L < 0) throw std::invalid_argument("a_closed requires L >= 0");
  Scalar tail = pow_ui(rho, static_cast<unsigned long>(L + 2));
  if (L % 2 != 0) tail = -tail;  // (-rho)^(L+2)
  Scalar denom = (1 + rho) * (1 + rho);
  return ((L + 1) + (L + 2) * rho + tail) / denom;
}

Scalar gamma_seq(long s, const Scalar& rho) {
  if (s < 0) throw std::invalid_argument("gamma_seq requires s >= 0");
  const mpfr_prec_t prec = rho.precision();
  switch (s) {
    case 0:
      return Scalar(-1, prec);
    case 1:
      return rho * rho - 2 * rho + 3;
    case 2:
      return (rho - 2) * (2 * rho * rho - 3 * rho + 2);
    default: {
      Scalar u4 = pow_ui(rho - 1, 4);
      return 4 * u4 * pow_ui(2 * rho - 1, static_cast<unsigned long>(s - 3));
    }
  }
}

Scalar capped_weight(long h, long n, const Scalar& rho) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  if (h < 0 || h > n - 1) throw std::invalid_argument("capped_weight requires 0 <= h <= n-1");
  const mpfr_prec_t prec = rho.precision();
  Scalar sum(prec), power(1, prec);
  for (long m = 0; m <= 2 * n - 4; ++m) {
    long cap = 2 * n - 3 - m < 2 * h ? 2 * n - 3 - m : 2 * h;
    Scalar term = cap * power;
    if (m % 2 == 0)
      sum += term;
    else
      sum -= term;
    power *= rho;
  }
  return sum;
}

Scalar phi_terminal(long n, const Scalar& rho) {
  const mpfr_prec_t prec = rho.precision();
  Scalar sum(prec), power(1, prec);
  for (long m = 0; m <= 2 * n - 1; ++m) {
    Scalar term = (m + 1) * power;
    if (m % 2 == 0)
      sum += term;
    else
      sum -= term;
    power *= rho;
  }
  return sum;
}

Scalar phi_terminal_closed(long n, const Scalar& rho) {
  Scalar r2n = pow_ui(rho, static_cast<unsigned long>(2 * n));
  Scalar denom = (1 + rho) * (1 + rho);
  return (1 - (2 * n + 1) * r2n - 2 * n * r2n * rho) / denom;
}

Scalar psi_terminal(long n, const Scalar& rho) {
  const mpfr_prec_t prec = rho.precision();
  Scalar alt_long(prec), alt_short(prec), power(1, prec);
  for (long m = 0; m <= 2 * n - 1; ++m) {
    if (m % 2 == 0) {
      alt_long += power;
      if (m <= 2 * n - 4) alt_short += power;
    } else {
      alt_long -= power;
      if (m <= 2 * n - 4) alt_short -= power;
    }
    power *= rho;
  }
  Scalar r2n = pow_ui(rho, static_cast<unsigned long>(2 * n));
  return 2 * alt_long - (2 * n - 3) * r2n - r2n * rho * alt_short;
}

AltSumTable terminal_polynomials(const RootParams& params) {
  const long n = params.n;
  const Scalar& rho = params.rho;

  std::vector<Scalar> a_values;
  a_values.reserve(static_cast<std::size_t>(2 * n + 1));
  for (long L = 0; L <= 2 * n; ++L) a_values.push_back(a_closed(L, rho));

  std::vector<Scalar> gamma_values;
  gamma_values.reserve(static_cast<std::size_t>(n + 1));
  for (long s = 0; s <= n; ++s) gamma_values.push_back(gamma_seq(s, rho));

  std::vector<Scalar> s_values;
  s_values.reserve(static_cast<std::size_t>(n));
  for (long h = 0; h <= n - 1; ++h) s_values.push_back(capped_weight(h, n, rho));

  std::vector<Scalar> omega;
  omega.reserve(static_cast<std::size_t>(n - 1));
  for (long i = 0; i <= n - 2; ++i)
    omega.push_back(params.big_r * s_values[static_cast<std::size_t>(n - 1 - i)]);

  return AltSumTable{n,
                     rho,
                     1 - rho,
                     2 * rho - 1,
                     rho * rho - 2 * rho + 2,
                     gamma_seq(1, rho),
                     gamma_seq(2, rho),
                     std::move(a_values),
                     std::move(gamma_values),
                     std::move(s_values),
                     phi_terminal(n, rho),
                     psi_terminal(n, rho),
                     std::move(omega)};
}

Scalar convolution_residual(long n_idx, const AltSumTable& table) {
  if (n_idx < 1) throw std::invalid_argument("convolution stated for n >= 1");
  if (n_idx > table.n) throw std::invalid_argument("convolution index exceeds table horizon");
  Scalar sum(table.rho.precision());
  for (long s = 0; s <= n_idx; ++s)
    sum += table.gamma_values[static_cast<std::size_t>(s)] *
           table.a_values[static_cast<std::size_t>(2 * (n_idx - s))];
  return sum;
}

Scalar convolution_scale(long n_idx, const AltSumTable& table) {
  if (n_idx < 1 || n_idx > table.n) throw std::invalid_argument("convolution index out of range");
  Scalar scale(1, table.rho.precision());
  for (long s = 0; s <= n_idx; ++s) {
    Scalar term = abs(table.gamma_values[static_cast<std::size_t>(s)] *
                      table.a_values[static_cast<std::size_t>(2 * (n_idx - s))]);
    if (term > scale) scale = term;
  }
  return scale;
}

Scalar truncation_determinant(long r, const RootParams& params) {
  if (r < 1 || r > params.n) throw std::invalid_argument("determinant requires 1 <= r <= N");
  const Scalar& rho = params.rho;
  Scalar even_lo = a_closed(2 * r - 2, rho);
  Scalar even_hi = a_closed(2 * r, rho);
  Scalar odd = a_closed(2 * r - 1, rho);
  return even_lo * even_hi - odd * odd;
}

Scalar truncation_determinant_closed(long r, const RootParams& params) {
  if (r < 1 || r > params.n) throw std::invalid_argument("determinant requires 1 <= r <= N");
  const Scalar& rho = params.rho;
  Scalar p = pow_ui(rho, static_cast<unsigned long>(2 * r));
  return (p * ((2 * r + 1) + 2 * r * rho) - 1) / ((1 + rho) * (1 + rho));
}

}  // namespace gswcert
