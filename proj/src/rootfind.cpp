#include "gswcert/rootfind.hpp"

#include <stdexcept>

namespace gswcert {

Scalar phi(long n, const Scalar& rho) {
  if (n < 1) throw std::invalid_argument("phi requires n >= 1");
  if (rho.sign() < 0) throw std::invalid_argument("phi requires nonnegative rho");
  Scalar p = pow_ui(rho, static_cast<unsigned long>(2 * n));
  return p * (2 * n * rho + (2 * n + 1));
}

namespace {

// phi'(rho) = 2N (2N+1) rho^(2N-1) (1 + rho)
Scalar phi_derivative(long n, const Scalar& rho) {
  Scalar p = pow_ui(rho, static_cast<unsigned long>(2 * n - 1));
  return (2 * n) * (2 * n + 1) * p * (1 + rho);
}

}  // namespace

RootParams solve_root(long n, const PrecisionConfig& cfg) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  const mpfr_prec_t prec = cfg.precision_bits;
  const Scalar one(1, prec);

  Scalar lo = Scalar::ratio(1, 2, prec);
  Scalar hi(1, prec);
  if (!(phi(n, lo) < one && one < phi(n, hi)))
    throw std::runtime_error("root bracket [1/2, 1] invalid");

  // 32 bisection steps to localize, then Newton doubles digits per step.
  for (int i = 0; i < 32; ++i) {
    Scalar mid = (lo + hi) / 2;
    if (phi(n, mid) < one)
      lo = mid;
    else
      hi = mid;
  }

  Scalar rho = (lo + hi) / 2;
  const Scalar value_tol = cfg.tolerance();
  const Scalar step_floor = Scalar::pow2(-(static_cast<long>(prec) - 4), prec);
  Scalar last_step = hi - lo;
  bool converged = false;
  for (int iter = 0; iter < 400 && !converged; ++iter) {
    Scalar f = phi(n, rho) - one;
    if (abs(f) <= value_tol && abs(last_step) <= step_floor) {
      converged = true;
      break;
    }
    if (f.sign() < 0)
      lo = rho;
    else
      hi = rho;
    Scalar next = rho - f / phi_derivative(n, rho);
    if (!(lo <= next && next <= hi)) next = (lo + hi) / 2;  // bracket fallback
    if (next == rho) {
      // Step is below one ulp: the argument has converged.
      if (abs(f) <= value_tol) {
        converged = true;
        break;
      }
      next = (lo + hi) / 2;
      if (next == rho) break;  // bracket exhausted without value convergence
    }
    last_step = next - rho;
    rho = next;
  }
  if (!converged) throw std::runtime_error("root iteration did not converge");

  Scalar alpha = 1 + rho;
  Scalar q = pow_ui(rho, static_cast<unsigned long>(n));
  Scalar big_r = q * q;
  Scalar rate = big_r / 2;
  return RootParams{n, std::move(rho), std::move(alpha), std::move(q), std::move(big_r),
                    std::move(rate)};
}

}  // namespace gswcert
