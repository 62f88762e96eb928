#pragma once

#include "gswcert/scalar.hpp"

namespace gswcert {

// Horizon constants derived from the balanced root rho of
// rho^(2N) (2N rho + 2N + 1) = 1:  alpha = 1 + rho, q = rho^N,
// R = rho^(2N), rate = R/2.  rho lies in (1/2, 1), and R also satisfies
// R (2N alpha + 1) = 1.
struct RootParams {
  long n;
  Scalar rho;
  Scalar alpha;
  Scalar q;
  Scalar big_r;
  Scalar rate;
};

// phi_N(rho) = rho^(2N) (2N rho + 2N + 1); strictly increasing on rho >= 0.
Scalar phi(long n, const Scalar& rho);

// Bisection on [1/2, 1] followed by Newton polishing, with a bracket
// fallback whenever a Newton step escapes.  The iteration rule depends only
// on (n, cfg.precision_bits), so the output is bit-identical across runs.
RootParams solve_root(long n, const PrecisionConfig& cfg);

}  // namespace gswcert
