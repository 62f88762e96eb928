#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gswcert/certificate.hpp"
#include "gswcert/scalar.hpp"

namespace gswcert {

// Index of the minimizer row in slack computations.
inline constexpr long star_index = -1;

// Low-rank multiplier pattern: lambda_{*,j} = c_j, lambda_{i,i+1} = a_i,
// lambda_{i+1,i} = b_i, lambda_{i,j} = d_i c_j for i+2 <= j; all other
// entries zero.
struct DualWeights {
  long n;
  std::vector<Scalar> lambda_star;
  std::vector<Scalar> lambda_fwd;
  std::vector<Scalar> lambda_rev;
  std::map<std::pair<long, long>, Scalar> lambda_far;
};

// A constant-step gradient-descent run: points are implied by
// x_{k+1} = x_k - step * g_k, so trajectory consistency holds by
// construction.  Values and gradients may be arbitrary (the dual identity
// is linear-algebraic and does not require convexity).
struct TrajectoryData {
  long dim;
  std::vector<Scalar> x0;
  std::vector<Scalar> xstar;
  std::vector<std::vector<Scalar>> gradients;  // g_0 .. g_N
  std::vector<Scalar> values;                  // f_0 .. f_N
  Scalar fstar;
  Scalar step;

  long horizon() const { return static_cast<long>(values.size()) - 1; }
  std::vector<Scalar> point(long i) const;  // x_i = x_0 - step * sum_{l<i} g_l
  void validate() const;
};

// Residual magnitudes of every dual-coefficient family evaluated at a
// certificate: function-value rows (outgoing minus incoming weight minus
// residual), star-row cancellations, the cleared forward/reversed adjacent
// Gram rows, diagonal Gram rows, and nonadjacent product slots.
struct CoefficientLedger {
  std::vector<Scalar> f_coeffs;  // f_0-f_*, .., f_N-f_*
  std::vector<Scalar> y_coeffs;
  std::vector<Scalar> gram_fwd;   // slots (i, i+1), i = 0..N-1
  std::vector<Scalar> gram_rev;   // slots (i+1, i), i = 0..N-2
  std::vector<Scalar> gram_diag;  // slots (k, k), k = 0..N
  std::map<std::pair<long, long>, Scalar> gram_far;

  Scalar max_abs(mpfr_prec_t prec) const;
};

DualWeights assemble_weights(const Certificate& cert);

CoefficientLedger coefficient_ledger(const Certificate& cert);

// Structural exhaustion check: every (f, y, Gram) slot touched by the weight
// pattern or the bound side falls in exactly one ledger family.
bool ledger_families_exhaustive(long n);

// Interpolation slack Q_{ij} = f_i - f_j - <g_j, x_i-x_j> - ||g_i-g_j||^2/2,
// with i or j equal to star_index for the minimizer row (g_* = 0).
Scalar slack(long i, long j, const TrajectoryData& data);

// Sum of weighted slacks minus the certified bound side
//   f_* - f_N + <v, x_0-x_*> - ||v||^2/(4r)
//   + sum_i eps_i (f_i - f_*) + (eps_N / 2) ||g_0||^2,
// with v = sum c_i g_i.  Zero for every consistent trajectory.
Scalar dual_identity_residual(const Certificate& cert, const TrajectoryData& data);

// Largest absolute summand appearing on either side of the identity; the
// natural tolerance scale for the residual above.
Scalar dual_identity_scale(const Certificate& cert, const TrajectoryData& data);

struct RateVerdict {
  bool holds;
  Scalar gap;     // f_N - f_*
  Scalar bound;   // rate * ||x_0 - x_*||^2
  Scalar margin;  // bound - gap
};

// Asserts f_N - f_* <= rate ||x_0-x_*||^2 + 2^(-t) for data from a convex
// 1-smooth instance.
RateVerdict rate_bound(const Certificate& cert, const TrajectoryData& data);

}  // namespace gswcert
