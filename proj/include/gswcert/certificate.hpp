#pragma once

#include <utility>
#include <vector>

#include "gswcert/altsums.hpp"
#include "gswcert/rootfind.hpp"
#include "gswcert/scalar.hpp"

namespace gswcert {

// Prefix/tail profile of the terminal-completed construction.
// p_values holds P_0..P_N (P_0 = 1, P_N = 1/q by the terminal convention),
// t_values holds T_0..T_N (T_N = 0), pi_values holds the partial sums
// Pi_0..Pi_{N-1} of the P's, w_n = sum (N-1-j) d_j and l_n is the terminal
// gap, zero at the constructed certificate.
struct TailProfile {
  long n;
  std::vector<Scalar> p_values;
  std::vector<Scalar> t_values;
  std::vector<Scalar> pi_values;
  Scalar w_n;
  Scalar l_n;
};

struct Certificate {
  RootParams params;
  PrecisionConfig cfg;
  std::vector<Scalar> d;          // d_0 .. d_{N-2}
  std::vector<Scalar> c;          // c_0 .. c_N
  std::vector<Scalar> a;          // a_0 .. a_{N-1}
  std::vector<Scalar> b;          // b_0 .. b_{N-2}
  std::vector<Scalar> residuals;  // eps_0 .. eps_N
  std::vector<Scalar> margins;    // K_0 .. K_{N-2}
};

// Closed-form tails from the square law R T_{N-1-n}^2 = A_{2n}: positive
// roots throughout, strictly decreasing, T_0 = 2N and T_{N-1} = 1/q.
TailProfile tails_from_tail_square(const RootParams& params, const AltSumTable& table);

// d_{m-1} = P_m - P_{m-1}; positive at the constructed profile.
std::vector<Scalar> d_from_tails(const TailProfile& tails);

// The triangular coefficient systems.  Each accepts an arbitrary real d of
// length N-1; non-finite or wrong-length input is rejected eagerly.
std::vector<Scalar> system_c(const std::vector<Scalar>& d, const RootParams& params);
std::pair<std::vector<Scalar>, std::vector<Scalar>> system_ab(const std::vector<Scalar>& d,
                                                              const std::vector<Scalar>& c,
                                                              const RootParams& params);
std::vector<Scalar> residuals(const std::vector<Scalar>& d, const std::vector<Scalar>& c,
                              const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                              const RootParams& params);

// K_i = sum_{h<=i} c_h - (sum_{h<=i} d_h)(sum_{j>i} c_j).
std::vector<Scalar> cumulative_margins(const std::vector<Scalar>& d, const std::vector<Scalar>& c,
                                       const RootParams& params);

// W_N(d) and the terminal gap L_N(d) = R (W_N + N - 1) + (R-1)/(1+rho) + q.
Scalar terminal_weight(const std::vector<Scalar>& d, const RootParams& params);
Scalar terminal_gap(const std::vector<Scalar>& d, const RootParams& params);

// Abstract prefixes/tails valid for every d (no terminal completion):
// P_m = 1 + sum_{k<m} d_k with P_N = 1/q, T_m = sum_{h>m} P_h, T_N = 0.
std::vector<Scalar> prefix_profile(const std::vector<Scalar>& d, const RootParams& params);
std::vector<Scalar> abstract_tails(const std::vector<Scalar>& d, const RootParams& params);

// sum_{i<N} eps_i + (1+rho) L_N(d); identically zero.
Scalar conservation_right_residual(const std::vector<Scalar>& d, const RootParams& params);
// eps_N + sum_{i<N} rho^(2i) eps_i; identically zero.
Scalar conservation_weighted_left_residual(const std::vector<Scalar>& d,
                                           const RootParams& params);

// L_N^2 + Psi_N L_N + Phi_N - sum_i Omega_{N,i} eps_i; identically zero
// (scale R^2).
Scalar terminal_quadratic_residual(const std::vector<Scalar>& d, const RootParams& params,
                                   const AltSumTable& table);

// L_N(d) + Psi_N(rho); strictly positive for componentwise nonnegative d.
Scalar spurious_factor_margin(const std::vector<Scalar>& d, const RootParams& params,
                              const AltSumTable& table);

// max_i | b_i/(rho R) - (T_i T_{i+1} + (rho-2) T_{i+1}^2
//          + 2 u^2 sum_{l>=i+2} v^(l-i-2) T_l^2) |  over the abstract tails.
Scalar b_tail_normal_check(const std::vector<Scalar>& d, const RootParams& params);

// max over the eps_0 and middle-residual tail normal forms of
// |eps_i/R - form_i|, again over the abstract tails.
Scalar eps_tail_residual_max(const std::vector<Scalar>& d, const RootParams& params);

// sum_{i<=N-2} eps_i minus its degree-two coefficient-class expansion
// q^2 Rd^2 + Rd {2q - q^2((N-1)rho + N-3)} + const + q^2 (1+rho) sum j d_j.
Scalar outer_face_poly_residual(const std::vector<Scalar>& d, const RootParams& params);

// Full pipeline: root -> terminal polynomials -> tail square -> systems ->
// residuals -> margins, with every certificate invariant enforced.  Any
// violation aborts with the named invariant.
Certificate build_certificate(long n, const PrecisionConfig& cfg);

}  // namespace gswcert
