#pragma once

#include <vector>

#include "gswcert/rootfind.hpp"
#include "gswcert/scalar.hpp"

namespace gswcert {

// Alternating-truncation values A_L, geometric weights gamma_s, capped sums
// S_h, and the terminal polynomials Phi_N / Psi_N / Omega_{N,i}, all
// evaluated once at the horizon root and shared immutably.  Also houses the
// derived constants u = 1-rho, v = 2rho-1, eta = rho^2-2rho+2.
struct AltSumTable {
  long n;
  Scalar rho;
  Scalar u;
  Scalar v;
  Scalar eta;
  Scalar gamma1;
  Scalar gamma2;
  std::vector<Scalar> a_values;      // A_0 .. A_{2N}
  std::vector<Scalar> gamma_values;  // gamma_0 .. gamma_N
  std::vector<Scalar> s_values;      // S_0 .. S_{N-1}
  Scalar phi_n;                      // Phi_N(rho), zero at the horizon root
  Scalar psi_n;
  std::vector<Scalar> omega;         // Omega_{N,0} .. Omega_{N,N-2}
};

// A_L(rho) = sum_{s=0}^L (-1)^s (L+1-s) rho^s, by direct summation.
Scalar a_poly(long L, const Scalar& rho);

// Same quantity through the closed form (L+1 + (L+2) rho + (-rho)^(L+2)) / (1+rho)^2;
// this is the production path, a_poly is its independent oracle.
Scalar a_closed(long L, const Scalar& rho);

// gamma_0 = -1, gamma_1 = rho^2-2rho+3, gamma_2 = (rho-2)(2rho^2-3rho+2),
// gamma_s = 4 (rho-1)^4 (2rho-1)^(s-3) for s >= 3.
Scalar gamma_seq(long s, const Scalar& rho);

// S_h = sum_{m=0}^{2N-4} (-1)^m min{2N-3-m, 2h} rho^m, with S_0 = 0.
Scalar capped_weight(long h, long n, const Scalar& rho);

// Phi_N(rho) = sum_{m=0}^{2N-1} (-1)^m (m+1) rho^m, by direct summation,
// and its closed form (1 - (2N+1) rho^(2N) - 2N rho^(2N+1)) / (1+rho)^2.
Scalar phi_terminal(long n, const Scalar& rho);
Scalar phi_terminal_closed(long n, const Scalar& rho);

// Psi_N(rho) = 2 sum_{m=0}^{2N-1} (-rho)^m - (2N-3) rho^(2N)
//              - rho^(2N+1) sum_{m=0}^{2N-4} (-rho)^m.
Scalar psi_terminal(long n, const Scalar& rho);

AltSumTable terminal_polynomials(const RootParams& params);

// sum_{s=0}^{n} gamma_s A_{2n-2s}; identically zero for n >= 1 at every rho.
Scalar convolution_residual(long n_idx, const AltSumTable& table);
// Largest |gamma_s A_{2n-2s}| term, the natural tolerance scale for the sum.
Scalar convolution_scale(long n_idx, const AltSumTable& table);

// A_{2r-2} A_{2r} - A_{2r-1}^2; positive for 1 <= r < N, zero at r = N.
Scalar truncation_determinant(long r, const RootParams& params);
// The same determinant through (rho^(2r) (2r+1+2r rho) - 1) / (1+rho)^2.
Scalar truncation_determinant_closed(long r, const RootParams& params);

}  // namespace gswcert
