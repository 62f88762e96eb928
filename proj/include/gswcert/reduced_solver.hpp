#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gswcert/certificate.hpp"
#include "gswcert/rootfind.hpp"

namespace gswcert {

// Point of the simplex  Sigma_N = { d >= 0 : sum d_i <= 2N }.
struct SimplexPoint {
  long n;
  std::vector<Scalar> d;
  Scalar slack;  // 2N - sum d_i
};

enum class SolveMethod { damped_newton, damped_fixed_point };

struct SolveReport {
  std::vector<Scalar> solution;
  long iterations;
  Scalar final_residual_norm;  // max-norm of (eps_0..eps_{N-2})
  SolveMethod method;
  bool converged;
  std::string message;
};

// First N-1 residuals as a function of d.
std::vector<Scalar> eval_reduced(const std::vector<Scalar>& d, const RootParams& params);

// Damped Newton with a central-difference Jacobian (step 2^(-p/3)) and
// iterates clipped to the simplex interior; falls back to the damped map
// d -> d - lambda*F(d) if Newton stalls.  Default start is the uniform
// interior point d_i = N/(N-1).  Non-convergence is reported explicitly.
SolveReport solve_reduced(long n, const PrecisionConfig& cfg,
                          const std::optional<SimplexPoint>& start = std::nullopt);

struct FaceViolation {
  long face;  // coordinate index, or -1 for the outer face
  long sample;
  std::vector<double> witness;
};

struct FaceScanReport {
  long n;
  long samples;
  std::uint64_t seed;
  long violations;
  std::vector<FaceViolation> details;  // capped at 8 entries
};

// Draws `samples` points on each coordinate face d_i = 0 and asserts
// eps_i < 0 there (with eps_0/R <= -(2+rho)/2 on the first face and
// eps_i/(R p^2) <= -(1+rho) on middle faces), plus `samples` outer-face
// points (sum d = 2N) where sum eps_i > 0.
FaceScanReport face_sign_scan(long n, long samples, std::uint64_t seed,
                              const PrecisionConfig& cfg);

}  // namespace gswcert
