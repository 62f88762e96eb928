#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gswcert/dualcheck.hpp"
#include "gswcert/rootfind.hpp"
#include "gswcert/scalar.hpp"

namespace gswcert {

enum class InstanceKind { quadratic, huber };

// One-dimensional gradient-descent run from x_0 = 1.  The quadratic
// instance follows x_k = (1-alpha)^k; the Huber instance stays in the right
// linear region and follows x_k = 1 - k*alpha*delta with
// delta = 1/(2N*alpha + 1).
struct SimRun {
  InstanceKind function;
  long n;
  Scalar alpha;
  std::vector<Scalar> iterates;  // x_0 .. x_N
  Scalar final_gap;              // f(x_N) - f_*
};

SimRun quad_run(long n, const Scalar& alpha);
SimRun huber_run(long n, const Scalar& alpha);

// Step-by-step gradient descent on the Huber instance with the clipped
// derivative; cross-checks the closed-form trajectory.
SimRun huber_run_simulated(long n, const Scalar& alpha);

Scalar huber_value(const Scalar& x, const Scalar& delta);
Scalar huber_slope(const Scalar& x, const Scalar& delta);

// Pointwise lower envelope max{(1-alpha)^(2N)/2, 1/(2(2N*alpha+1))}; the
// Huber bound only applies for alpha >= 0.
struct LowerEnvelopePoint {
  Scalar alpha;
  Scalar quad_value;
  std::optional<Scalar> huber_value;
  Scalar envelope;
};

LowerEnvelopePoint envelope_point(long n, const Scalar& alpha);

// Instance trajectories packaged for the dual-certificate checks.
TrajectoryData quadratic_trajectory(long n, const Scalar& alpha, const PrecisionConfig& cfg);
TrajectoryData huber_trajectory(long n, const Scalar& alpha, const PrecisionConfig& cfg);

struct MinimaxClause {
  std::string name;
  bool pass;
  Scalar observed;
};

// Balanced value r_* = rho^(2N)/2 together with: the balance identity at
// alpha_* = 1 + rho, tightness of both instances against the certified
// upper bound, envelope >= r_* on a grid over [-1, 2 alpha_*] (with alpha_*
// inserted exactly), and the negative-step exclusion at alpha = -1.
struct MinimaxReport {
  long n;
  Scalar alpha_star;
  Scalar rate;
  std::vector<MinimaxClause> clauses;
  bool all_pass;
};

MinimaxReport minimax_report(long n, const PrecisionConfig& cfg, long grid_points = 1000);

}  // namespace gswcert
