#include "gswcert/instances.hpp"

#include <stdexcept>

namespace gswcert {

SimRun quad_run(long n, const Scalar& alpha) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  const mpfr_prec_t prec = alpha.precision();
  Scalar factor = 1 - alpha;
  std::vector<Scalar> iterates;
  iterates.reserve(static_cast<std::size_t>(n + 1));
  Scalar x(1, prec);
  iterates.push_back(x);
  for (long k = 0; k < n; ++k) {
    x *= factor;
    iterates.push_back(x);
  }
  Scalar squared = factor * factor;
  Scalar gap = pow_ui(squared, static_cast<unsigned long>(n)) / 2;
  return SimRun{InstanceKind::quadratic, n, alpha, std::move(iterates), std::move(gap)};
}

SimRun huber_run(long n, const Scalar& alpha) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  if (alpha.sign() < 0) throw std::invalid_argument("huber instance requires alpha >= 0");
  Scalar denom = 2 * n * alpha + 1;
  Scalar delta = 1 / denom;
  std::vector<Scalar> iterates;
  iterates.reserve(static_cast<std::size_t>(n + 1));
  Scalar step = alpha * delta;
  for (long k = 0; k <= n; ++k) {
    Scalar x = 1 - k * step;
    if (x < delta) throw std::runtime_error("huber iterate left the linear region");
    iterates.push_back(std::move(x));
  }
  Scalar gap = 1 / (2 * denom);
  return SimRun{InstanceKind::huber, n, alpha, std::move(iterates), std::move(gap)};
}

Scalar huber_value(const Scalar& x, const Scalar& delta) {
  Scalar ax = abs(x);
  if (ax <= delta) return x * x / 2;
  return delta * ax - delta * delta / 2;
}

Scalar huber_slope(const Scalar& x, const Scalar& delta) {
  if (x >= delta) return delta;
  if (x <= -delta) return -delta;
  return x;
}

SimRun huber_run_simulated(long n, const Scalar& alpha) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  if (alpha.sign() < 0) throw std::invalid_argument("huber instance requires alpha >= 0");
  const mpfr_prec_t prec = alpha.precision();
  Scalar delta = 1 / (2 * n * alpha + 1);
  std::vector<Scalar> iterates;
  iterates.reserve(static_cast<std::size_t>(n + 1));
  Scalar x(1, prec);
  iterates.push_back(x);
  for (long k = 0; k < n; ++k) {
    x -= alpha * huber_slope(x, delta);
    iterates.push_back(x);
  }
  Scalar gap = huber_value(iterates.back(), delta);  // f_* = H(0) = 0
  return SimRun{InstanceKind::huber, n, alpha, std::move(iterates), std::move(gap)};
}

LowerEnvelopePoint envelope_point(long n, const Scalar& alpha) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  Scalar one_minus = 1 - alpha;
  Scalar quad = pow_ui(one_minus * one_minus, static_cast<unsigned long>(n)) / 2;
  std::optional<Scalar> huber;
  Scalar env = quad;
  if (alpha.sign() >= 0) {
    Scalar h = 1 / (2 * (2 * n * alpha + 1));
    if (h > env) env = h;
    huber = std::move(h);
  }
  return LowerEnvelopePoint{alpha, std::move(quad), std::move(huber), std::move(env)};
}

TrajectoryData quadratic_trajectory(long n, const Scalar& alpha, const PrecisionConfig& cfg) {
  SimRun run = quad_run(n, alpha);
  const mpfr_prec_t prec = cfg.precision_bits;
  std::vector<std::vector<Scalar>> gradients;
  std::vector<Scalar> values;
  gradients.reserve(run.iterates.size());
  values.reserve(run.iterates.size());
  for (const Scalar& x : run.iterates) {
    gradients.push_back({x});  // f(x) = x^2/2
    values.push_back(x * x / 2);
  }
  return TrajectoryData{1,
                        {Scalar(1, prec)},
                        {Scalar(prec)},
                        std::move(gradients),
                        std::move(values),
                        Scalar(prec),
                        alpha};
}

TrajectoryData huber_trajectory(long n, const Scalar& alpha, const PrecisionConfig& cfg) {
  SimRun run = huber_run(n, alpha);
  const mpfr_prec_t prec = cfg.precision_bits;
  Scalar delta = 1 / (2 * n * alpha + 1);
  std::vector<std::vector<Scalar>> gradients;
  std::vector<Scalar> values;
  gradients.reserve(run.iterates.size());
  values.reserve(run.iterates.size());
  for (const Scalar& x : run.iterates) {
    gradients.push_back({huber_slope(x, delta)});
    values.push_back(huber_value(x, delta));
  }
  return TrajectoryData{1,
                        {Scalar(1, prec)},
                        {Scalar(prec)},
                        std::move(gradients),
                        std::move(values),
                        Scalar(prec),
                        alpha};
}

MinimaxReport minimax_report(long n, const PrecisionConfig& cfg, long grid_points) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  const mpfr_prec_t prec = cfg.precision_bits;
  Certificate cert = build_certificate(n, cfg);
  const RootParams& params = cert.params;
  const Scalar& alpha_star = params.alpha;
  const Scalar& rate = params.rate;
  const Scalar tol = cfg.tolerance();
  const Scalar loose = Scalar::pow2(10, prec) * tol;

  MinimaxReport report{n, alpha_star, rate, {}, true};
  auto add = [&report](const std::string& name, bool pass, Scalar observed) {
    report.clauses.push_back(MinimaxClause{name, pass, std::move(observed)});
    report.all_pass = report.all_pass && pass;
  };

  // Balance: the two lower bounds agree at the balanced step, and both
  // equal the certified rate.
  {
    Scalar quad = quad_run(n, alpha_star).final_gap;
    Scalar hub = huber_run(n, alpha_star).final_gap;
    Scalar balance = quad - hub;
    add("balance identity", abs(balance) <= tol, balance);
    add("quadratic tight at balanced step", abs(quad - rate) <= loose, quad - rate);
    add("huber tight at balanced step", abs(hub - rate) <= loose, hub - rate);
  }

  // Certified upper bound holds with equality on both instances.
  {
    RateVerdict qv = rate_bound(cert, quadratic_trajectory(n, alpha_star, cfg));
    RateVerdict hv = rate_bound(cert, huber_trajectory(n, alpha_star, cfg));
    add("upper bound on quadratic run", qv.holds && abs(qv.margin) <= loose, qv.margin);
    add("upper bound on huber run", hv.holds && abs(hv.margin) <= loose, hv.margin);
  }

  // Envelope dominates the balanced value across [-1, 2 alpha_*], with the
  // balanced step inserted exactly; negative steps sit strictly above 1/2.
  {
    Scalar lo(-1, prec);
    Scalar hi = 2 * alpha_star;
    Scalar span = hi - lo;
    Scalar worst = envelope_point(n, alpha_star).envelope - rate;
    bool grid_ok = worst >= -loose;
    for (long k = 0; k < grid_points; ++k) {
      Scalar alpha = lo + span * k / (grid_points - 1);
      Scalar margin = envelope_point(n, alpha).envelope - rate;
      if (margin < worst) worst = margin;
      if (margin < -loose) grid_ok = false;
    }
    add("envelope dominates balanced value", grid_ok, worst);
    Scalar neg = envelope_point(n, Scalar(-1, prec)).envelope;
    add("negative step excluded", neg > Scalar::ratio(1, 2, prec), neg);
  }
  return report;
}

}  // namespace gswcert
