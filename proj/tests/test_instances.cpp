#include <doctest.h>

#include "gswcert/instances.hpp"
#include "gswcert/rng.hpp"

using gswcert::PrecisionConfig;
using gswcert::RootParams;
using gswcert::Rng;
using gswcert::Scalar;
using gswcert::SimRun;

namespace {
const PrecisionConfig cfg = gswcert::configure(256, 100);
const Scalar one(1, 256);
}  // namespace

TEST_CASE("quadratic run closed form") {
  SimRun unit = gswcert::quad_run(3, Scalar(1, 256));
  CHECK(unit.final_gap.is_zero());
  CHECK(unit.iterates[1].is_zero());

  RootParams params = gswcert::solve_root(3, cfg);
  SimRun balanced = gswcert::quad_run(3, params.alpha);
  CHECK(abs(balanced.final_gap - params.rate) <= Scalar::pow2(10, 256) * cfg.tolerance());

  // alpha = -0.1: gap (1.1)^6/2 = 0.8857805 exactly, above 1/2
  SimRun negative = gswcert::quad_run(3, Scalar::from_decimal("-0.1", 256));
  Scalar frozen = Scalar::from_decimal("0.8857805", 256);
  CHECK(cfg.within(negative.final_gap - frozen, one));
  CHECK(negative.final_gap > Scalar::ratio(1, 2, 256));
}

TEST_CASE("huber run stays in the linear region") {
  SimRun still = gswcert::huber_run(3, Scalar(0, 256));
  CHECK(still.final_gap == Scalar::ratio(1, 2, 256));
  for (const Scalar& x : still.iterates) CHECK(x == one);

  RootParams params = gswcert::solve_root(3, cfg);
  SimRun balanced = gswcert::huber_run(3, params.alpha);
  CHECK(abs(balanced.final_gap - params.rate) <= Scalar::pow2(10, 256) * cfg.tolerance());

  for (double a : {0.0, 0.5, 1.0, 10.0}) {
    Scalar alpha = Scalar::from_double(a, 256);
    SimRun run = gswcert::huber_run(4, alpha);
    Scalar delta = 1 / (8 * alpha + 1);
    Scalar expected = (4 * alpha + 1) / (8 * alpha + 1);  // x_N = (N a + 1)/(2N a + 1)
    CHECK(cfg.within(run.iterates.back() - expected, one));
    CHECK(run.iterates.back() >= delta);
  }
  CHECK_THROWS_AS(gswcert::huber_run(3, Scalar(-1, 256)), std::invalid_argument);
}

TEST_CASE("huber closed form matches the step-by-step simulation") {
  Rng rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    Scalar alpha = rng.uniform(cfg, 0.0, 3.0);
    SimRun closed = gswcert::huber_run(5, alpha);
    SimRun simulated = gswcert::huber_run_simulated(5, alpha);
    for (std::size_t k = 0; k < closed.iterates.size(); ++k)
      CHECK(cfg.within(closed.iterates[k] - simulated.iterates[k], one));
    CHECK(cfg.within(closed.final_gap - simulated.final_gap, one));
  }
}

TEST_CASE("clipped huber derivative is 1-Lipschitz") {
  Rng rng(83);
  Scalar delta = Scalar::ratio(1, 7, 256);
  for (int trial = 0; trial < 200; ++trial) {
    Scalar x = rng.uniform(cfg, -2.0, 2.0);
    Scalar y = rng.uniform(cfg, -2.0, 2.0);
    Scalar jump = abs(gswcert::huber_slope(x, delta) - gswcert::huber_slope(y, delta));
    CHECK(jump <= abs(x - y) + cfg.tolerance());
  }
}

TEST_CASE("lower envelope values and the balanced crossing") {
  RootParams params = gswcert::solve_root(3, cfg);
  Scalar tight = Scalar::pow2(10, 256) * cfg.tolerance();

  gswcert::LowerEnvelopePoint at_star = gswcert::envelope_point(3, params.alpha);
  REQUIRE(at_star.huber_value.has_value());
  CHECK(abs(at_star.quad_value - *at_star.huber_value) <= tight);
  CHECK(abs(at_star.envelope - params.rate) <= tight);

  gswcert::LowerEnvelopePoint at_one = gswcert::envelope_point(3, Scalar(1, 256));
  CHECK(at_one.envelope == Scalar::ratio(1, 14, 256));  // huber term 1/(2(2N+1))
  CHECK(at_one.envelope > params.rate);

  gswcert::LowerEnvelopePoint at_neg = gswcert::envelope_point(3, Scalar(-1, 256));
  CHECK_FALSE(at_neg.huber_value.has_value());
  CHECK(at_neg.envelope == Scalar(32, 256));  // 2^6 / 2
  CHECK(at_neg.envelope > params.rate);
}

TEST_CASE("envelope terms are monotone on alpha >= 1") {
  RootParams params = gswcert::solve_root(4, cfg);
  Scalar prev_quad(-1, 256);
  Scalar prev_huber(1, 256);
  for (int k = 0; k <= 40; ++k) {
    Scalar alpha = 1 + Scalar(k, 256) / 10;
    gswcert::LowerEnvelopePoint p = gswcert::envelope_point(4, alpha);
    CHECK(p.quad_value >= prev_quad);
    REQUIRE(p.huber_value.has_value());
    CHECK(*p.huber_value <= prev_huber);
    prev_quad = p.quad_value;
    prev_huber = *p.huber_value;
  }
}

TEST_CASE("minimax report closes the argument at several horizons") {
  for (long n : {3L, 25L}) {
    gswcert::MinimaxReport report = gswcert::minimax_report(n, cfg);
    for (const gswcert::MinimaxClause& clause : report.clauses) {
      INFO(clause.name);
      CHECK(clause.pass);
    }
    CHECK(report.all_pass);
    CHECK(report.clauses.size() == 7);
  }
  CHECK_THROWS_AS(gswcert::minimax_report(2, cfg), std::invalid_argument);
}
