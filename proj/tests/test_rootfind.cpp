#include <doctest.h>

#include "gswcert/rootfind.hpp"

using gswcert::PrecisionConfig;
using gswcert::RootParams;
using gswcert::Scalar;

namespace {

const PrecisionConfig cfg = gswcert::configure(256, 100);

// Independent oracle: 200 bisection steps on phi_N(rho) - 1 over [1/2, 1].
Scalar bisect_root(long n) {
  Scalar lo = Scalar::ratio(1, 2, cfg.precision_bits);
  Scalar hi(1, cfg.precision_bits);
  Scalar one(1, cfg.precision_bits);
  for (int i = 0; i < 200; ++i) {
    Scalar mid = (lo + hi) / 2;
    if (gswcert::phi(n, mid) < one)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("phi matches its small closed values") {
  Scalar one(1, 256);
  CHECK(gswcert::phi(3, one) == Scalar(13, 256));
  CHECK(gswcert::phi(3, Scalar::ratio(1, 2, 256)) == Scalar::ratio(10, 64, 256));
  CHECK(gswcert::phi(3, Scalar(0, 256)).is_zero());
  CHECK_THROWS_AS(gswcert::phi(3, Scalar(-1, 256)), std::invalid_argument);
  CHECK_THROWS_AS(gswcert::phi(0, one), std::invalid_argument);
}

TEST_CASE("solve_root agrees with the bisection oracle at n = 3") {
  RootParams params = gswcert::solve_root(3, cfg);
  Scalar oracle = bisect_root(3);
  CHECK(abs(params.rho - oracle) <= Scalar::pow2(-190, 256));
  // leading digits of rho_3
  CHECK(params.rho.to_decimal().substr(0, 6) == "6.7033");
  CHECK(Scalar::ratio(1, 2, 256) < params.rho);
  CHECK(params.rho < Scalar(1, 256));
}

TEST_CASE("derived constants satisfy their defining relations") {
  for (long n : {3L, 7L, 40L}) {
    RootParams params = gswcert::solve_root(n, cfg);
    CHECK(cfg.within(gswcert::phi(n, params.rho) - 1, Scalar(1, 256)));
    CHECK(cfg.within(params.big_r * (2 * n * params.alpha + 1) - 1, Scalar(1, 256)));
    CHECK(cfg.within(params.q * params.q - params.big_r, params.big_r));
    CHECK(params.rate == params.big_r / 2);
    CHECK(params.alpha == 1 + params.rho);
  }
}

TEST_CASE("root law and monotonicity hold across the full horizon range") {
  Scalar one(1, 256);
  Scalar half = Scalar::ratio(1, 2, 256);
  Scalar prev(0, 256);
  for (long n = 3; n <= 200; ++n) {
    CHECK(gswcert::phi(n, half) < one);
    CHECK(one < gswcert::phi(n, Scalar(1, 256)));
    RootParams params = gswcert::solve_root(n, cfg);
    CHECK(cfg.within(gswcert::phi(n, params.rho) - 1, one));
    CHECK(params.rho > prev);
    prev = params.rho;
  }
}

TEST_CASE("solve_root is deterministic") {
  RootParams a = gswcert::solve_root(17, cfg);
  RootParams b = gswcert::solve_root(17, cfg);
  CHECK(a.rho == b.rho);
  CHECK(a.rho.to_decimal() == b.rho.to_decimal());
}

TEST_CASE("horizons below 3 are rejected") {
  CHECK_THROWS_WITH_AS(gswcert::solve_root(2, cfg), "horizon below 3", std::invalid_argument);
}
