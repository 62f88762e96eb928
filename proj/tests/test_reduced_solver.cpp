#include <doctest.h>

#include "gswcert/reduced_solver.hpp"
#include "gswcert/rng.hpp"

using gswcert::Certificate;
using gswcert::PrecisionConfig;
using gswcert::RootParams;
using gswcert::Rng;
using gswcert::Scalar;
using gswcert::SimplexPoint;
using gswcert::SolveReport;

namespace {
const PrecisionConfig cfg = gswcert::configure(256, 100);
}

TEST_CASE("reduced residuals vanish at the closed-form point") {
  Certificate cert = gswcert::build_certificate(5, cfg);
  std::vector<Scalar> eps = gswcert::eval_reduced(cert.d, cert.params);
  for (const Scalar& e : eps) CHECK(cfg.within(e, cert.params.big_r));
}

TEST_CASE("coordinate faces repel and the outer face pushes back") {
  RootParams params = gswcert::solve_root(4, cfg);
  Rng rng(61);
  // d_0 = 0 face
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Scalar> d{Scalar(0, 256), rng.uniform(cfg, 0.0, 2.0), rng.uniform(cfg, 0.0, 2.0)};
    CHECK(gswcert::eval_reduced(d, params)[0] < 0);
  }
  // outer face: mass exactly 2N
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Scalar> raw{rng.uniform(cfg, 0.1, 1.0), rng.uniform(cfg, 0.1, 1.0),
                            rng.uniform(cfg, 0.1, 1.0)};
    Scalar total(0, 256);
    for (const Scalar& x : raw) total += x;
    std::vector<Scalar> d;
    for (const Scalar& x : raw) d.push_back(8 * x / total);
    std::vector<Scalar> eps = gswcert::eval_reduced(d, params);
    Scalar sum(256);
    for (const Scalar& e : eps) sum += e;
    CHECK(sum > 0);
  }
}

TEST_CASE("newton solve from the default start matches the closed form") {
  for (long n = 3; n <= 12; ++n) {
    Certificate cert = gswcert::build_certificate(n, cfg);
    SolveReport report = gswcert::solve_reduced(n, cfg);
    REQUIRE(report.converged);
    CHECK(report.method == gswcert::SolveMethod::damped_newton);
    CHECK(report.final_residual_norm <= cfg.tolerance() * cert.params.big_r);
    Scalar agree = Scalar::pow2(-50, 256);
    for (std::size_t i = 0; i < cert.d.size(); ++i) {
      CHECK(report.solution[i] > 0);
      CHECK(abs(report.solution[i] - cert.d[i]) <= agree * abs(cert.d[i]));
    }
    Scalar mass(256);
    for (const Scalar& x : report.solution) mass += x;
    CHECK(mass < Scalar(2 * n, 256));
  }
}

TEST_CASE("perturbed and face starts reconverge") {
  Certificate cert = gswcert::build_certificate(10, cfg);
  Rng rng(67);
  std::vector<Scalar> start = cert.d;
  for (Scalar& x : start) x *= 1 + rng.uniform(cfg, -0.01, 0.01);
  SolveReport report = gswcert::solve_reduced(
      10, cfg, SimplexPoint{10, start, Scalar(0, 256)});
  REQUIRE(report.converged);
  Scalar agree = Scalar::pow2(-50, 256);
  for (std::size_t i = 0; i < cert.d.size(); ++i)
    CHECK(abs(report.solution[i] - cert.d[i]) <= agree * abs(cert.d[i]));

  // start on the face d_0 = 0: interior clipping moves it off immediately
  Certificate c3 = gswcert::build_certificate(3, cfg);
  std::vector<Scalar> face{Scalar(0, 256), Scalar(2, 256)};
  SolveReport r3 = gswcert::solve_reduced(3, cfg, SimplexPoint{3, face, Scalar(0, 256)});
  REQUIRE(r3.converged);
  for (std::size_t i = 0; i < c3.d.size(); ++i)
    CHECK(abs(r3.solution[i] - c3.d[i]) <= agree * abs(c3.d[i]));
}

TEST_CASE("face scan finds no sign violations") {
  gswcert::FaceScanReport report = gswcert::face_sign_scan(3, 1000, 7, cfg);
  CHECK(report.violations == 0);
  CHECK(report.details.empty());
  gswcert::FaceScanReport wide = gswcert::face_sign_scan(5, 200, 7, cfg);
  CHECK(wide.violations == 0);
}

TEST_CASE("the all-zero point violates every lower face strictly") {
  RootParams params = gswcert::solve_root(6, cfg);
  std::vector<Scalar> zero(5, Scalar(0, 256));
  std::vector<Scalar> eps = gswcert::eval_reduced(zero, params);
  for (const Scalar& e : eps) CHECK(e < 0);
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(gswcert::solve_reduced(2, cfg), std::invalid_argument);
  CHECK_THROWS_AS(gswcert::face_sign_scan(3, 0, 7, cfg), std::invalid_argument);
  std::vector<Scalar> wrong(3, Scalar(1, 256));
  CHECK_THROWS_AS(gswcert::solve_reduced(3, cfg, SimplexPoint{3, wrong, Scalar(0, 256)}),
                  std::invalid_argument);
}
