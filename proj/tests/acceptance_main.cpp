// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Builds, verifies, and cross-validates the full certificate family at
// 256-bit precision, exactly at the tolerances printed with each line.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gswcert/dualcheck.hpp"
#include "gswcert/instances.hpp"
#include "gswcert/record.hpp"
#include "gswcert/reduced_solver.hpp"
#include "gswcert/rng.hpp"

using namespace gswcert;

namespace {

const PrecisionConfig cfg = configure(256, 100);
const mpfr_prec_t P = 256;
int failures = 0;

void report(int idx, const char* what, bool pass, const std::string& detail = "") {
  std::printf("[%2d] %-58s %s%s%s\n", idx, what, pass ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::vector<Scalar> random_d(Rng& rng, long n, double lo, double hi) {
  std::vector<Scalar> d;
  for (long i = 0; i < n - 1; ++i) d.push_back(rng.uniform(cfg, lo, hi));
  return d;
}

TrajectoryData random_trajectory(Rng& rng, long n, const Scalar& step) {
  const long dim = 4;
  std::vector<std::vector<Scalar>> gradients;
  std::vector<Scalar> values;
  for (long i = 0; i <= n; ++i) {
    std::vector<Scalar> g;
    for (long t = 0; t < dim; ++t) g.push_back(rng.uniform(cfg, -1.0, 1.0));
    gradients.push_back(std::move(g));
    values.push_back(rng.uniform(cfg, -1.0, 1.0));
  }
  std::vector<Scalar> x0, xstar;
  for (long t = 0; t < dim; ++t) {
    x0.push_back(rng.uniform(cfg, -1.0, 1.0));
    xstar.push_back(rng.uniform(cfg, -1.0, 1.0));
  }
  return TrajectoryData{dim,       std::move(x0),     std::move(xstar), std::move(gradients),
                        std::move(values), rng.uniform(cfg, -1.0, 1.0), step};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  const Scalar one(1, P);
  const Scalar tol100 = Scalar::pow2(-100, P);
  const Scalar tol90 = Scalar::pow2(-90, P);
  const Scalar tol80 = Scalar::pow2(-80, P);
  const Scalar tol50 = Scalar::pow2(-50, P);

  // 1+2+3+4: certificate existence, root law, terminal value, tail squares
  // over N = 3..100.
  {
    bool exist_ok = true, root_ok = true, terminal_ok = true, square_ok = true;
    auto start = std::chrono::steady_clock::now();
    for (long n = 3; n <= 100; ++n) {
      Certificate cert = build_certificate(n, cfg);
      const Scalar& rho = cert.params.rho;
      const Scalar& R = cert.params.big_r;

      Scalar worst(P);
      for (const Scalar& e : cert.residuals)
        if (abs(e) > worst) worst = abs(e);
      bool positive = true;
      for (const Scalar& x : cert.d) positive = positive && x > 0;
      for (const Scalar& x : cert.c) positive = positive && x > 0;
      for (const Scalar& x : cert.a) positive = positive && x > 0;
      for (const Scalar& x : cert.b) positive = positive && x > 0;
      for (const Scalar& x : cert.margins) positive = positive && x > 0;
      exist_ok = exist_ok && worst <= tol100 * R && positive;

      root_ok = root_ok && abs(phi(n, rho) - one) <= tol100 &&
                Scalar::ratio(1, 2, P) < rho && rho < one &&
                abs(R * (2 * n * cert.params.alpha + 1) - 1) <= tol100;

      terminal_ok = terminal_ok &&
                    abs(cert.a.back() - (2 - sqrt(3 - 2 * rho + rho * rho))) <= tol100;

      AltSumTable table = terminal_polynomials(cert.params);
      TailProfile tails = tails_from_tail_square(cert.params, table);
      for (long m = 0; m <= n - 1; ++m) {
        const Scalar& t = tails.t_values[static_cast<std::size_t>(m)];
        const Scalar& a2n = table.a_values[static_cast<std::size_t>(2 * (n - 1 - m))];
        square_ok = square_ok && abs(R * t * t - a2n) <= tol100;
      }
      square_ok = square_ok && abs(tails.t_values[0] - 2 * n) <= tol90 * Scalar(n, P);
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[64];
    std::snprintf(timing, sizeof timing, "(N=3..100, %.1fs)", secs);
    report(1, "certificate exists, residuals <= 2^-100 R, all positive", exist_ok, timing);
    report(2, "root law and R(2N alpha + 1) = 1 within 2^-100", root_ok);
    report(3, "terminal coefficient equals 2 - sqrt(3-2rho+rho^2)", terminal_ok);
    report(4, "tail squares match A_2n within 2^-100, T_0 = 2N", square_ok);
  }

  // 5: universal identities at 50 seeded random d per horizon.
  {
    bool ok = true;
    for (long n : {3L, 5L, 10L, 25L}) {
      RootParams params = solve_root(n, cfg);
      AltSumTable table = terminal_polynomials(params);
      const Scalar& R = params.big_r;
      Rng rng(1000 + static_cast<std::uint64_t>(n));
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<Scalar> d = random_d(rng, n, -2.0, 2.0);
        ok = ok && abs(conservation_right_residual(d, params)) <= tol90 * R;
        ok = ok && abs(conservation_weighted_left_residual(d, params)) <= tol90 * R;
        ok = ok && abs(terminal_quadratic_residual(d, params, table)) <= tol90 * R * R;
        std::vector<Scalar> dpos = random_d(rng, n, 0.0, 3.0);
        ok = ok && b_tail_normal_check(dpos, params) <= tol90;
        ok = ok && eps_tail_residual_max(dpos, params) <= tol90;
      }
    }
    report(5, "conservation, terminal quadratic, tail forms at random d", ok,
           "(50 draws x N in {3,5,10,25})");
  }

  // 6: alternating-sum suite for N = 3..50.
  {
    bool ok = true;
    for (long n = 3; n <= 50; ++n) {
      RootParams params = solve_root(n, cfg);
      AltSumTable table = terminal_polynomials(params);
      const Scalar& rho = params.rho;
      for (long L = 0; L <= 2 * n; ++L) {
        Scalar direct = a_poly(L, rho);
        ok = ok && abs(direct - table.a_values[static_cast<std::size_t>(L)]) <=
                       tol90 * max(one, abs(direct));
      }
      for (long r = 1; r <= n; ++r) {
        const Scalar& hi = table.a_values[static_cast<std::size_t>(2 * r)];
        const Scalar& lo = table.a_values[static_cast<std::size_t>(2 * r - 2)];
        const Scalar& odd = table.a_values[static_cast<std::size_t>(2 * r - 1)];
        ok = ok && abs(hi - rho * lo - 1 - (1 - rho) * odd) <= tol90 * max(one, abs(hi));
        Scalar det = truncation_determinant(r, params);
        if (r < n)
          ok = ok && det > 0;
        else
          ok = ok && abs(det) <= tol90;
      }
      for (long idx = 1; idx <= n - 1; ++idx)
        ok = ok && abs(convolution_residual(idx, table)) <= tol90 * convolution_scale(idx, table);
    }
    report(6, "A_L closed form, odd reduction, convolution, determinants", ok, "(N=3..50)");
  }

  // 7: boundary signs, 1000 seeded samples per face.
  {
    bool ok = true;
    long total = 0;
    for (long n : {3L, 5L, 10L}) {
      FaceScanReport scan = face_sign_scan(n, 1000, 7, cfg);
      ok = ok && scan.violations == 0;
      total += scan.violations;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "(violations: %ld)", total);
    report(7, "face signs with scalar caps, 1000 samples per face", ok, detail);
  }

  // 8: solver cross-validation from the default interior start.
  {
    bool ok = true;
    for (long n = 3; n <= 30; ++n) {
      Certificate cert = build_certificate(n, cfg);
      SolveReport solved = solve_reduced(n, cfg);
      ok = ok && solved.converged;
      if (solved.converged)
        for (std::size_t i = 0; i < cert.d.size(); ++i)
          ok = ok && abs(solved.solution[i] - cert.d[i]) <= tol50 * abs(cert.d[i]);
    }
    report(8, "reduced solver matches closed form to 2^-50", ok, "(N=3..30)");
  }

  // 9: coefficient ledger and the dual identity on random trajectories.
  {
    bool ledger_ok = true;
    for (long n = 3; n <= 50; ++n) {
      Certificate cert = build_certificate(n, cfg);
      ledger_ok = ledger_ok &&
                  coefficient_ledger(cert).max_abs(P) <= tol90 * cert.params.big_r;
    }
    bool dual_ok = true;
    for (long n : {3L, 10L}) {
      Certificate cert = build_certificate(n, cfg);
      Rng rng(4000 + static_cast<std::uint64_t>(n));
      for (int trial = 0; trial < 100; ++trial) {
        TrajectoryData data = random_trajectory(rng, n, cert.params.alpha);
        Scalar residual = dual_identity_residual(cert, data);
        dual_ok = dual_ok && abs(residual) <= tol80 * dual_identity_scale(cert, data);
      }
    }
    report(9, "ledger entries <= 2^-90 R; dual identity <= 2^-80 scale", ledger_ok && dual_ok,
           "(N=3..50; 100 trajectories x N in {3,10})");
  }

  // 10: minimax closure.
  {
    bool ok = true;
    for (long n = 3; n <= 50; ++n) {
      RootParams params = solve_root(n, cfg);
      Scalar quad = quad_run(n, params.alpha).final_gap;
      Scalar hub = huber_run(n, params.alpha).final_gap;
      ok = ok && abs(quad - params.rate) <= tol90 && abs(hub - params.rate) <= tol90;
      ok = ok && abs(quad - hub) <= tol100;  // balance identity
      MinimaxReport closure = minimax_report(n, cfg, 1000);
      ok = ok && closure.all_pass;
      Scalar at_minus_one = envelope_point(n, Scalar(-1, P)).envelope;
      ok = ok && at_minus_one > Scalar::ratio(1, 2, P);
    }
    report(10, "both instances tight at alpha*, envelope >= r* on grid", ok, "(N=3..50)");
  }

  // 11: determinism of the table subcommand, byte for byte.
  {
    const std::string cli = GSWCERT_CLI_PATH;
    const std::string first = "/tmp/gswcert_accept_table1.csv";
    const std::string second = "/tmp/gswcert_accept_table2.csv";
    std::string cmd1 = cli + " table --n-min 3 --n-max 50 --format csv > " + first;
    std::string cmd2 = cli + " table --n-min 3 --n-max 50 --format csv > " + second;
    bool ok = std::system(cmd1.c_str()) == 0 && std::system(cmd2.c_str()) == 0;
    std::string a = slurp(first), b = slurp(second);
    ok = ok && !a.empty() && a == b;
    report(11, "two table runs over N=3..50 are byte-identical", ok);
  }

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
