#include "gswcert/record.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "gswcert/dualcheck.hpp"
#include "gswcert/reduced_solver.hpp"
#include "gswcert/rng.hpp"

namespace gswcert {
namespace {

constexpr std::uint64_t kCheckSeed = 0xC0FFEE01ULL;

std::vector<Scalar> random_d(Rng& rng, long n, const PrecisionConfig& cfg, double lo, double hi) {
  std::vector<Scalar> d;
  d.reserve(static_cast<std::size_t>(n - 1));
  for (long i = 0; i < n - 1; ++i) d.push_back(rng.uniform(cfg, lo, hi));
  return d;
}

TrajectoryData random_trajectory(Rng& rng, long n, const Scalar& step,
                                 const PrecisionConfig& cfg, long dim = 4) {
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
  return TrajectoryData{dim,
                        std::move(x0),
                        std::move(xstar),
                        std::move(gradients),
                        std::move(values),
                        rng.uniform(cfg, -1.0, 1.0),
                        step};
}

}  // namespace

std::vector<NamedCheck> run_checks(long n, const PrecisionConfig& cfg, bool extended) {
  const mpfr_prec_t prec = cfg.precision_bits;
  const Scalar tol = cfg.tolerance();
  const Scalar loose = Scalar::pow2(10, prec) * tol;
  const Scalar looser = Scalar::pow2(20, prec) * tol;

  Certificate cert = build_certificate(n, cfg);
  const RootParams& params = cert.params;
  const Scalar& rho = params.rho;
  const Scalar& big_r = params.big_r;
  AltSumTable table = terminal_polynomials(params);
  TailProfile tails = tails_from_tail_square(params, table);

  std::vector<NamedCheck> checks;
  auto add = [&checks](const char* name, bool pass) { checks.push_back(NamedCheck{name, pass}); };

  {
    bool ok = abs(phi(n, rho) - Scalar(1, prec)) <= tol;
    ok = ok && Scalar::ratio(1, 2, prec) < rho && rho < Scalar(1, prec);
    ok = ok && abs(big_r * (2 * n * params.alpha + 1) - 1) <= tol;
    add("root_equation", ok);
  }
  {
    bool ok = true;
    for (const Scalar& e : cert.residuals) ok = ok && cfg.within(e, big_r);
    add("residuals", ok);
  }
  {
    bool ok = true;
    for (const Scalar& x : cert.d) ok = ok && x.sign() > 0;
    for (const Scalar& x : cert.c) ok = ok && x.sign() > 0;
    for (const Scalar& x : cert.a) ok = ok && x.sign() > 0;
    for (const Scalar& x : cert.b) ok = ok && x.sign() > 0;
    for (const Scalar& x : cert.margins) ok = ok && x.sign() > 0;
    add("positivity", ok);
  }
  {
    bool ok = true;
    for (std::size_t i = 0; i < cert.d.size(); ++i)
      ok = ok && cfg.within(rho * cert.a[i] - cert.b[i] - rho * cert.d[i] * cert.c[i + 1], big_r);
    add("bridge", ok);
  }
  {
    bool ok = true;
    Scalar factor = rho / (1 - rho);
    for (std::size_t i = 0; i < cert.b.size(); ++i)
      ok = ok && cfg.within(cert.b[i] - factor * cert.margins[i], big_r);
    add("margin_link", ok);
  }
  {
    bool ok = true;
    for (long m = 0; m <= n - 1; ++m) {
      const Scalar& t = tails.t_values[static_cast<std::size_t>(m)];
      const Scalar& a2n = table.a_values[static_cast<std::size_t>(2 * (n - 1 - m))];
      ok = ok && abs(big_r * t * t - a2n) <= tol;
    }
    ok = ok && abs(tails.t_values[0] - 2 * n) <= loose * Scalar(n, prec);
    add("tail_square", ok);
  }
  {
    Rng rng(kCheckSeed + static_cast<std::uint64_t>(n));
    bool right_ok = true, left_ok = true, quad_ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Scalar> d = random_d(rng, n, cfg, -2.0, 2.0);
      right_ok = right_ok && abs(conservation_right_residual(d, params)) <= loose * big_r;
      left_ok = left_ok && abs(conservation_weighted_left_residual(d, params)) <= loose * big_r;
      quad_ok = quad_ok &&
                abs(terminal_quadratic_residual(d, params, table)) <= loose * big_r * big_r;
    }
    add("conservation_right", right_ok);
    add("conservation_weighted_left", left_ok);
    add("terminal_quadratic", quad_ok);
  }
  {
    CoefficientLedger ledger = coefficient_ledger(cert);
    add("ledger", ledger.max_abs(prec) <= loose * big_r);
  }
  {
    SolveReport report = solve_reduced(n, cfg);
    bool ok = report.converged;
    const Scalar agree = Scalar::pow2(-cfg.tolerance_exponent / 2, prec);
    if (ok)
      for (std::size_t i = 0; i < cert.d.size(); ++i)
        ok = ok && abs(report.solution[i] - cert.d[i]) <= agree * abs(cert.d[i]);
    add("solver_crosscheck", ok);
  }

  if (!extended) return checks;

  {
    Rng rng(kCheckSeed + 17 + static_cast<std::uint64_t>(n));
    bool b_ok = true, e_ok = true, outer_ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Scalar> dpos = random_d(rng, n, cfg, 0.0, 3.0);
      b_ok = b_ok && b_tail_normal_check(dpos, params) <= loose;
      e_ok = e_ok && eps_tail_residual_max(dpos, params) <= loose;
      outer_ok = outer_ok &&
                 abs(outer_face_poly_residual(dpos, params)) <= loose * big_r * Scalar(n * n, prec);
    }
    add("b_tail_normal", b_ok);
    add("eps_tail_forms", e_ok);
    add("outer_face_polynomial", outer_ok);
  }
  {
    bool ok = true;
    for (long idx = 1; idx <= n - 1; ++idx)
      ok = ok && abs(convolution_residual(idx, table)) <= loose * convolution_scale(idx, table);
    add("convolution", ok);
  }
  {
    bool ok = true;
    for (long r = 1; r <= n; ++r) {
      const Scalar& hi = table.a_values[static_cast<std::size_t>(2 * r)];
      const Scalar& lo = table.a_values[static_cast<std::size_t>(2 * r - 2)];
      const Scalar& odd = table.a_values[static_cast<std::size_t>(2 * r - 1)];
      Scalar res = hi - rho * lo - 1 - (1 - rho) * odd;
      ok = ok && abs(res) <= loose * max(Scalar(1, prec), abs(hi));
    }
    add("odd_reduction", ok);
  }
  {
    bool ok = true;
    for (long r = 1; r <= n; ++r) {
      Scalar det = truncation_determinant(r, params);
      Scalar closed = truncation_determinant_closed(r, params);
      ok = ok && abs(det - closed) <= loose * max(Scalar(1, prec), abs(closed));
      if (r < n)
        ok = ok && det > 0;
      else
        ok = ok && abs(det) <= loose;
    }
    add("determinant_signs", ok);
  }
  {
    Rng rng(kCheckSeed + 29 + static_cast<std::uint64_t>(n));
    bool ok = spurious_factor_margin(cert.d, params, table) > 0;
    std::vector<Scalar> zero(static_cast<std::size_t>(n - 1), Scalar(prec));
    ok = ok && spurious_factor_margin(zero, params, table) > 0;
    for (int trial = 0; trial < 5; ++trial) {
      // Uniform point of the simplex with total mass uniform in [0, 2N].
      std::vector<Scalar> draws;
      Scalar total(prec);
      for (long j = 0; j <= n - 1; ++j) {
        draws.push_back(rng.exponential(cfg));
        total += draws.back();
      }
      Scalar mass = rng.uniform(cfg, 0.0, 2.0 * static_cast<double>(n));
      std::vector<Scalar> d;
      for (long j = 0; j <= n - 2; ++j) d.push_back(mass * draws[static_cast<std::size_t>(j)] / total);
      ok = ok && spurious_factor_margin(d, params, table) > 0;
    }
    add("spurious_factor", ok);
  }
  {
    Rng rng(kCheckSeed + 43 + static_cast<std::uint64_t>(n));
    bool ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      TrajectoryData data = random_trajectory(rng, n, params.alpha, cfg);
      Scalar res = dual_identity_residual(cert, data);
      ok = ok && abs(res) <= looser * dual_identity_scale(cert, data);
    }
    add("dual_identity", ok);
  }
  {
    FaceScanReport scan = face_sign_scan(n, 100, 7, cfg);
    add("face_signs", scan.violations == 0);
  }
  return checks;
}

bool CertificateRecord::all_pass() const {
  for (const NamedCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

CertificateRecord build_record(long n, const PrecisionConfig& cfg) {
  Certificate cert = build_certificate(n, cfg);
  const mpfr_prec_t prec = cfg.precision_bits;

  CertificateRecord record;
  record.n = n;
  record.precision_bits = cfg.precision_bits;
  record.tolerance_exponent = cfg.tolerance_exponent;
  record.rho = cert.params.rho.to_decimal();
  record.alpha = cert.params.alpha.to_decimal();
  record.rate = cert.params.rate.to_decimal();
  for (const Scalar& x : cert.d) record.d.push_back(x.to_decimal());
  for (const Scalar& x : cert.c) record.c.push_back(x.to_decimal());
  for (const Scalar& x : cert.a) record.a.push_back(x.to_decimal());
  for (const Scalar& x : cert.b) record.b.push_back(x.to_decimal());

  Scalar worst(prec);
  for (const Scalar& e : cert.residuals) {
    Scalar ae = abs(e);
    if (ae > worst) worst = ae;
  }
  record.residual_max_over_r = (worst / cert.params.big_r).to_decimal();
  Scalar least = cert.margins.front();
  for (const Scalar& k : cert.margins)
    if (k < least) least = k;
  record.margins_min = least.to_decimal();
  record.checks = run_checks(n, cfg, false);
  return record;
}

nlohmann::json record_to_json(const CertificateRecord& record) {
  nlohmann::json checks = nlohmann::json::object();
  for (const NamedCheck& c : record.checks) checks[c.name] = c.pass;
  return nlohmann::json{{"n", record.n},
                        {"precision_bits", record.precision_bits},
                        {"tolerance_exponent", record.tolerance_exponent},
                        {"rho", record.rho},
                        {"alpha", record.alpha},
                        {"rate", record.rate},
                        {"d", record.d},
                        {"c", record.c},
                        {"a", record.a},
                        {"b", record.b},
                        {"residual_max_over_R", record.residual_max_over_r},
                        {"margins_min", record.margins_min},
                        {"checks", checks}};
}

std::string record_to_csv(const CertificateRecord& record) {
  std::ostringstream out;
  out << "field,index,value\n";
  out << "n,," << record.n << "\n";
  out << "precision_bits,," << record.precision_bits << "\n";
  out << "tolerance_exponent,," << record.tolerance_exponent << "\n";
  out << "rho,," << record.rho << "\n";
  out << "alpha,," << record.alpha << "\n";
  out << "rate,," << record.rate << "\n";
  auto rows = [&out](const char* name, const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
      out << name << "," << i << "," << values[i] << "\n";
  };
  rows("d", record.d);
  rows("c", record.c);
  rows("a", record.a);
  rows("b", record.b);
  out << "residual_max_over_R,," << record.residual_max_over_r << "\n";
  out << "margins_min,," << record.margins_min << "\n";
  for (const NamedCheck& c : record.checks)
    out << "checks." << c.name << ",," << (c.pass ? 1 : 0) << "\n";
  return out.str();
}

TableRow build_table_row(long n, const PrecisionConfig& cfg) {
  RootParams params = solve_root(n, cfg);
  std::vector<NamedCheck> checks = run_checks(n, cfg, false);
  bool all = true;
  for (const NamedCheck& c : checks) all = all && c.pass;

  Certificate cert = build_certificate(n, cfg);
  Scalar worst(cfg.precision_bits);
  for (const Scalar& e : cert.residuals) {
    Scalar ae = abs(e);
    if (ae > worst) worst = ae;
  }
  return TableRow{n,
                  params.rho.to_decimal(),
                  params.alpha.to_decimal(),
                  params.rate.to_decimal(),
                  (worst / params.big_r).to_decimal(),
                  all};
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "n,rho,alpha_star,r_star,residual_max_over_R,all_checks_pass\n";
  for (const TableRow& r : rows)
    out << r.n << "," << r.rho << "," << r.alpha_star << "," << r.r_star << ","
        << r.residual_max_over_r << "," << (r.all_checks_pass ? 1 : 0) << "\n";
  return out.str();
}

nlohmann::json table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TableRow& r : rows)
    arr.push_back(nlohmann::json{{"n", r.n},
                                 {"rho", r.rho},
                                 {"alpha_star", r.alpha_star},
                                 {"r_star", r.r_star},
                                 {"residual_max_over_R", r.residual_max_over_r},
                                 {"all_checks_pass", r.all_checks_pass}});
  return arr;
}

}  // namespace gswcert
