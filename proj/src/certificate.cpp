#include "gswcert/certificate.hpp"

#include <stdexcept>
#include <string>

namespace gswcert {
namespace {

void validate_d(const std::vector<Scalar>& d, const RootParams& params, const char* where) {
  if (d.size() != static_cast<std::size_t>(params.n - 1))
    throw std::invalid_argument(std::string(where) + ": d must have N-1 entries");
  for (const Scalar& x : d)
    if (mpfr_number_p(x.raw()) == 0)
      throw std::invalid_argument(std::string(where) + ": non-finite entry in d");
}

// Prefix sums D_i = d_0 + ... + d_i.
std::vector<Scalar> prefix_sums(const std::vector<Scalar>& d, mpfr_prec_t prec) {
  std::vector<Scalar> out;
  out.reserve(d.size());
  Scalar run(prec);
  for (const Scalar& x : d) {
    run += x;
    out.push_back(run);
  }
  return out;
}

// Suffix sums C_k = c_k + ... + c_N, indexed 0..N+1 with C_{N+1} = 0.
std::vector<Scalar> suffix_sums(const std::vector<Scalar>& c, mpfr_prec_t prec) {
  std::vector<Scalar> out(c.size() + 1, Scalar(prec));
  for (std::size_t k = c.size(); k-- > 0;) out[k] = out[k + 1] + c[k];
  return out;
}

}  // namespace

TailProfile tails_from_tail_square(const RootParams& params, const AltSumTable& table) {
  const long n = params.n;
  const mpfr_prec_t prec = params.rho.precision();
  if (table.n != n) throw std::invalid_argument("tail square: table horizon mismatch");

  std::vector<Scalar> t_values;
  t_values.reserve(static_cast<std::size_t>(n + 1));
  for (long m = 0; m <= n - 1; ++m) {
    const Scalar& a2n = table.a_values[static_cast<std::size_t>(2 * (n - 1 - m))];
    if (a2n.sign() <= 0) throw std::runtime_error("tail square: nonpositive A value");
    t_values.push_back(sqrt(a2n) / params.q);  // square law selects positive roots
  }
  t_values.push_back(Scalar(prec));  // T_N = 0

  for (long m = 1; m <= n; ++m)
    if (!(t_values[static_cast<std::size_t>(m - 1)] > t_values[static_cast<std::size_t>(m)]))
      throw std::runtime_error("tail square: tails not strictly decreasing");

  std::vector<Scalar> p_values;
  p_values.reserve(static_cast<std::size_t>(n + 1));
  p_values.push_back(Scalar(1, prec));
  for (long m = 1; m <= n; ++m)
    p_values.push_back(t_values[static_cast<std::size_t>(m - 1)] -
                       t_values[static_cast<std::size_t>(m)]);

  std::vector<Scalar> pi_values;
  pi_values.reserve(static_cast<std::size_t>(n));
  Scalar run(prec);
  pi_values.push_back(run);  // Pi_0 = 0
  for (long m = 1; m <= n - 1; ++m) {
    run += p_values[static_cast<std::size_t>(m)];
    pi_values.push_back(run);
  }

  // W_N = sum_{m=1}^{N-1} P_m - (N-1); L_N from its defining affine form.
  Scalar w_n = pi_values.back() - (n - 1);
  Scalar l_n = params.big_r * (w_n + (n - 1)) + (params.big_r - 1) / params.alpha + params.q;

  return TailProfile{n,      std::move(p_values), std::move(t_values),
                     std::move(pi_values), std::move(w_n), std::move(l_n)};
}

std::vector<Scalar> d_from_tails(const TailProfile& tails) {
  std::vector<Scalar> d;
  d.reserve(static_cast<std::size_t>(tails.n - 1));
  for (long m = 1; m <= tails.n - 1; ++m) {
    Scalar dj = tails.p_values[static_cast<std::size_t>(m)] -
                tails.p_values[static_cast<std::size_t>(m - 1)];
    if (dj.sign() <= 0) throw std::runtime_error("tail profile yields nonpositive d entry");
    d.push_back(std::move(dj));
  }
  return d;
}

std::vector<Scalar> system_c(const std::vector<Scalar>& d, const RootParams& params) {
  validate_d(d, params, "system_c");
  const long n = params.n;
  const mpfr_prec_t prec = params.rho.precision();
  const Scalar& R = params.big_r;
  std::vector<Scalar> D = prefix_sums(d, prec);

  std::vector<Scalar> c;
  c.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n - 2; ++i)
    c.push_back(R * (params.alpha * D[static_cast<std::size_t>(i)] -
                     d[static_cast<std::size_t>(i)] + params.alpha));
  c.push_back(R * (1 + D.back() + params.rho / params.q));
  c.push_back(params.q);
  return c;
}

std::pair<std::vector<Scalar>, std::vector<Scalar>> system_ab(const std::vector<Scalar>& d,
                                                              const std::vector<Scalar>& c,
                                                              const RootParams& params) {
  validate_d(d, params, "system_ab");
  const long n = params.n;
  if (c.size() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("system_ab: c must have N+1 entries");
  const mpfr_prec_t prec = params.rho.precision();
  const Scalar& rho = params.rho;
  const Scalar& al = params.alpha;
  const Scalar& R = params.big_r;
  std::vector<Scalar> D = prefix_sums(d, prec);
  std::vector<Scalar> C = suffix_sums(c, prec);
  // P_m = 1 + sum_{k<m} d_k for 0 <= m <= N-1
  auto P = [&](long m) { return m == 0 ? Scalar(1, prec) : 1 + D[static_cast<std::size_t>(m - 1)]; };

  std::vector<Scalar> a(static_cast<std::size_t>(n), Scalar(prec));
  std::vector<Scalar> b(static_cast<std::size_t>(n - 1), Scalar(prec));

  a[static_cast<std::size_t>(n - 1)] = 1 - c[static_cast<std::size_t>(n)] * (1 + D.back());
  {
    const Scalar& cp = c[static_cast<std::size_t>(n - 1)];
    const Scalar& cq = c[static_cast<std::size_t>(n - 2)];
    const Scalar& at = a[static_cast<std::size_t>(n - 1)];
    Scalar pn2 = P(n - 2);
    a[static_cast<std::size_t>(n - 2)] =
        (cp * cp / R + cq * cp / R - at - (1 + al) * cp * pn2) / al;
    b[static_cast<std::size_t>(n - 2)] =
        (rho * cp * cp / R - cq * cp / R - rho * at + cp * pn2) / al;
  }
  for (long i = n - 3; i >= 0; --i) {
    const Scalar& c1 = c[static_cast<std::size_t>(i + 1)];
    const Scalar& c0 = c[static_cast<std::size_t>(i)];
    const Scalar& a1 = a[static_cast<std::size_t>(i + 1)];
    const Scalar& b1 = b[static_cast<std::size_t>(i + 1)];
    const Scalar& d1 = d[static_cast<std::size_t>(i + 1)];
    const Scalar& tail = C[static_cast<std::size_t>(i + 3)];
    Scalar pi = P(i);
    a[static_cast<std::size_t>(i)] =
        (c1 * c1 / R + c0 * c1 / R - a1 - (1 + al) * c1 * pi - d1 * tail + (2 * al - 1) * b1) /
        al;
    b[static_cast<std::size_t>(i)] = (rho * c1 * c1 / R - c0 * c1 / R - rho * a1 + c1 * pi -
                                      rho * d1 * tail + rho * (2 * al - 1) * b1) /
                                     al;
  }
  return {std::move(a), std::move(b)};
}

std::vector<Scalar> residuals(const std::vector<Scalar>& d, const std::vector<Scalar>& c,
                              const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                              const RootParams& params) {
  validate_d(d, params, "residuals");
  const long n = params.n;
  if (c.size() != static_cast<std::size_t>(n + 1) || a.size() != static_cast<std::size_t>(n) ||
      b.size() != static_cast<std::size_t>(n - 1))
    throw std::invalid_argument("residuals: inconsistent coefficient lengths");
  const mpfr_prec_t prec = params.rho.precision();
  std::vector<Scalar> D = prefix_sums(d, prec);
  std::vector<Scalar> C = suffix_sums(c, prec);
  auto P = [&](long m) { return m == 0 ? Scalar(1, prec) : 1 + D[static_cast<std::size_t>(m - 1)]; };

  std::vector<Scalar> eps;
  eps.reserve(static_cast<std::size_t>(n + 1));
  eps.push_back(a[0] + d[0] * C[2] - b[0] - c[0]);
  for (long i = 1; i <= n - 2; ++i)
    eps.push_back(b[static_cast<std::size_t>(i - 1)] + a[static_cast<std::size_t>(i)] +
                  d[static_cast<std::size_t>(i)] * C[static_cast<std::size_t>(i + 2)] -
                  a[static_cast<std::size_t>(i - 1)] - b[static_cast<std::size_t>(i)] -
                  c[static_cast<std::size_t>(i)] * P(i - 1));
  eps.push_back(b[static_cast<std::size_t>(n - 2)] + a[static_cast<std::size_t>(n - 1)] -
                a[static_cast<std::size_t>(n - 2)] -
                c[static_cast<std::size_t>(n - 1)] * P(n - 2));
  eps.push_back(-c[0] - a[0] - d[0] * C[2] + (2 * params.alpha - 1) * b[0] +
                c[0] * c[0] / params.big_r);
  return eps;
}

std::vector<Scalar> cumulative_margins(const std::vector<Scalar>& d, const std::vector<Scalar>& c,
                                       const RootParams& params) {
  validate_d(d, params, "cumulative_margins");
  if (c.size() != static_cast<std::size_t>(params.n + 1))
    throw std::invalid_argument("cumulative_margins: c must have N+1 entries");
  const mpfr_prec_t prec = params.rho.precision();
  std::vector<Scalar> C = suffix_sums(c, prec);

  std::vector<Scalar> k;
  k.reserve(d.size());
  Scalar c_run(prec), d_run(prec);
  for (std::size_t i = 0; i < d.size(); ++i) {
    c_run += c[i];
    d_run += d[i];
    k.push_back(c_run - d_run * C[i + 1]);
  }
  return k;
}

Scalar terminal_weight(const std::vector<Scalar>& d, const RootParams& params) {
  validate_d(d, params, "terminal_weight");
  Scalar w(params.rho.precision());
  for (std::size_t j = 0; j < d.size(); ++j)
    w += (params.n - 1 - static_cast<long>(j)) * d[j];
  return w;
}

Scalar terminal_gap(const std::vector<Scalar>& d, const RootParams& params) {
  Scalar w = terminal_weight(d, params);
  return params.big_r * (w + (params.n - 1)) + (params.big_r - 1) / params.alpha + params.q;
}

std::vector<Scalar> prefix_profile(const std::vector<Scalar>& d, const RootParams& params) {
  validate_d(d, params, "prefix_profile");
  const mpfr_prec_t prec = params.rho.precision();
  std::vector<Scalar> p;
  p.reserve(static_cast<std::size_t>(params.n + 1));
  p.push_back(Scalar(1, prec));
  Scalar run(1, prec);
  for (long m = 1; m <= params.n - 1; ++m) {
    run += d[static_cast<std::size_t>(m - 1)];
    p.push_back(run);
  }
  p.push_back(1 / params.q);  // terminal boundary convention
  return p;
}

std::vector<Scalar> abstract_tails(const std::vector<Scalar>& d, const RootParams& params) {
  std::vector<Scalar> p = prefix_profile(d, params);
  const mpfr_prec_t prec = params.rho.precision();
  std::vector<Scalar> t(static_cast<std::size_t>(params.n + 1), Scalar(prec));
  for (long m = params.n - 1; m >= 0; --m)
    t[static_cast<std::size_t>(m)] =
        t[static_cast<std::size_t>(m + 1)] + p[static_cast<std::size_t>(m + 1)];
  return t;
}

namespace {

struct Evaluated {
  std::vector<Scalar> c, a, b, eps;
};

Evaluated evaluate_systems(const std::vector<Scalar>& d, const RootParams& params) {
  std::vector<Scalar> c = system_c(d, params);
  auto [a, b] = system_ab(d, c, params);
  std::vector<Scalar> eps = residuals(d, c, a, b, params);
  return Evaluated{std::move(c), std::move(a), std::move(b), std::move(eps)};
}

}  // namespace

Scalar conservation_right_residual(const std::vector<Scalar>& d, const RootParams& params) {
  Evaluated ev = evaluate_systems(d, params);
  Scalar sum(params.rho.precision());
  for (long i = 0; i <= params.n - 1; ++i) sum += ev.eps[static_cast<std::size_t>(i)];
  return sum + params.alpha * terminal_gap(d, params);
}

Scalar conservation_weighted_left_residual(const std::vector<Scalar>& d,
                                           const RootParams& params) {
  Evaluated ev = evaluate_systems(d, params);
  const mpfr_prec_t prec = params.rho.precision();
  Scalar sum = ev.eps[static_cast<std::size_t>(params.n)];
  Scalar weight(1, prec);
  Scalar rho2 = params.rho * params.rho;
  for (long i = 0; i <= params.n - 1; ++i) {
    sum += weight * ev.eps[static_cast<std::size_t>(i)];
    weight *= rho2;
  }
  return sum;
}

Scalar terminal_quadratic_residual(const std::vector<Scalar>& d, const RootParams& params,
                                   const AltSumTable& table) {
  Evaluated ev = evaluate_systems(d, params);
  Scalar l = terminal_gap(d, params);
  Scalar lhs = l * l + table.psi_n * l + table.phi_n;
  Scalar rhs(params.rho.precision());
  for (long i = 0; i <= params.n - 2; ++i)
    rhs += table.omega[static_cast<std::size_t>(i)] * ev.eps[static_cast<std::size_t>(i)];
  return lhs - rhs;
}

Scalar spurious_factor_margin(const std::vector<Scalar>& d, const RootParams& params,
                              const AltSumTable& table) {
  validate_d(d, params, "spurious_factor_margin");
  for (const Scalar& x : d)
    if (x.sign() < 0)
      throw std::invalid_argument("spurious_factor_margin requires d >= 0");
  return terminal_gap(d, params) + table.psi_n;
}

Scalar b_tail_normal_check(const std::vector<Scalar>& d, const RootParams& params) {
  Evaluated ev = evaluate_systems(d, params);
  std::vector<Scalar> t = abstract_tails(d, params);
  const long n = params.n;
  const mpfr_prec_t prec = params.rho.precision();
  const Scalar u = 1 - params.rho;
  const Scalar v = 2 * params.rho - 1;
  const Scalar rho_r = params.rho * params.big_r;

  // Geometric tail sums G_i = sum_{l=i+2}^{N-1} v^(l-i-2) T_l^2, built
  // backwards via G_i = T_{i+2}^2 + v G_{i+1}.
  std::vector<Scalar> geo(static_cast<std::size_t>(n - 1), Scalar(prec));
  for (long i = n - 3; i >= 0; --i)
    geo[static_cast<std::size_t>(i)] =
        t[static_cast<std::size_t>(i + 2)] * t[static_cast<std::size_t>(i + 2)] +
        v * geo[static_cast<std::size_t>(i + 1)];

  Scalar worst(prec);
  for (long i = 0; i <= n - 2; ++i) {
    const Scalar& ti = t[static_cast<std::size_t>(i)];
    const Scalar& tn = t[static_cast<std::size_t>(i + 1)];
    Scalar form =
        ti * tn + (params.rho - 2) * tn * tn + 2 * u * u * geo[static_cast<std::size_t>(i)];
    Scalar dev = abs(ev.b[static_cast<std::size_t>(i)] / rho_r - form);
    if (dev > worst) worst = dev;
  }
  return worst;
}

Scalar eps_tail_residual_max(const std::vector<Scalar>& d, const RootParams& params) {
  Evaluated ev = evaluate_systems(d, params);
  std::vector<Scalar> t = abstract_tails(d, params);
  const long n = params.n;
  const mpfr_prec_t prec = params.rho.precision();
  const Scalar& rho = params.rho;
  const Scalar u = 1 - rho;
  const Scalar v = 2 * rho - 1;
  const Scalar eta = rho * rho - 2 * rho + 2;
  const Scalar g1 = rho * rho - 2 * rho + 3;
  const Scalar g2 = (rho - 2) * (2 * rho * rho - 3 * rho + 2);

  std::vector<Scalar> geo(static_cast<std::size_t>(n - 1), Scalar(prec));
  for (long i = n - 3; i >= 0; --i)
    geo[static_cast<std::size_t>(i)] =
        t[static_cast<std::size_t>(i + 2)] * t[static_cast<std::size_t>(i + 2)] +
        v * geo[static_cast<std::size_t>(i + 1)];

  Scalar worst(prec);
  {
    const Scalar& t0 = t[0];
    const Scalar& t1 = t[1];
    Scalar form = t0 * t0 - (1 + rho) * t0 - 1 - eta * t1 * t1 + 2 * u * u * u * geo[0];
    Scalar dev = abs(ev.eps[0] / params.big_r - form);
    if (dev > worst) worst = dev;
  }
  Scalar u4 = u * u * u * u;
  for (long i = 1; i <= n - 2; ++i) {
    const Scalar& tp = t[static_cast<std::size_t>(i - 1)];
    const Scalar& ti = t[static_cast<std::size_t>(i)];
    const Scalar& tn = t[static_cast<std::size_t>(i + 1)];
    Scalar form =
        -tp * tp + g1 * ti * ti + g2 * tn * tn + 4 * u4 * geo[static_cast<std::size_t>(i)];
    Scalar dev = abs(ev.eps[static_cast<std::size_t>(i)] / params.big_r - form);
    if (dev > worst) worst = dev;
  }
  return worst;
}

Scalar outer_face_poly_residual(const std::vector<Scalar>& d, const RootParams& params) {
  Evaluated ev = evaluate_systems(d, params);
  const long n = params.n;
  const mpfr_prec_t prec = params.rho.precision();
  const Scalar& rho = params.rho;
  const Scalar& q = params.q;
  Scalar q2 = q * q;

  Scalar lhs(prec);
  for (long i = 0; i <= n - 2; ++i) lhs += ev.eps[static_cast<std::size_t>(i)];

  Scalar rd(prec), jweighted(prec);
  for (std::size_t j = 0; j < d.size(); ++j) {
    rd += d[j];
    jweighted += static_cast<long>(j) * d[j];
  }
  Scalar u = 1 - rho;
  Scalar rhs = q2 * rd * rd + rd * (2 * q - q2 * ((n - 1) * rho + (n - 3))) -
               (n - 1) * (1 + rho) * q2 + q * u - u * u + q2 * (1 + rho) * jweighted;
  return lhs - rhs;
}

Certificate build_certificate(long n, const PrecisionConfig& cfg) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  RootParams params = solve_root(n, cfg);
  AltSumTable table = terminal_polynomials(params);
  TailProfile tails = tails_from_tail_square(params, table);

  // Terminal gap must close for the completed construction.
  if (!cfg.within(tails.l_n, params.big_r))
    throw std::runtime_error("certificate invariant violated: terminal gap nonzero");

  std::vector<Scalar> d = d_from_tails(tails);
  std::vector<Scalar> c = system_c(d, params);
  auto [a, b] = system_ab(d, c, params);
  std::vector<Scalar> eps = residuals(d, c, a, b, params);
  std::vector<Scalar> margins = cumulative_margins(d, c, params);

  for (const Scalar& x : d)
    if (x.sign() <= 0) throw std::runtime_error("certificate invariant violated: d not positive");
  for (const Scalar& x : c)
    if (x.sign() <= 0) throw std::runtime_error("certificate invariant violated: c not positive");
  for (const Scalar& x : a)
    if (x.sign() <= 0) throw std::runtime_error("certificate invariant violated: a not positive");
  for (const Scalar& x : b)
    if (x.sign() <= 0) throw std::runtime_error("certificate invariant violated: b not positive");
  for (const Scalar& x : margins)
    if (x.sign() <= 0)
      throw std::runtime_error("certificate invariant violated: margin not positive");

  for (const Scalar& e : eps)
    if (!cfg.within(e, params.big_r))
      throw std::runtime_error("certificate invariant violated: residual bound exceeded");

  const Scalar& rho = params.rho;
  for (std::size_t i = 0; i + 1 < c.size() && i < d.size(); ++i) {
    Scalar bridge = rho * a[i] - b[i] - rho * d[i] * c[i + 1];
    if (!cfg.within(bridge, params.big_r))
      throw std::runtime_error("certificate invariant violated: bridge identity");
  }
  Scalar link_factor = rho / (1 - rho);
  for (std::size_t i = 0; i < b.size(); ++i) {
    Scalar link = b[i] - link_factor * margins[i];
    if (!cfg.within(link, params.big_r))
      throw std::runtime_error("certificate invariant violated: margin link");
  }

  return Certificate{std::move(params), cfg,         std::move(d),
                     std::move(c),      std::move(a), std::move(b),
                     std::move(eps),    std::move(margins)};
}

}  // namespace gswcert
