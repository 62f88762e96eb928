#include "gswcert/dualcheck.hpp"

#include <set>
#include <stdexcept>

namespace gswcert {

std::vector<Scalar> TrajectoryData::point(long i) const {
  if (i == star_index) return xstar;
  if (i < 0 || i > horizon()) throw std::invalid_argument("trajectory index out of range");
  std::vector<Scalar> x = x0;
  for (long l = 0; l < i; ++l)
    for (long t = 0; t < dim; ++t)
      x[static_cast<std::size_t>(t)] -= step * gradients[static_cast<std::size_t>(l)]
                                                        [static_cast<std::size_t>(t)];
  return x;
}

void TrajectoryData::validate() const {
  if (dim < 1) throw std::invalid_argument("trajectory dimension must be >= 1");
  if (values.size() < 2 || gradients.size() != values.size())
    throw std::invalid_argument("trajectory needs N+1 values and gradients");
  if (x0.size() != static_cast<std::size_t>(dim) || xstar.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("trajectory point dimension mismatch");
  for (const auto& g : gradients)
    if (g.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("gradient dimension mismatch");
}

namespace {

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b, mpfr_prec_t prec) {
  Scalar s(prec);
  for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

}  // namespace

DualWeights assemble_weights(const Certificate& cert) {
  const long n = cert.params.n;
  for (const Scalar& x : cert.c)
    if (x.sign() < 0) throw std::runtime_error("negative star weight");
  for (const Scalar& x : cert.a)
    if (x.sign() < 0) throw std::runtime_error("negative forward weight");
  for (const Scalar& x : cert.b)
    if (x.sign() < 0) throw std::runtime_error("negative reversed weight");
  for (const Scalar& x : cert.d)
    if (x.sign() < 0) throw std::runtime_error("negative reduced coordinate");

  DualWeights w{n, cert.c, cert.a, cert.b, {}};
  for (long i = 0; i <= n - 2; ++i)
    for (long j = i + 2; j <= n; ++j)
      w.lambda_far.emplace(std::make_pair(i, j),
                           cert.d[static_cast<std::size_t>(i)] *
                               cert.c[static_cast<std::size_t>(j)]);
  return w;
}

Scalar CoefficientLedger::max_abs(mpfr_prec_t prec) const {
  Scalar m(prec);
  auto fold = [&m](const std::vector<Scalar>& v) {
    for (const Scalar& x : v) {
      Scalar ax = abs(x);
      if (ax > m) m = ax;
    }
  };
  fold(f_coeffs);
  fold(y_coeffs);
  fold(gram_fwd);
  fold(gram_rev);
  fold(gram_diag);
  for (const auto& [slot, x] : gram_far) {
    Scalar ax = abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

CoefficientLedger coefficient_ledger(const Certificate& cert) {
  const long n = cert.params.n;
  const mpfr_prec_t prec = cert.params.rho.precision();
  const Scalar& rho = cert.params.rho;
  const Scalar& al = cert.params.alpha;
  const Scalar& R = cert.params.big_r;
  const auto& d = cert.d;
  const auto& c = cert.c;
  const auto& a = cert.a;
  const auto& b = cert.b;
  const auto& eps = cert.residuals;

  std::vector<Scalar> D;  // prefix sums of d
  {
    Scalar run(prec);
    for (const Scalar& x : d) {
      run += x;
      D.push_back(run);
    }
  }
  std::vector<Scalar> C(static_cast<std::size_t>(n + 2), Scalar(prec));  // suffix sums of c
  for (long k = n; k >= 0; --k)
    C[static_cast<std::size_t>(k)] =
        C[static_cast<std::size_t>(k + 1)] + c[static_cast<std::size_t>(k)];
  auto P = [&](long m) { return m == 0 ? Scalar(1, prec) : 1 + D[static_cast<std::size_t>(m - 1)]; };

  CoefficientLedger ledger;

  // Function-value rows: outgoing weight minus incoming weight, minus the
  // recorded residual; the terminal row carries the extra +1.
  for (long i = 0; i <= n; ++i) {
    Scalar out(prec), in(prec);
    if (i <= n - 1) out += a[static_cast<std::size_t>(i)];
    if (i >= 1 && i <= n - 1) out += b[static_cast<std::size_t>(i - 1)];
    if (i <= n - 2) out += d[static_cast<std::size_t>(i)] * C[static_cast<std::size_t>(i + 2)];
    in += c[static_cast<std::size_t>(i)];
    if (i >= 1) in += a[static_cast<std::size_t>(i - 1)];
    if (i <= n - 2) in += b[static_cast<std::size_t>(i)];
    if (i >= 2) in += c[static_cast<std::size_t>(i)] * D[static_cast<std::size_t>(i - 2)];
    Scalar row = out - in;
    if (i <= n - 1)
      row -= eps[static_cast<std::size_t>(i)];
    else
      row += 1;
    ledger.f_coeffs.push_back(std::move(row));
  }

  // Star rows cancel the linear term coefficient by coefficient.
  for (long i = 0; i <= n; ++i)
    ledger.y_coeffs.push_back(c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)]);

  // Forward adjacent slots: the cleared rows of the a-recursion.
  for (long i = 0; i <= n - 3; ++i) {
    const Scalar& c1 = c[static_cast<std::size_t>(i + 1)];
    ledger.gram_fwd.push_back(al * a[static_cast<std::size_t>(i)] - c1 * c1 / R -
                              c[static_cast<std::size_t>(i)] * c1 / R +
                              a[static_cast<std::size_t>(i + 1)] + (1 + al) * c1 * P(i) +
                              d[static_cast<std::size_t>(i + 1)] * C[static_cast<std::size_t>(i + 3)] -
                              (2 * al - 1) * b[static_cast<std::size_t>(i + 1)]);
  }
  {
    const Scalar& cp = c[static_cast<std::size_t>(n - 1)];
    ledger.gram_fwd.push_back(al * a[static_cast<std::size_t>(n - 2)] - cp * cp / R -
                              c[static_cast<std::size_t>(n - 2)] * cp / R +
                              a[static_cast<std::size_t>(n - 1)] + (1 + al) * cp * P(n - 2));
    ledger.gram_fwd.push_back(a[static_cast<std::size_t>(n - 1)] +
                              c[static_cast<std::size_t>(n)] * P(n - 1) - 1);
  }

  // Reversed adjacent slots: the cleared rows of the b-recursion.
  for (long i = 0; i <= n - 3; ++i) {
    const Scalar& c1 = c[static_cast<std::size_t>(i + 1)];
    ledger.gram_rev.push_back(al * b[static_cast<std::size_t>(i)] - rho * c1 * c1 / R +
                              c[static_cast<std::size_t>(i)] * c1 / R +
                              rho * a[static_cast<std::size_t>(i + 1)] - c1 * P(i) +
                              rho * d[static_cast<std::size_t>(i + 1)] *
                                  C[static_cast<std::size_t>(i + 3)] -
                              rho * (2 * al - 1) * b[static_cast<std::size_t>(i + 1)]);
  }
  {
    const Scalar& cp = c[static_cast<std::size_t>(n - 1)];
    ledger.gram_rev.push_back(al * b[static_cast<std::size_t>(n - 2)] - rho * cp * cp / R +
                              c[static_cast<std::size_t>(n - 2)] * cp / R +
                              rho * a[static_cast<std::size_t>(n - 1)] - cp * P(n - 2));
  }

  // Diagonal slots: k = 0 is the eps_N definition row; the rest are halves
  // of the corresponding a-rows.
  {
    Scalar row = -c[0] - a[0] - d[0] * C[2] + (2 * al - 1) * b[0] + c[0] * c[0] / R -
                 eps[static_cast<std::size_t>(n)];
    ledger.gram_diag.push_back(row / 2);
  }
  for (long k = 1; k <= n - 2; ++k) {
    const Scalar& ck = c[static_cast<std::size_t>(k)];
    Scalar row = al * a[static_cast<std::size_t>(k - 1)] - ck * ck / R -
                 c[static_cast<std::size_t>(k - 1)] * ck / R + a[static_cast<std::size_t>(k)] +
                 (1 + al) * ck * P(k - 1) +
                 d[static_cast<std::size_t>(k)] * C[static_cast<std::size_t>(k + 2)] -
                 (2 * al - 1) * b[static_cast<std::size_t>(k)];
    ledger.gram_diag.push_back(row / 2);
  }
  {
    const Scalar& cp = c[static_cast<std::size_t>(n - 1)];
    Scalar pen = al * a[static_cast<std::size_t>(n - 2)] - cp * cp / R -
                 c[static_cast<std::size_t>(n - 2)] * cp / R + a[static_cast<std::size_t>(n - 1)] +
                 (1 + al) * cp * P(n - 2);
    ledger.gram_diag.push_back(pen / 2);
    Scalar term = a[static_cast<std::size_t>(n - 1)] + c[static_cast<std::size_t>(n)] * P(n - 1) - 1;
    ledger.gram_diag.push_back(term / 2);
  }

  // Nonadjacent slots carry exactly the stored product weights.
  DualWeights w = assemble_weights(cert);
  for (const auto& [slot, lambda] : w.lambda_far)
    ledger.gram_far.emplace(slot, lambda - d[static_cast<std::size_t>(slot.first)] *
                                               c[static_cast<std::size_t>(slot.second)]);
  return ledger;
}

bool ledger_families_exhaustive(long n) {
  // Gram slots touched by the weighted slacks and the bound side, as
  // unordered index pairs.  Every touched slot must be classified by exactly
  // one family: diagonal, adjacent, or nonadjacent-with-weight.
  std::set<std::pair<long, long>> touched;
  auto touch = [&touched](long p, long q) {
    touched.emplace(p < q ? p : q, p < q ? q : p);
  };
  for (long j = 0; j <= n; ++j) {  // star rows: trajectory + norm terms
    for (long l = 0; l < j; ++l) touch(j, l);
    touch(j, j);
  }
  for (long i = 0; i <= n - 1; ++i) {  // forward adjacent slacks
    touch(i + 1, i);
    touch(i, i);
    touch(i, i + 1);
    touch(i + 1, i + 1);
  }
  for (long i = 0; i <= n - 2; ++i) {  // reversed adjacent slacks
    touch(i, i);
    touch(i + 1, i + 1);
    touch(i + 1, i);
  }
  for (long i = 0; i <= n - 2; ++i)  // nonadjacent slacks
    for (long j = i + 2; j <= n; ++j) {
      for (long l = i; l < j; ++l) touch(j, l);
      touch(i, i);
      touch(i, j);
      touch(j, j);
    }
  for (long p = 0; p <= n; ++p)  // the quadratic term touches every pair
    for (long q = 0; q <= n; ++q) touch(p, q);

  for (const auto& [p, q] : touched) {
    int families = 0;
    if (p == q) ++families;                    // diagonal
    if (q == p + 1) ++families;                // adjacent
    if (q >= p + 2 && p <= n - 2) ++families;  // nonadjacent weighted slot
    if (families != 1) return false;
  }
  return true;
}

Scalar slack(long i, long j, const TrajectoryData& data) {
  data.validate();
  const long n = data.horizon();
  if (i == j) throw std::invalid_argument("slack requires distinct indices");
  auto in_range = [n](long k) { return k == star_index || (k >= 0 && k <= n); };
  if (!in_range(i) || !in_range(j)) throw std::invalid_argument("slack index out of range");
  const mpfr_prec_t prec = data.step.precision();

  const Scalar fi = i == star_index ? data.fstar : data.values[static_cast<std::size_t>(i)];
  const Scalar fj = j == star_index ? data.fstar : data.values[static_cast<std::size_t>(j)];
  const std::vector<Scalar> zero(static_cast<std::size_t>(data.dim), Scalar(prec));
  const std::vector<Scalar>& gi =
      i == star_index ? zero : data.gradients[static_cast<std::size_t>(i)];
  const std::vector<Scalar>& gj =
      j == star_index ? zero : data.gradients[static_cast<std::size_t>(j)];
  std::vector<Scalar> xi = data.point(i);
  std::vector<Scalar> xj = data.point(j);

  std::vector<Scalar> dx, dg;
  dx.reserve(xi.size());
  dg.reserve(xi.size());
  for (std::size_t t = 0; t < xi.size(); ++t) {
    dx.push_back(xi[t] - xj[t]);
    dg.push_back(gi[t] - gj[t]);
  }
  return fi - fj - dot(gj, dx, prec) - dot(dg, dg, prec) / 2;
}

namespace {

void require_step_matches(const Certificate& cert, const TrajectoryData& data) {
  // The identity presumes x_i = x_0 - alpha * H_i with the certificate's
  // own step.
  Scalar dev = abs(data.step - cert.params.alpha);
  if (!cert.cfg.within(dev, cert.params.alpha))
    throw std::invalid_argument("trajectory step does not match the certificate step");
}

}  // namespace

Scalar dual_identity_residual(const Certificate& cert, const TrajectoryData& data) {
  data.validate();
  require_step_matches(cert, data);
  const long n = cert.params.n;
  if (data.horizon() != n) throw std::invalid_argument("trajectory horizon mismatch");
  const mpfr_prec_t prec = cert.params.rho.precision();

  Scalar lhs(prec);
  for (long j = 0; j <= n; ++j) lhs += cert.c[static_cast<std::size_t>(j)] * slack(star_index, j, data);
  for (long i = 0; i <= n - 1; ++i) lhs += cert.a[static_cast<std::size_t>(i)] * slack(i, i + 1, data);
  for (long i = 0; i <= n - 2; ++i) lhs += cert.b[static_cast<std::size_t>(i)] * slack(i + 1, i, data);
  for (long i = 0; i <= n - 2; ++i)
    for (long j = i + 2; j <= n; ++j)
      lhs += cert.d[static_cast<std::size_t>(i)] * cert.c[static_cast<std::size_t>(j)] *
             slack(i, j, data);

  std::vector<Scalar> v(static_cast<std::size_t>(data.dim), Scalar(prec));
  for (long i = 0; i <= n; ++i)
    for (long t = 0; t < data.dim; ++t)
      v[static_cast<std::size_t>(t)] += cert.c[static_cast<std::size_t>(i)] *
                                        data.gradients[static_cast<std::size_t>(i)]
                                                      [static_cast<std::size_t>(t)];
  std::vector<Scalar> z;
  z.reserve(static_cast<std::size_t>(data.dim));
  for (long t = 0; t < data.dim; ++t)
    z.push_back(data.x0[static_cast<std::size_t>(t)] - data.xstar[static_cast<std::size_t>(t)]);

  Scalar rhs = data.fstar - data.values[static_cast<std::size_t>(n)] + dot(v, z, prec) -
               dot(v, v, prec) / (4 * cert.params.rate);
  for (long i = 0; i <= n - 1; ++i)
    rhs += cert.residuals[static_cast<std::size_t>(i)] *
           (data.values[static_cast<std::size_t>(i)] - data.fstar);
  rhs += cert.residuals[static_cast<std::size_t>(n)] / 2 *
         dot(data.gradients[0], data.gradients[0], prec);
  return lhs - rhs;
}

Scalar dual_identity_scale(const Certificate& cert, const TrajectoryData& data) {
  data.validate();
  const long n = cert.params.n;
  const mpfr_prec_t prec = cert.params.rho.precision();
  Scalar scale(1, prec);
  auto grow = [&scale](const Scalar& term) {
    Scalar at = abs(term);
    if (at > scale) scale = at;
  };
  for (long j = 0; j <= n; ++j) grow(cert.c[static_cast<std::size_t>(j)] * slack(star_index, j, data));
  for (long i = 0; i <= n - 1; ++i) grow(cert.a[static_cast<std::size_t>(i)] * slack(i, i + 1, data));
  for (long i = 0; i <= n - 2; ++i) grow(cert.b[static_cast<std::size_t>(i)] * slack(i + 1, i, data));
  for (long i = 0; i <= n - 2; ++i)
    for (long j = i + 2; j <= n; ++j)
      grow(cert.d[static_cast<std::size_t>(i)] * cert.c[static_cast<std::size_t>(j)] *
           slack(i, j, data));

  std::vector<Scalar> v(static_cast<std::size_t>(data.dim), Scalar(prec));
  for (long i = 0; i <= n; ++i)
    for (long t = 0; t < data.dim; ++t)
      v[static_cast<std::size_t>(t)] += cert.c[static_cast<std::size_t>(i)] *
                                        data.gradients[static_cast<std::size_t>(i)]
                                                      [static_cast<std::size_t>(t)];
  std::vector<Scalar> z;
  for (long t = 0; t < data.dim; ++t)
    z.push_back(data.x0[static_cast<std::size_t>(t)] - data.xstar[static_cast<std::size_t>(t)]);
  grow(data.fstar - data.values[static_cast<std::size_t>(n)]);
  grow(dot(v, z, prec));
  grow(dot(v, v, prec) / (4 * cert.params.rate));
  return scale;
}

RateVerdict rate_bound(const Certificate& cert, const TrajectoryData& data) {
  data.validate();
  const mpfr_prec_t prec = cert.params.rho.precision();
  Scalar z2(prec);
  for (long t = 0; t < data.dim; ++t) {
    Scalar diff = data.x0[static_cast<std::size_t>(t)] - data.xstar[static_cast<std::size_t>(t)];
    z2 += diff * diff;
  }
  Scalar gap = data.values.back() - data.fstar;
  Scalar bound = cert.params.rate * z2;
  Scalar margin = bound - gap;
  bool holds = gap <= bound + cert.cfg.tolerance();
  return RateVerdict{holds, std::move(gap), std::move(bound), std::move(margin)};
}

}  // namespace gswcert
