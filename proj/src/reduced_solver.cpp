#include "gswcert/reduced_solver.hpp"

#include <stdexcept>

#include "gswcert/rng.hpp"

namespace gswcert {

std::vector<Scalar> eval_reduced(const std::vector<Scalar>& d, const RootParams& params) {
  std::vector<Scalar> c = system_c(d, params);
  auto [a, b] = system_ab(d, c, params);
  std::vector<Scalar> eps = residuals(d, c, a, b, params);
  eps.resize(static_cast<std::size_t>(params.n - 1), Scalar(params.rho.precision()));
  return eps;
}

namespace {

Scalar max_norm(const std::vector<Scalar>& v, mpfr_prec_t prec) {
  Scalar m(prec);
  for (const Scalar& x : v) {
    Scalar ax = abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

// Clip to the simplex interior: coordinates at least mu, total mass at most
// 2N - mu (rescaling when exceeded).
void clip_interior(std::vector<Scalar>& d, long n, const Scalar& mu, mpfr_prec_t prec) {
  Scalar total(prec);
  for (Scalar& x : d) {
    if (x < mu) x = mu;
    total += x;
  }
  Scalar cap = Scalar(2 * n, prec) - mu;
  if (total > cap) {
    Scalar scale = cap / total;
    for (Scalar& x : d) x *= scale;
  }
}

// Gaussian elimination with partial pivoting; systems here are (N-1)x(N-1).
std::vector<Scalar> solve_linear(std::vector<std::vector<Scalar>> m, std::vector<Scalar> rhs,
                                 mpfr_prec_t prec) {
  const std::size_t k = rhs.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    Scalar best = abs(m[col][col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      Scalar cand = abs(m[r][col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best.is_zero()) throw arithmetic_error("singular Jacobian");
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      std::swap(rhs[pivot], rhs[col]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      Scalar factor = m[r][col] / m[col][col];
      for (std::size_t cc = col; cc < k; ++cc) m[r][cc] -= factor * m[col][cc];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Scalar> x(k, Scalar(prec));
  for (std::size_t row = k; row-- > 0;) {
    Scalar acc = rhs[row];
    for (std::size_t cc = row + 1; cc < k; ++cc) acc -= m[row][cc] * x[cc];
    x[row] = acc / m[row][row];
  }
  return x;
}

SolveReport run_newton(std::vector<Scalar> d, const RootParams& params,
                       const PrecisionConfig& cfg) {
  const long n = params.n;
  const mpfr_prec_t prec = cfg.precision_bits;
  const std::size_t k = static_cast<std::size_t>(n - 1);
  const Scalar mu = Scalar::pow2(-cfg.tolerance_exponent / 2, prec);
  const Scalar target = cfg.tolerance() * params.big_r;
  const Scalar h = Scalar::pow2(-static_cast<long>(cfg.precision_bits / 3), prec);

  clip_interior(d, n, mu, prec);
  std::vector<Scalar> f = eval_reduced(d, params);
  Scalar norm = max_norm(f, prec);
  long iters = 0;

  for (; iters < 80; ++iters) {
    if (norm <= target)
      return SolveReport{std::move(d), iters, std::move(norm), SolveMethod::damped_newton, true,
                         "converged"};

    std::vector<std::vector<Scalar>> jac(k, std::vector<Scalar>(k, Scalar(prec)));
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Scalar> dp = d, dm = d;
      dp[j] += h;
      dm[j] -= h;
      std::vector<Scalar> fp = eval_reduced(dp, params);
      std::vector<Scalar> fm = eval_reduced(dm, params);
      for (std::size_t r = 0; r < k; ++r) jac[r][j] = (fp[r] - fm[r]) / (2 * h);
    }
    std::vector<Scalar> neg_f;
    neg_f.reserve(k);
    for (const Scalar& x : f) neg_f.push_back(-x);
    std::vector<Scalar> step = solve_linear(std::move(jac), std::move(neg_f), prec);

    // Backtracking on the residual max-norm.
    Scalar lambda(1, prec);
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<Scalar> trial = d;
      for (std::size_t j = 0; j < k; ++j) trial[j] += lambda * step[j];
      clip_interior(trial, n, mu, prec);
      std::vector<Scalar> ft = eval_reduced(trial, params);
      Scalar nt = max_norm(ft, prec);
      if (nt < norm || nt <= target) {
        d = std::move(trial);
        f = std::move(ft);
        norm = std::move(nt);
        accepted = true;
        break;
      }
      lambda /= 2;
    }
    if (!accepted)
      return SolveReport{std::move(d), iters, std::move(norm), SolveMethod::damped_newton, false,
                         "line search stalled"};
  }
  bool ok = norm <= target;
  return SolveReport{std::move(d), iters, std::move(norm), SolveMethod::damped_newton, ok,
                     ok ? "converged" : "iteration cap reached"};
}

SolveReport run_fixed_point(std::vector<Scalar> d, const RootParams& params,
                            const PrecisionConfig& cfg) {
  const long n = params.n;
  const mpfr_prec_t prec = cfg.precision_bits;
  const Scalar mu = Scalar::pow2(-cfg.tolerance_exponent / 2, prec);
  const Scalar target = cfg.tolerance() * params.big_r;

  clip_interior(d, n, mu, prec);
  std::vector<Scalar> f = eval_reduced(d, params);
  Scalar norm = max_norm(f, prec);
  if (norm.is_zero())
    return SolveReport{std::move(d), 0, std::move(norm), SolveMethod::damped_fixed_point, true,
                       "converged"};
  Scalar lambda = 1 / (Scalar(n, prec) * norm);

  long iters = 0;
  for (; iters < 20000; ++iters) {
    if (norm <= target)
      return SolveReport{std::move(d), iters, std::move(norm), SolveMethod::damped_fixed_point,
                         true, "converged"};
    std::vector<Scalar> trial = d;
    for (std::size_t j = 0; j < trial.size(); ++j) trial[j] -= lambda * f[j];
    clip_interior(trial, n, mu, prec);
    std::vector<Scalar> ft = eval_reduced(trial, params);
    Scalar nt = max_norm(ft, prec);
    if (nt > norm) {
      lambda /= 2;  // overshoot
      if (lambda.is_zero()) break;
      continue;
    }
    d = std::move(trial);
    f = std::move(ft);
    norm = std::move(nt);
  }
  bool ok = norm <= target;
  return SolveReport{std::move(d), iters, std::move(norm), SolveMethod::damped_fixed_point, ok,
                     ok ? "converged" : "fixed-point iteration exhausted"};
}

}  // namespace

SolveReport solve_reduced(long n, const PrecisionConfig& cfg,
                          const std::optional<SimplexPoint>& start) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  RootParams params = solve_root(n, cfg);
  const mpfr_prec_t prec = cfg.precision_bits;

  std::vector<Scalar> d0;
  if (start.has_value()) {
    if (start->n != n || start->d.size() != static_cast<std::size_t>(n - 1))
      throw std::invalid_argument("start point has wrong horizon");
    d0 = start->d;
  } else {
    d0.assign(static_cast<std::size_t>(n - 1), Scalar::ratio(n, n - 1, prec));
  }

  SolveReport report = run_newton(d0, params, cfg);
  if (report.converged) return report;
  SolveReport fallback = run_fixed_point(std::move(d0), params, cfg);
  return fallback.converged ? std::move(fallback) : std::move(report);
}

FaceScanReport face_sign_scan(long n, long samples, std::uint64_t seed,
                              const PrecisionConfig& cfg) {
  if (n < 3) throw std::invalid_argument("horizon below 3");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  RootParams params = solve_root(n, cfg);
  const mpfr_prec_t prec = cfg.precision_bits;
  const Scalar& rho = params.rho;
  const Scalar& big_r = params.big_r;
  const Scalar first_face_cap = -(2 + rho) / 2;   // eps_0 / R bound on d_0 = 0
  const Scalar middle_face_cap = -(1 + rho);      // eps_i / (R p^2) bound

  FaceScanReport report{n, samples, seed, 0, {}};
  auto record = [&](long face, long sample, const std::vector<Scalar>& d) {
    ++report.violations;
    if (report.details.size() < 8) {
      std::vector<double> w;
      w.reserve(d.size());
      for (const Scalar& x : d) w.push_back(x.to_double());
      report.details.push_back(FaceViolation{face, sample, std::move(w)});
    }
  };

  // Coordinate faces d_face = 0: the remaining mass plus slack is a
  // Dirichlet(1,...,1) draw scaled to 2N (uniform over the solid section).
  for (long face = 0; face <= n - 2; ++face) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(face + 1)));
    for (long s = 0; s < samples; ++s) {
      std::vector<Scalar> draws;
      draws.reserve(static_cast<std::size_t>(n - 1));
      Scalar total(prec);
      for (long j = 0; j < n - 1; ++j) {  // n-2 free coordinates + slack
        draws.push_back(rng.exponential(cfg));
        total += draws.back();
      }
      std::vector<Scalar> d;
      d.reserve(static_cast<std::size_t>(n - 1));
      std::size_t next = 0;
      for (long j = 0; j <= n - 2; ++j) {
        if (j == face)
          d.push_back(Scalar(prec));
        else
          d.push_back(2 * n * draws[next++] / total);
      }
      std::vector<Scalar> eps = eval_reduced(d, params);
      const Scalar& target = eps[static_cast<std::size_t>(face)];
      bool bad = !(target < 0);
      if (face == 0) {
        if (!(target / big_r <= first_face_cap)) bad = true;
      } else {
        // p = P_face = P_{face+1} on this face
        Scalar p(1, prec);
        for (long j = 0; j < face; ++j) p += d[static_cast<std::size_t>(j)];
        if (!(target / (big_r * p * p) <= middle_face_cap)) bad = true;
      }
      if (bad) record(face, s, d);
    }
  }

  // Outer face: mass exactly 2N.
  {
    Rng rng(seed ^ 0xd1b54a32d192ed03ULL);
    for (long s = 0; s < samples; ++s) {
      std::vector<Scalar> draws;
      draws.reserve(static_cast<std::size_t>(n - 1));
      Scalar total(prec);
      for (long j = 0; j <= n - 2; ++j) {
        draws.push_back(rng.exponential(cfg));
        total += draws.back();
      }
      std::vector<Scalar> d;
      d.reserve(draws.size());
      for (const Scalar& e : draws) d.push_back(2 * n * e / total);
      std::vector<Scalar> eps = eval_reduced(d, params);
      Scalar sum(prec);
      for (const Scalar& e : eps) sum += e;
      if (!(sum > 0)) record(-1, s, d);
    }
  }
  return report;
}

}  // namespace gswcert
