#include "qclab/u1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qclab/linalg.hpp"

namespace qclab {

double reduce_phase(double phi) {
  const double twopi = 2.0 * kPi;
  double r = std::fmod(phi, twopi);
  if (r < 0.0) r += twopi;
  return r;
}

double circle_dist(double phi, double psi) {
  const double half = 0.5 * std::remainder(phi - psi, 2.0 * kPi);
  return 2.0 * std::abs(std::sin(half));
}

std::optional<long long> u1_complexity(double phi, double alpha, double eps,
                                       long long n_max) {
  if (eps <= 0.0) throw Error("u1_complexity: eps must be positive");
  if (n_max < 0) throw Error("u1_complexity: n_max must be >= 0");
  if (circle_dist(phi, 0.0) < eps) return 0;
  for (long long k = 1; k <= n_max; ++k) {
    if (circle_dist(phi, static_cast<double>(k) * alpha) < eps) return k;
    if (circle_dist(phi, static_cast<double>(-k) * alpha) < eps) return -k;
  }
  return std::nullopt;
}

namespace {

struct Vec2 {
  double x, y;
};

double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double norm2(const Vec2& a) { return dot(a, a); }

}  // namespace

std::optional<long long> u1_oracle(double phi, double alpha, double eps, long long n_max) {
  if (eps <= 0.0) throw Error("u1_oracle: eps must be positive");
  if (n_max < 0) throw Error("u1_oracle: n_max must be >= 0");
  if (circle_dist(phi, 0.0) < eps) return 0;
  if (n_max == 0) return std::nullopt;

  // Half-width of the hit strip in units of one winding: the predicate
  // 2|sin(pi u)| < eps on the fractional part u is equivalent to
  // dist(u, Z) < asin(min(eps,2)/2)/pi.
  const double beta = alpha / (2.0 * kPi);
  const double gamma = phi / (2.0 * kPi);
  double t;
  if (eps >= 2.0) {
    t = 0.5;
  } else {
    t = std::asin(0.5 * eps) / kPi;
  }
  const double t_enum = t * (1.0 + 1e-9) + 1e-14;
  const double nscale = static_cast<double>(n_max);

  // Scale the lattice basis {(1, beta), (0, 1)} so the search box
  // |n| <= n_max, |n*beta - m - gamma| <= t_enum becomes a unit square.
  Vec2 b1{1.0 / nscale, beta / t_enum};
  Vec2 b2{0.0, 1.0 / t_enum};
  // Integer coordinates of the original basis inside the reduced one.
  long long m11 = 1, m12 = 0, m21 = 0, m22 = 1;  // reduced = M * original

  // Gauss reduction.
  for (int iter = 0; iter < 64; ++iter) {
    if (norm2(b1) > norm2(b2)) {
      std::swap(b1, b2);
      std::swap(m11, m21);
      std::swap(m12, m22);
    }
    const double mu = dot(b2, b1) / norm2(b1);
    const long long k = static_cast<long long>(std::llround(mu));
    if (k == 0) break;
    b2.x -= static_cast<double>(k) * b1.x;
    b2.y -= static_cast<double>(k) * b1.y;
    m21 -= k * m11;
    m22 -= k * m12;
  }

  // Enumerate lattice points a*b1 + c*b2 within radius R of the scaled
  // target point (0, gamma/t_enum); the box is contained in that ball.
  const Vec2 target{0.0, gamma / t_enum};
  const double r_ball = std::sqrt(2.0) * 1.01 + 1e-9;
  const double mu = dot(b2, b1) / norm2(b1);
  Vec2 b2perp{b2.x - mu * b1.x, b2.y - mu * b1.y};
  const double b2perp_norm = std::sqrt(norm2(b2perp));
  const double b1_norm = std::sqrt(norm2(b1));
  if (!(b2perp_norm > 0.0) || !(b1_norm > 0.0)) {
    throw Error("u1_oracle: degenerate lattice basis");
  }

  const double c_center = dot(target, b2perp) / norm2(b2perp);
  const double c_span = r_ball / b2perp_norm;
  std::optional<long long> best;
  auto consider = [&](long long n) {
    if (n == 0 || std::llabs(n) > n_max) return;
    if (circle_dist(phi, static_cast<double>(n) * alpha) >= eps) return;
    if (!best || std::llabs(n) < std::llabs(*best) ||
        (std::llabs(n) == std::llabs(*best) && n > *best)) {
      best = n;
    }
  };

  const long long c_lo = static_cast<long long>(std::floor(c_center - c_span));
  const long long c_hi = static_cast<long long>(std::ceil(c_center + c_span));
  for (long long c = c_lo; c <= c_hi; ++c) {
    const Vec2 rest{target.x - static_cast<double>(c) * b2.x,
                    target.y - static_cast<double>(c) * b2.y};
    const double a_center = dot(rest, b1) / norm2(b1);
    const double a_span = r_ball / b1_norm;
    const long long a_lo = static_cast<long long>(std::floor(a_center - a_span));
    const long long a_hi = static_cast<long long>(std::ceil(a_center + a_span));
    for (long long a = a_lo; a <= a_hi; ++a) {
      // Integer coordinates in the original basis give n directly.
      const long long n = a * m11 + c * m21;
      consider(n);
    }
  }
  return best;
}

ContinuedFraction continued_fraction(double x, int depth) {
  if (depth < 1) throw Error("continued_fraction: depth must be >= 1");
  if (!std::isfinite(x)) throw Error("continued_fraction: non-finite input");

  ContinuedFraction cf;
  cf.value = x;
  // p_{-1}/q_{-1} = 1/0, p_0/q_0 = a0/1.
  long long pm1 = 1, qm1 = 0, pm2 = 0, qm2 = 1;
  double rem = x;
  cf.truncated = true;  // cleared below when the expansion terminates exactly
  for (int k = 0; k < depth; ++k) {
    const double fl = std::floor(rem);
    if (fl < -9.0e17 || fl > 9.0e17) {
      break;  // partial quotient no longer representable
    }
    const long long a = static_cast<long long>(fl);
    long long p, q;
    if (__builtin_mul_overflow(a, pm1, &p) || __builtin_add_overflow(p, pm2, &p) ||
        __builtin_mul_overflow(a, qm1, &q) || __builtin_add_overflow(q, qm2, &q)) {
      break;  // convergents out of 64-bit range; stop cleanly
    }
    cf.partial_quotients.push_back(a);
    cf.convergents.push_back(Convergent{p, q});
    pm2 = pm1; qm2 = qm1;
    pm1 = p; qm1 = q;
    const double frac = rem - fl;
    // Precision floor: past ~1/ulp the reciprocal step is noise.
    if (frac < 1e-12) {
      cf.truncated = false;
      break;
    }
    if (static_cast<double>(qm1) > 1e15) {
      break;  // denominators beyond double significand resolution
    }
    rem = 1.0 / frac;
  }
  // Keep denominators strictly increasing: drop the integer seed a0/1 when
  // the next convergent has denominator 1 as well (a1 = 1), since the later
  // one is the better approximation.
  std::vector<Convergent> kept;
  for (const Convergent& c : cf.convergents) {
    while (!kept.empty() && kept.back().q == c.q) kept.pop_back();
    kept.push_back(c);
  }
  cf.convergents = std::move(kept);
  return cf;
}

U1Scan u1_scaling_scan(double phi, double alpha, const std::vector<double>& eps_grid,
                       long long n_max) {
  if (eps_grid.empty()) throw Error("u1_scaling_scan: empty eps grid");
  for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i) {
    if (eps_grid[i + 1] >= eps_grid[i]) {
      throw Error("u1_scaling_scan: eps grid must decrease strictly");
    }
  }
  if (eps_grid.back() <= 0.0) throw Error("u1_scaling_scan: eps must be positive");

  U1Scan out;
  out.eps = eps_grid;
  std::vector<double> xs, cs, logcs;
  const double beta = alpha / (2.0 * kPi);
  const double gamma = phi / (2.0 * kPi);
  std::set<long long> seen;
  std::vector<double> env_x, env_y;
  for (double eps : eps_grid) {
    const std::optional<long long> n = u1_complexity(phi, alpha, eps, n_max);
    out.minimizer.push_back(n);
    out.complexity.push_back(n ? std::optional<long long>(std::llabs(*n)) : std::nullopt);
    out.reference_line.push_back(std::log(1.0 / eps) / 3.0);
    if (!n) continue;
    xs.push_back(std::log(1.0 / eps));
    cs.push_back(static_cast<double>(std::llabs(*n)));
    logcs.push_back(std::log(static_cast<double>(std::max<long long>(std::llabs(*n), 1))));
    // Envelope points: one per distinct accepted minimizer, measured as the
    // homogeneous-form distance |gamma - n*beta - m| with the nearest m.
    if (*n != 0 && seen.insert(*n).second) {
      const double raw = gamma - static_cast<double>(*n) * beta;
      const double m = std::round(raw);
      const double resid = std::abs(raw - m);
      const double denom = static_cast<double>(std::llabs(*n)) + std::abs(m) + 1.0;
      if (resid > 0.0) {
        env_x.push_back(std::log(denom));
        env_y.push_back(std::log(resid));
      }
    }
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("u1_scaling_scan: fewer than 3 resolved points");
  }
  const LineFit against_logeps = fit_line(xs, cs);
  out.slope_vs_logeps = against_logeps.slope;
  const LineFit loglog = fit_line(xs, logcs);
  out.slope_loglog = loglog.slope;

  if (env_x.size() >= 2) {
    try {
      const LineFit env = fit_line(env_x, env_y);
      out.fitted_tau = -env.slope;
      // K is the largest constant with resid >= K/denom^tau across the data.
      double k = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < env_x.size(); ++i) {
        k = std::min(k, std::exp(env_y[i] + out.fitted_tau * env_x[i]));
      }
      out.fitted_k = k;
    } catch (const FitDegenerateError&) {
      // All accepted minimizers share one denominator scale; no envelope fit.
    }
  }
  return out;
}

}  // namespace qclab
