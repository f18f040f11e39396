#include "qclab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

namespace qclab {

namespace {

// Indices (a, b) of easy directions whose bracket is supported on `dir`,
// giving the plane of the closed-loop candidate paths.
std::optional<std::pair<int, int>> loop_plane(const PenaltyMetric& m,
                                              const PauliString& dir) {
  for (std::size_t a = 0; a < m.basis.size(); ++a) {
    if (!m.is_easy[a]) continue;
    for (std::size_t b = 0; b < m.basis.size(); ++b) {
      if (!m.is_easy[b] || a == b) continue;
      const auto r = pauli_commutator(m.basis[a], m.basis[b]);
      if (r && *r == dir) {
        return std::make_pair(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return std::nullopt;
}

// One turn of a circle in the (a, b) control plane, amplitude amp, sampled
// at segment midpoints; the enclosed area makes the endpoint a rotation
// about the bracket direction at second order.
ControlPath loop_path(int segments, int nd, int a, int b, double amp, double sign) {
  ControlPath p;
  p.coeffs = Eigen::MatrixXd::Zero(segments, nd);
  for (int k = 0; k < segments; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(segments);
    p.coeffs(k, a) = -amp * std::sin(2.0 * kPi * t);
    p.coeffs(k, b) = sign * amp * std::cos(2.0 * kPi * t);
  }
  return p;
}

ControlPath scaled_path(const ControlPath& p, double factor) {
  ControlPath out;
  out.coeffs = p.coeffs * factor;
  return out;
}

}  // namespace

HolderResult holder_experiment(const PenaltyMetric& m, const PauliString& direction,
                               std::vector<double> deltas, const SolverConfig& cfg) {
  if (deltas.size() < 3) {
    throw InsufficientDataError("holder_experiment: need at least three deltas");
  }
  for (double d : deltas) {
    if (!(d > 0.0)) throw Error("holder_experiment: deltas must be positive");
  }
  std::sort(deltas.begin(), deltas.end(), std::greater<>());

  const int dim = 1 << m.n_qubits;
  const Mat id = Mat::Identity(dim, dim);
  const Mat dir_dense = direction.dense();
  const auto plane = loop_plane(m, direction);

  HolderResult out;
  std::optional<ControlPath> warm;
  double warm_delta = 0.0;
  std::vector<double> xs, ys;
  for (double delta : deltas) {
    const Mat target = mat_exp(dir_dense, delta);
    SolverConfig c = cfg;
    c.seed = cfg.seed ^ std::bit_cast<std::uint64_t>(delta);
    c.extra_inits.clear();
    if (warm) {
      c.extra_inits.push_back(scaled_path(*warm, std::sqrt(delta / warm_delta)));
    }
    if (plane) {
      const double amp = std::sqrt(2.0 * kPi * delta);
      c.extra_inits.push_back(
          loop_path(c.segments, m.n_dirs(), plane->first, plane->second, amp, 1.0));
      c.extra_inits.push_back(
          loop_path(c.segments, m.n_dirs(), plane->first, plane->second, amp, -1.0));
    }
    const DistanceEstimate est = solve_bvp(id, target, m, c);
    out.points.push_back(HolderPoint{delta, est.value, est.endpoint_error,
                                     est.multistart_spread, est.converged});
    if (est.converged) {
      warm = est.path;
      warm_delta = delta;
      xs.push_back(std::log(delta));
      ys.push_back(std::log(est.value));
      ++out.n_converged;
    }
  }
  if (out.n_converged < 3) {
    throw NoConvergenceError("holder_experiment: fewer than three converged points");
  }
  const LineFit fit = fit_line(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.slope_stderr = fit.slope_stderr;
  return out;
}

CutlocusResult cutlocus_experiment(const std::vector<double>& qs,
                                   const SolverConfig& cfg, const CutlocusOptions& opts) {
  if (qs.empty()) throw Error("cutlocus_experiment: empty q list");
  for (double q : qs) {
    if (!(q > 1.0)) throw Error("cutlocus_experiment: q must exceed 1");
  }

  // Single-qubit model: Y and Z easy, X carries the penalty.
  const Distribution easy = explicit_distribution(
      1, {PauliString::from_letters("Y"), PauliString::from_letters("Z")});
  const PauliString dir_x = PauliString::from_letters("X");
  const Mat dir_dense = dir_x.dense();
  const Mat id = Mat::Identity(2, 2);

  CutlocusResult out;
  std::vector<double> xs, ys;
  for (double q : qs) {
    const PenaltyMetric metric = PenaltyMetric::make(1, q, easy);
    const auto plane = loop_plane(metric, dir_x);
    std::optional<ControlPath> warm;
    double warm_delta = 0.0;

    auto ratio_at = [&](double delta) {
      const Mat target = mat_exp(dir_dense, delta);
      SolverConfig c = cfg;
      c.seed = cfg.seed ^ std::bit_cast<std::uint64_t>(delta * q);
      c.extra_inits.clear();
      // Direct path: constant control along X reaches the target exactly.
      ControlPath direct;
      direct.coeffs = Eigen::MatrixXd::Zero(c.segments, metric.n_dirs());
      for (int k = 0; k < c.segments; ++k) {
        for (int a = 0; a < metric.n_dirs(); ++a) {
          if (metric.basis[static_cast<std::size_t>(a)] == dir_x) {
            direct.coeffs(k, a) = delta;
          }
        }
      }
      c.extra_inits.push_back(direct);
      if (warm) {
        c.extra_inits.push_back(scaled_path(*warm, std::sqrt(delta / warm_delta)));
      }
      if (plane) {
        const double amp = std::sqrt(2.0 * kPi * delta);
        c.extra_inits.push_back(
            loop_path(c.segments, metric.n_dirs(), plane->first, plane->second, amp, 1.0));
        c.extra_inits.push_back(loop_path(c.segments, metric.n_dirs(), plane->first,
                                          plane->second, amp, -1.0));
      }
      const DistanceEstimate est = solve_bvp(id, target, metric, c);
      if (est.converged) {
        warm = est.path;
        warm_delta = delta;
      }
      const double direct_cost = std::sqrt(q) * delta;
      return std::make_pair(est.converged ? est.value / direct_cost : 1.0, est.value);
    };

    // Doubling ladder up from delta_floor until the ratio drops under the
    // threshold, then log-space bisection inside the bracket.  The last rung
    // is clamped to delta_cap so a crossover just under the cap still
    // brackets.
    std::vector<std::pair<double, double>> scan;
    double lo = opts.delta_floor_scale / q;
    double hi = 0.0;
    double hi_dist = 0.0;
    bool bracketed = false;
    double delta = lo;
    while (true) {
      const auto [r, dist] = ratio_at(delta);
      scan.push_back({delta, r});
      if (r < opts.ratio_threshold) {
        hi = delta;
        hi_dist = dist;
        bracketed = true;
        break;
      }
      lo = delta;
      if (delta >= opts.delta_cap) break;
      delta = std::min(delta * 2.0, opts.delta_cap);
    }
    out.scans.push_back(scan);
    if (!bracketed) {
      out.points.push_back(CutlocusPoint{q, 0.0, 0.0, false});
      continue;
    }
    double cross_dist = hi_dist;
    for (int it = 0; it < opts.bisection_steps; ++it) {
      const double mid = std::sqrt(lo * hi);
      const auto [r, dist] = ratio_at(mid);
      if (r < opts.ratio_threshold) {
        hi = mid;
        cross_dist = dist;
      } else {
        lo = mid;
      }
    }
    const double delta_star = std::sqrt(lo * hi);
    out.points.push_back(CutlocusPoint{q, delta_star, cross_dist, true});
    xs.push_back(std::log(q));
    ys.push_back(std::log(delta_star));
  }
  if (xs.size() < 2) {
    throw BracketError("cutlocus_experiment: too few bracketed q values to fit");
  }
  const LineFit fit = fit_line(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  return out;
}

std::pair<long long, long long> best_rational(double x, long long max_den) {
  if (max_den < 1) throw Error("best_rational: max_den must be >= 1");
  // Convergent walk; the last convergent with denominator within range is
  // the best approximation of that denominator bound.
  long long pm1 = 1, qm1 = 0;
  long long p0 = static_cast<long long>(std::floor(x)), q0 = 1;
  double rem = x - std::floor(x);
  long long best_p = p0, best_q = q0;
  for (int it = 0; it < 64 && rem > 1e-15; ++it) {
    rem = 1.0 / rem;
    const double fl = std::floor(rem);
    if (fl > 9.0e17) break;
    const long long a = static_cast<long long>(fl);
    long long p, q;
    if (__builtin_mul_overflow(a, p0, &p) || __builtin_add_overflow(p, pm1, &p) ||
        __builtin_mul_overflow(a, q0, &q) || __builtin_add_overflow(q, qm1, &q)) {
      break;
    }
    if (q > max_den) break;
    pm1 = p0; qm1 = q0;
    p0 = p; q0 = q;
    best_p = p; best_q = q;
    rem -= fl;
  }
  return {best_p, best_q};
}

Mat rationalize_su2(const Mat& u, long long max_den) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw DimensionError("rationalize_su2: expected a 2x2 matrix");
  }
  const auto [ar, arq] = best_rational(u(0, 0).real(), max_den);
  const auto [ai, aiq] = best_rational(u(0, 0).imag(), max_den);
  const auto [br, brq] = best_rational(u(0, 1).real(), max_den);
  const auto [bi, biq] = best_rational(u(0, 1).imag(), max_den);
  const cplx a(static_cast<double>(ar) / static_cast<double>(arq),
               static_cast<double>(ai) / static_cast<double>(aiq));
  const cplx b(static_cast<double>(br) / static_cast<double>(brq),
               static_cast<double>(bi) / static_cast<double>(biq));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  if (!(norm > 0.0)) throw Error("rationalize_su2: degenerate rounding");
  Mat out(2, 2);
  out << a / norm, b / norm, -std::conj(b) / norm, std::conj(a) / norm;
  return out;
}

}  // namespace qclab
