#include "qclab/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "qclab/rng.hpp"

namespace qclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Divided differences (f(a) - f(b)) / (a - b) for f(x) = exp(-i dt x), with
// the limit f'(a) on near-degenerate pairs.
Mat phase_divided_differences(const Eigen::VectorXd& lam, double dt) {
  const Eigen::Index d = lam.size();
  Mat gamma(d, d);
  const cplx mi(0.0, -1.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    const cplx fi = std::exp(mi * dt * lam(i));
    for (Eigen::Index j = 0; j < d; ++j) {
      const double diff = lam(i) - lam(j);
      if (std::abs(diff) < 1e-9) {
        gamma(i, j) = mi * dt * fi;
      } else {
        const cplx fj = std::exp(mi * dt * lam(j));
        gamma(i, j) = (fi - fj) / diff;
      }
    }
  }
  return gamma;
}

}  // namespace

ObjectiveEval bvp_objective(const ControlPath& p, const PenaltyMetric& m, const Mat& u,
                            const Mat& v, double mu) {
  const int dim = 1 << m.n_qubits;
  if (u.rows() != dim || v.rows() != dim) {
    throw DimensionError("bvp_objective: endpoint dimension mismatch");
  }
  const int segs = p.segments();
  const int nd = m.n_dirs();
  if (p.coeffs.cols() != nd) throw DimensionError("bvp_objective: coefficient mismatch");
  const double dt = 1.0 / static_cast<double>(segs);

  // Forward pass: per-segment eigensystems, propagators, prefix products.
  std::vector<Eigen::VectorXd> lams(static_cast<std::size_t>(segs));
  std::vector<Mat> qs(static_cast<std::size_t>(segs));
  std::vector<Mat> props(static_cast<std::size_t>(segs));
  std::vector<Mat> pref(static_cast<std::size_t>(segs) + 1);
  pref[0] = u;
  for (int k = 0; k < segs; ++k) {
    const Mat hk = assemble_hamiltonian(p.coeffs.row(k).transpose(), m);
    Eigen::SelfAdjointEigenSolver<Mat> es(hk);
    lams[static_cast<std::size_t>(k)] = es.eigenvalues();
    qs[static_cast<std::size_t>(k)] = es.eigenvectors();
    Eigen::VectorXcd ph(dim);
    for (int j = 0; j < dim; ++j) {
      ph(j) = std::exp(cplx(0.0, -es.eigenvalues()(j) * dt));
    }
    props[static_cast<std::size_t>(k)] =
        es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    pref[static_cast<std::size_t>(k) + 1] =
        props[static_cast<std::size_t>(k)] * pref[static_cast<std::size_t>(k)];
  }
  const Mat& endpoint = pref[static_cast<std::size_t>(segs)];
  const double endpoint_err = (endpoint - v).norm();

  ObjectiveEval out;
  out.endpoint_err = endpoint_err;

  // Energy and its gradient.
  out.grad = Eigen::MatrixXd::Zero(segs, nd);
  double energy = 0.0;
  for (int k = 0; k < segs; ++k) {
    for (int a = 0; a < nd; ++a) {
      const double w = m.weight[static_cast<std::size_t>(a)];
      const double h = p.coeffs(k, a);
      if (!m.is_easy[static_cast<std::size_t>(a)] && m.horizontal_only()) {
        if (std::abs(h) > 1e-12) {
          throw HorizontalityViolationError("bvp_objective: hard coordinate active");
        }
        continue;
      }
      energy += dt * w * h * h;
      out.grad(k, a) = 2.0 * dt * w * h;
    }
  }
  out.energy = energy;
  out.value = energy + mu * endpoint_err * endpoint_err;

  // Endpoint penalty gradient: splitting the product around segment k as
  // endpoint = S_k E_k R_k with R_k = pref[k] and S_k = sufs[k+1], the
  // derivative against coefficient (k, a) is -2 mu Re tr(W_k dE_k/dh) with
  // window W_k = R_k V^dag S_k, evaluated in segment k's eigenbasis.
  std::vector<Mat> sufs(static_cast<std::size_t>(segs) + 1);
  sufs[static_cast<std::size_t>(segs)] = Mat::Identity(dim, dim);
  for (int k = segs - 1; k >= 0; --k) {
    sufs[static_cast<std::size_t>(k)] =
        sufs[static_cast<std::size_t>(k) + 1] * props[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < segs; ++k) {
    const std::size_t sk = static_cast<std::size_t>(k);
    const Mat wk = pref[sk] * v.adjoint() * sufs[sk + 1];
    const Mat& q = qs[sk];
    const Mat b = q.adjoint() * wk * q;
    const Mat gamma = phase_divided_differences(lams[sk], dt);
    for (int a = 0; a < nd; ++a) {
      if (!m.is_easy[static_cast<std::size_t>(a)] && m.horizontal_only()) continue;
      const Mat pa = q.adjoint() * m.dense_basis[static_cast<std::size_t>(a)] * q;
      // tr(W D) with D = Q (gamma o (Q^dag P Q)) Q^dag reduces to an
      // elementwise sum in the eigenbasis.
      cplx tr(0.0, 0.0);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          tr += b(j, i) * gamma(i, j) * pa(i, j);
        }
      }
      out.grad(k, a) += -2.0 * mu * tr.real();
    }
  }
  return out;
}

namespace {

// Flatten easy (or all) coordinates into the optimization vector.
struct VarMap {
  std::vector<int> dirs;  // basis indices that are variables
  int segs = 0;

  Eigen::VectorXd pack(const Eigen::MatrixXd& coeffs) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(segs) * static_cast<Eigen::Index>(dirs.size()));
    Eigen::Index i = 0;
    for (int k = 0; k < segs; ++k) {
      for (int a : dirs) x(i++) = coeffs(k, a);
    }
    return x;
  }

  Eigen::MatrixXd unpack(const Eigen::VectorXd& x, int nd) const {
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(segs, nd);
    Eigen::Index i = 0;
    for (int k = 0; k < segs; ++k) {
      for (int a : dirs) coeffs(k, a) = x(i++);
    }
    return coeffs;
  }
};

struct StageResult {
  Eigen::VectorXd x;
  double endpoint_err = kInf;
  double energy = kInf;
};

// L-BFGS with Armijo backtracking on one penalty stage.
StageResult minimize_stage(const VarMap& vm, const PenaltyMetric& m, const Mat& u,
                           const Mat& v, double mu, Eigen::VectorXd x, int max_iters) {
  const int nd = m.n_dirs();
  auto eval = [&](const Eigen::VectorXd& xx) {
    ControlPath p{vm.unpack(xx, nd)};
    ObjectiveEval e = bvp_objective(p, m, u, v, mu);
    Eigen::VectorXd g(xx.size());
    Eigen::Index i = 0;
    for (int k = 0; k < vm.segs; ++k) {
      for (int a : vm.dirs) g(i++) = e.grad(k, a);
    }
    return std::tuple<double, Eigen::VectorXd, ObjectiveEval>(e.value, std::move(g),
                                                              std::move(e));
  };

  auto [f, g, ev] = eval(x);
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  const int hist_cap = 10;

  for (int iter = 0; iter < max_iters; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() < 1e-10 * std::max(1.0, std::abs(f))) break;

    // Two-loop recursion.
    Eigen::VectorXd q = g;
    std::vector<double> alphas(s_hist.size());
    for (int h = static_cast<int>(s_hist.size()) - 1; h >= 0; --h) {
      const std::size_t sh = static_cast<std::size_t>(h);
      alphas[sh] = rho_hist[sh] * s_hist[sh].dot(q);
      q -= alphas[sh] * y_hist[sh];
    }
    double h0 = 1.0;
    if (!s_hist.empty()) {
      const double yy = y_hist.back().squaredNorm();
      if (yy > 0.0) h0 = s_hist.back().dot(y_hist.back()) / yy;
      h0 = std::clamp(h0, 1e-8, 1e8);
    }
    Eigen::VectorXd z = h0 * q;
    for (std::size_t h = 0; h < s_hist.size(); ++h) {
      const double beta = rho_hist[h] * y_hist[h].dot(z);
      z += (alphas[h] - beta) * s_hist[h];
    }
    Eigen::VectorXd dir = -z;
    double gd = g.dot(dir);
    if (gd >= 0.0) {  // not a descent direction; fall back to steepest descent
      dir = -g;
      gd = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    double alpha = 1.0;
    bool accepted = false;
    double f_new = f;
    Eigen::VectorXd x_new, g_new;
    ObjectiveEval ev_new;
    for (int bt = 0; bt < 40; ++bt) {
      x_new = x + alpha * dir;
      auto [ft, gt, et] = eval(x_new);
      if (ft <= f + 1e-4 * alpha * gd) {
        f_new = ft;
        g_new = std::move(gt);
        ev_new = std::move(et);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // line search stalled: local flatness at this mu

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > hist_cap) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double rel_drop = (f - f_new) / std::max(1.0, std::abs(f));
    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
    ev = std::move(ev_new);
    if (rel_drop < 1e-14 && iter > 4) break;
  }

  StageResult out;
  out.x = std::move(x);
  out.endpoint_err = ev.endpoint_err;
  out.energy = ev.energy;
  return out;
}

struct StartOutcome {
  bool converged = false;
  double length = kInf;
  double energy = kInf;
  double endpoint_err = kInf;
  ControlPath path;
};

StartOutcome run_one_start(const VarMap& vm, const PenaltyMetric& m, const Mat& u,
                           const Mat& v, const SolverConfig& cfg, Eigen::VectorXd x0) {
  const int nd = m.n_dirs();
  // Scale the first penalty weight so that collapsing the initial path to
  // zero controls (saving its whole energy) costs more through the endpoint
  // term than it saves; h = 0 is a critical point of the penalized
  // objective in horizontal mode and underweighted penalties fall into it.
  const ObjectiveEval e0 = bvp_objective(ControlPath{vm.unpack(x0, nd)}, m, u, v, 0.0);
  const double zero_err = (u - v).norm();
  double mu = std::max(10.0, 4.0 * std::max(e0.energy, 1e-3) /
                                 std::max(zero_err * zero_err, 1e-12));
  mu = std::min(mu, 1e12);

  Eigen::VectorXd x = std::move(x0);
  StageResult stage;
  for (int s = 0; s < cfg.penalty_stages; ++s) {
    stage = minimize_stage(vm, m, u, v, mu, x, cfg.max_iterations);
    x = stage.x;
    if (stage.endpoint_err < cfg.endpoint_tol) break;
    mu *= 10.0;
  }

  StartOutcome out;
  ControlPath p{vm.unpack(x, nd)};
  const PathCost cost = path_cost(p, m);
  out.length = cost.length;
  out.energy = cost.energy;
  out.endpoint_err = stage.endpoint_err;
  out.converged = stage.endpoint_err < cfg.endpoint_tol;
  out.path = std::move(p);
  return out;
}

}  // namespace

DistanceEstimate solve_bvp(const Mat& u, const Mat& v, const PenaltyMetric& m,
                           const SolverConfig& cfg) {
  if (m.n_qubits > 2) {
    throw DimensionCapError("solve_bvp: dense solves capped at 2 qubits");
  }
  if (cfg.segments < 1) throw Error("solve_bvp: need at least one segment");
  if (cfg.multistarts < 1) throw Error("solve_bvp: need at least one start");
  require_unitary(u, 1e-8);
  require_unitary(v, 1e-8);

  VarMap vm;
  vm.segs = cfg.segments;
  for (int a = 0; a < m.n_dirs(); ++a) {
    if (m.is_easy[static_cast<std::size_t>(a)] || !m.horizontal_only()) {
      vm.dirs.push_back(a);
    }
  }
  const int nvars = cfg.segments * static_cast<int>(vm.dirs.size());
  const int dim = 1 << m.n_qubits;

  Rng rng(cfg.seed);
  std::vector<Eigen::VectorXd> starts;

  // Informed starts first (warm chains, loop candidates from experiments).
  for (const ControlPath& p : cfg.extra_inits) {
    if (p.coeffs.rows() != cfg.segments || p.coeffs.cols() != m.n_dirs()) {
      throw DimensionError("solve_bvp: extra init has wrong shape");
    }
    starts.push_back(vm.pack(p.coeffs));
  }

  // Straight-line start: constant controls along the minimal logarithm of
  // the relative rotation, projected onto the variable directions (exact for
  // q = 1, an informed guess otherwise).  The zero-sum phase lift keeps the
  // projection onto the traceless basis faithful even when the principal
  // phases sum to a nonzero multiple of 2*pi.  Skipped for det != 1, which
  // no traceless Hamiltonian can reach anyway.
  const double nrm = 1.0 / static_cast<double>(dim);
  const Mat rel = v * u.adjoint();
  if (is_special_unitary(rel, 1e-8)) {
    const Mat l = minimal_log(rel);
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(cfg.segments, m.n_dirs());
    for (int a = 0; a < m.n_dirs(); ++a) {
      const Mat& pa = m.dense_basis[static_cast<std::size_t>(a)];
      const double ha = -((pa * l).trace().real()) * nrm;
      for (int k = 0; k < cfg.segments; ++k) coeffs(k, a) = ha;
    }
    Eigen::VectorXd x = vm.pack(coeffs);
    starts.push_back(x);
    Eigen::VectorXd xj = x;
    const double jit = 0.004 * std::max(x.norm() / std::sqrt(std::max(nvars, 1)), 0.01);
    Rng jrng = rng.fork(101);
    for (Eigen::Index i = 0; i < xj.size(); ++i) xj(i) += jit * jrng.next_gauss();
    starts.push_back(xj);
  }

  // Near-zero start: pure jitter breaks the zero-control critical point.
  {
    Eigen::VectorXd xz(nvars);
    Rng zrng = rng.fork(202);
    const double sigma = 0.01 * std::max(cfg.init_sigma, 1e-3);
    for (Eigen::Index i = 0; i < xz.size(); ++i) xz(i) = sigma * zrng.next_gauss();
    starts.push_back(xz);
  }

  // Seeded Gaussian draws fill the remaining start budget.
  int draw = 0;
  while (static_cast<int>(starts.size()) < cfg.multistarts) {
    Rng grng = rng.fork(1000 + static_cast<std::uint64_t>(draw));
    Eigen::VectorXd xg(nvars);
    for (Eigen::Index i = 0; i < xg.size(); ++i) {
      xg(i) = cfg.init_sigma * grng.next_gauss();
    }
    starts.push_back(xg);
    ++draw;
  }

  DistanceEstimate best;
  best.value = kInf;
  best.endpoint_error = kInf;
  double best_failed_err = kInf;
  double conv_min = kInf, conv_max = -kInf;
  for (const Eigen::VectorXd& x0 : starts) {
    const StartOutcome oc = run_one_start(vm, m, u, v, cfg, x0);
    if (oc.converged) {
      conv_min = std::min(conv_min, oc.length);
      conv_max = std::max(conv_max, oc.length);
      if (!best.converged || oc.length < best.value) {
        best.converged = true;
        best.value = oc.length;
        best.energy = oc.energy;
        best.endpoint_error = oc.endpoint_err;
        best.path = oc.path;
      }
    } else if (!best.converged && oc.endpoint_err < best_failed_err) {
      best_failed_err = oc.endpoint_err;
      best.value = oc.length;
      best.energy = oc.energy;
      best.endpoint_error = oc.endpoint_err;
      best.path = oc.path;
    }
  }
  best.multistart_spread = best.converged ? conv_max - conv_min : 0.0;
  return best;
}

}  // namespace qclab
