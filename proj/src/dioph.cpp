#include "qclab/dioph.hpp"

#include <algorithm>
#include <cmath>

namespace qclab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientDataError("fit_line: need at least two points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw FitDegenerateError("fit_line: zero variance in x");

  LineFit fit;
  fit.n_points = static_cast<int>(n);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  double ymin = y[0], ymax = y[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
    ymin = std::min(ymin, y[i]);
    ymax = std::max(ymax, y[i]);
  }
  const double rms = std::sqrt(ss_res / static_cast<double>(n));
  fit.nrmse = (ymax > ymin) ? rms / (ymax - ymin) : 0.0;
  fit.slope_stderr =
      (n > 2) ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return fit;
}

DiophantineReport fit_diophantine_constant(const std::vector<int>& lengths,
                                           const std::vector<double>& gaps) {
  if (lengths.size() != gaps.size()) {
    throw DimensionError("fit_diophantine_constant: size mismatch");
  }
  if (lengths.size() < 4) {
    throw InsufficientDataError("fit_diophantine_constant: need at least 4 shells");
  }
  for (double g : gaps) {
    if (!(g > 0.0)) throw Error("fit_diophantine_constant: gaps must be positive");
  }
  const double g0 = gaps.front();
  if (std::all_of(gaps.begin(), gaps.end(), [&](double g) { return g == g0; })) {
    throw FitDegenerateError("fit_diophantine_constant: all gaps equal");
  }

  std::vector<double> x, y;
  x.reserve(lengths.size());
  y.reserve(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    x.push_back(static_cast<double>(lengths[i]));
    y.push_back(-std::log(gaps[i]));
  }
  const LineFit fit = fit_line(x, y);

  DiophantineReport rep;
  rep.lengths = lengths;
  rep.min_gaps = gaps;
  rep.fitted_d = std::exp(fit.slope);
  rep.intercept = fit.intercept;
  rep.fit_residual = fit.nrmse;
  rep.floor_ok = true;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double floor = std::pow(rep.fitted_d, -static_cast<double>(lengths[i])) / 10.0;
    if (gaps[i] < floor) rep.floor_ok = false;
  }
  return rep;
}

DiophantineReport diophantine_scan(const GateSet& a, int l_max, int threads) {
  if (l_max < 4) throw InsufficientDataError("diophantine_scan: need l_max >= 4");
  const ShellScan scan = scan_shells(a, center_targets(a.dim), l_max, threads);
  std::vector<int> lengths;
  std::vector<double> gaps;
  for (int l = 1; l <= l_max; ++l) {
    lengths.push_back(l);
    gaps.push_back(scan.best[static_cast<std::size_t>(l)]);
  }
  return fit_diophantine_constant(lengths, gaps);
}

ScalingScan complexity_scaling_scan(const GateSet& a, const Mat& u,
                                    const std::vector<double>& eps_grid, int max_cost,
                                    double lower_bound_coeff, int threads) {
  if (eps_grid.empty()) throw Error("complexity_scaling_scan: empty eps grid");
  for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i) {
    if (eps_grid[i + 1] >= eps_grid[i]) {
      throw Error("complexity_scaling_scan: eps grid must decrease strictly");
    }
  }
  if (eps_grid.back() <= 0.0) throw Error("complexity_scaling_scan: eps must be positive");

  const ShellScan scan = scan_shells(a, {u}, max_cost, threads);
  // Running minimum turns per-shell distances into distances over balls.
  std::vector<double> ball_best(scan.best.size());
  double run = scan.best[0];
  for (std::size_t l = 0; l < scan.best.size(); ++l) {
    run = std::min(run, scan.best[l]);
    ball_best[l] = run;
  }

  ScalingScan out;
  out.eps = eps_grid;
  out.lower_bound_coeff = lower_bound_coeff;
  std::vector<double> xs, ys;
  for (double eps : eps_grid) {
    std::optional<int> c;
    for (std::size_t l = 0; l < ball_best.size(); ++l) {
      if (ball_best[l] < eps) {
        c = static_cast<int>(l);
        break;
      }
    }
    out.complexity.push_back(c);
    if (c) {
      xs.push_back(std::log(1.0 / eps));
      ys.push_back(static_cast<double>(*c));
    }
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("complexity_scaling_scan: fewer than 3 resolved points");
  }
  const LineFit fit = fit_line(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  return out;
}

}  // namespace qclab
