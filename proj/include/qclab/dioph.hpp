#pragma once

// Gap-decay fits: least-squares estimation of the exponential decay constant
// of per-shell minimum gaps to the group center, and scaling scans of gate
// complexity against resolution.

#include <vector>

#include "qclab/search.hpp"

namespace qclab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double nrmse = 0.0;  // RMS residual normalized by the response range
  int n_points = 0;
};

// Ordinary least squares y = slope*x + intercept.  Degenerate when fewer
// than two points or zero variance in x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DiophantineReport {
  std::vector<int> lengths;
  std::vector<double> min_gaps;
  double fitted_d = 0.0;     // decay base: min_gap ~ fitted_d^(-l)
  double intercept = 0.0;    // intercept of -log(gap) vs l
  double fit_residual = 0.0; // range-normalized RMS residual of the fit
  bool floor_ok = false;     // min_gap(l) >= fitted_d^(-l)/10 at every measured l
};

// Fits -log(min_gap) = l*log(D) + b.  Needs >= 4 points; all-equal gaps are
// degenerate.  The fitted D must exceed 1 for the report to mean anything;
// callers check floor_ok and fitted_d themselves.
DiophantineReport fit_diophantine_constant(const std::vector<int>& lengths,
                                           const std::vector<double>& gaps);

// Per-shell minimum distances to the center elements for l = 1..l_max,
// computed in a single pass, then fitted.
DiophantineReport diophantine_scan(const GateSet& a, int l_max, int threads = 0);

struct ScalingScan {
  std::vector<double> eps;                     // strictly decreasing grid
  std::vector<std::optional<int>> complexity;  // empty entry: unresolved at max_cost
  double slope = 0.0;      // C vs log(1/eps) over the resolved points
  double intercept = 0.0;
  double lower_bound_coeff = 0.0;  // 1/log(D) reference attached from a gap fit
};

// Exact complexities over a decreasing eps grid against one target, all read
// off a single shell scan.  Requires at least three resolved points.
ScalingScan complexity_scaling_scan(const GateSet& a, const Mat& u,
                                    const std::vector<double>& eps_grid, int max_cost,
                                    double lower_bound_coeff, int threads = 0);

}  // namespace qclab
