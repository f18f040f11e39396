#pragma once

// Scaling protocols built on the boundary value solver: the short-distance
// exponent of the metric distance along a fixed direction, and the penalty
// weight at which finite-q geodesics abandon the direct path.

#include "qclab/dioph.hpp"
#include "qclab/solver.hpp"

namespace qclab {

struct HolderPoint {
  double delta;
  double distance;
  double endpoint_error;
  double spread;
  bool converged;
};

struct HolderResult {
  std::vector<HolderPoint> points;
  double slope = 0.0;         // of log(distance) vs log(delta), converged points
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int n_converged = 0;
};

// Distances from 1 to exp(-i delta P) across the grid.  Deltas are processed
// largest first so each solve warm-starts from the previous one (coefficients
// scaled by sqrt(delta ratio)); when the direction is reachable as a single
// commutator of easy directions, closed-loop candidates at the second-order
// amplitude sqrt(2 pi delta) are offered in both orientations.  Needs at
// least three converged points for the fit.
HolderResult holder_experiment(const PenaltyMetric& m, const PauliString& direction,
                               std::vector<double> deltas, const SolverConfig& cfg);

struct CutlocusPoint {
  double q;
  double delta_star;     // where distance / (sqrt(q) delta) first drops to 1/2
  double crossover_distance;
  bool bracketed;
};

struct CutlocusResult {
  std::vector<CutlocusPoint> points;
  double slope = 0.0;  // of log(delta_star) vs log(q), bracketed points only
  double intercept = 0.0;
  // Direct-path ratio samples per q for diagnostics: (delta, ratio) pairs.
  std::vector<std::vector<std::pair<double, double>>> scans;
};

struct CutlocusOptions {
  double delta_floor_scale = 1.0;   // ladder starts at scale/q
  double delta_cap = 2.8;           // never probe past this rotation
  int bisection_steps = 12;
  double ratio_threshold = 0.5;
};

// For each q, metric = {Y, Z} easy with X weighted q on one qubit; scans a
// doubling delta ladder for the first ratio below threshold, then bisects in
// log(delta).  Unbracketed q values are flagged and excluded from the fit.
CutlocusResult cutlocus_experiment(const std::vector<double>& qs,
                                   const SolverConfig& cfg,
                                   const CutlocusOptions& opts = {});

// Best rational approximation p/q to x with q <= max_den (continued-fraction
// convergent walk).
std::pair<long long, long long> best_rational(double x, long long max_den);

// Nearby special unitary with algebraic entries: each entry of an SU(2)
// matrix is replaced by a rational of denominator <= max_den and the matrix
// is renormalized by the exact root of the rational norm, giving entries in
// a real quadratic extension.
Mat rationalize_su2(const Mat& u, long long max_den);

}  // namespace qclab
