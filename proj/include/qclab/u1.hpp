#pragma once

// Exact gate complexity on the circle group: the generator is a single
// irrational rotation, a word of cost |n| reaches phase n*alpha, and the
// least |n| landing within eps of the target phase is found three ways
// (direct scan, reduced-lattice enumeration, and scaling fits backed by
// continued fractions).

#include <cstdint>
#include <optional>
#include <vector>

#include "qclab/dioph.hpp"

namespace qclab {

// Reduces a phase into [0, 2*pi).
double reduce_phase(double phi);

// Distance |e^{i phi} - e^{i psi}| = 2|sin((phi - psi)/2)| on the unit circle.
double circle_dist(double phi, double psi);

// Least |n| with |n| <= n_max and |e^{i phi} - e^{i n alpha}| < eps, scanning
// n = 0, +1, -1, +2, ... so that ties prefer the positive sign.  Empty result
// when no power qualifies.
std::optional<long long> u1_complexity(double phi, double alpha, double eps,
                                       long long n_max);

// Same minimum computed independently: hits correspond to integer pairs
// (n, m) with |phi/2pi - n*alpha/2pi - m| < asin(eps/2)/pi, which are lattice
// points of span{(1, alpha/2pi), (0, 1)} inside a thin strip; a Gauss-reduced
// basis enumerates the strip exactly, with a safety margin, and every
// candidate is confirmed against the circle-distance predicate.
std::optional<long long> u1_oracle(double phi, double alpha, double eps, long long n_max);

struct Convergent {
  long long p;
  long long q;
};

struct ContinuedFraction {
  double value;
  std::vector<long long> partial_quotients;  // a0; a1, a2, ...
  std::vector<Convergent> convergents;       // strictly increasing denominators
  bool truncated = false;  // stopped by depth cap or precision exhaustion
};

// Continued fraction of x to at most `depth` partial quotients.  Denominators
// of reported convergents increase strictly (the leading integer convergent
// is dropped when the next one shares its denominator).
ContinuedFraction continued_fraction(double x, int depth = 40);

struct U1Scan {
  std::vector<double> eps;
  std::vector<std::optional<long long>> minimizer;  // signed n per eps
  std::vector<std::optional<long long>> complexity; // |n|
  std::vector<double> reference_line;               // (1/3) log(1/eps)
  double slope_vs_logeps = 0.0;   // C vs log(1/eps)
  double slope_loglog = 0.0;      // log C vs log(1/eps)
  double fitted_k = 0.0;          // envelope |phi/2pi - n b - m| >= K/(|n|+|m|+1)^tau
  double fitted_tau = 0.0;
};

// Complexity across a strictly decreasing eps grid plus both scaling fits
// and the approximation-envelope fit over the accepted minimizers.  Needs at
// least three resolved points.
U1Scan u1_scaling_scan(double phi, double alpha, const std::vector<double>& eps_grid,
                       long long n_max);

}  // namespace qclab
