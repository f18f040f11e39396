#pragma once

// Commutator filtration of a Pauli-spanned distribution: grow the span by
// bracketing with the base set until it stabilizes, assign each basis
// direction the level where it first appears, and sum the degrees into the
// box-counting exponent of the induced metric.

#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qclab/pauli.hpp"

namespace qclab {

enum class DistributionPattern { kAllToAll, kRing, kExplicit };

struct Distribution {
  int n_qubits = 0;
  DistributionPattern pattern = DistributionPattern::kExplicit;
  std::vector<PauliString> strings;  // sorted, duplicate-free
};

// One- plus two-local strings: every weight-1 string, plus weight-2 strings
// on interacting pairs (all pairs, or ring neighbours for >= 3 qubits).
Distribution build_distribution(int n_qubits, DistributionPattern pattern);

Distribution explicit_distribution(int n_qubits, std::vector<PauliString> strings);

struct Flag {
  Distribution base;
  // levels[k] = the set spanned after k+1 bracketing rounds (levels[0] is the
  // base), cumulative and sorted; sizes strictly increase until the last.
  std::vector<std::vector<PauliString>> levels;
  std::vector<long long> level_sizes;
  std::unordered_map<std::uint64_t, int> degree;  // code -> first level (1-based)
  int step = 0;          // number of levels
  bool generating = false;  // top level spans all 4^N - 1 directions
  long long hausdorff = 0;  // sum of degrees over the full basis (when generating)

  nlohmann::json summary() const;
};

// Pauli brackets are support-exact, so the filtration is a set closure:
// level k+1 adds [X, Y] supports for X in the base and Y in level k.
Flag grow_flag(const Distribution& delta);

// Box-counting exponent n_H = sum_j d_j; requires a generating flag.
long long box_exponent(const Flag& f);

// Level at which a direction (coefficients over pauli_basis order) is first
// covered: the max degree over its support.  Zero vectors are rejected;
// support outside the closure of a non-generating flag is an error.
int degree_of_direction(const std::vector<double>& coeffs, const Flag& f,
                        double tol = 1e-12);

}  // namespace qclab
