#pragma once

// Word search over a gate alphabet: exhaustive breadth enumeration with
// optional near-duplicate merging, per-shell minimum distances to target
// sets, exact gate complexity (with a meet-in-the-middle shortcut), the
// free-group distinctness census, and closed-form Cayley ball counts.

#include <cstddef>
#include <optional>
#include <vector>

#include "qclab/words.hpp"

namespace qclab {

inline constexpr std::size_t kDefaultEnumBudget = 5'000'000;

// --- enumeration ---------------------------------------------------------

struct EnumerationEntry {
  Word word;
  Mat u;
  int cost;
};

struct EnumerationResult {
  std::vector<EnumerationEntry> entries;  // ordered by cost, lexicographic within a shell
  std::vector<long long> shell_counts;    // retained entries per cost 0..max_cost
  double dedup_tol = 0.0;
};

// Breadth-first by cost.  dedup_tol = 0 keeps every reduced word; a positive
// tolerance merges near-duplicates (bucketed by quantized entries, exact
// distance confirm within a bucket) keeping the first representative, which
// by construction is minimum-cost with lexicographic tie-break.  Throws
// BudgetExceeded when more than max_entries would be stored.
EnumerationResult enumerate_group_elements(const GateSet& a, int max_cost,
                                           double dedup_tol,
                                           std::size_t max_entries = kDefaultEnumBudget);

// --- shell scans ----------------------------------------------------------

struct ShellScan {
  std::vector<double> best;  // best[l] = min distance over words of cost exactly l
  std::vector<Word> witness; // arg-min word per shell (empty when unattained)
};

// One depth-first pass over all reduced words of cost <= max_cost, keeping
// the per-shell minimum Hilbert-Schmidt distance to the nearest target.
// Deterministic under threading: merges take (distance, lex word) minima.
ShellScan scan_shells(const GateSet& a, const std::vector<Mat>& targets, int max_cost,
                      int threads = 0);

// min over reduced words of cost exactly l of the distance to the targets.
double min_distance_to_targets(const GateSet& a, int l, const std::vector<Mat>& targets,
                               int threads = 0);

// The center {exp(2 pi i k / d) * 1} of SU(d); {+1, -1} when d = 2.
std::vector<Mat> center_targets(int d);

// --- gate complexity ------------------------------------------------------

enum class SearchMode { kExhaustive, kMeetInTheMiddle };

struct ComplexityResult {
  std::optional<int> cost;    // empty when no word within eps up to max_cost
  bool exact = true;          // false: meet-in-the-middle upper bound
  Word witness;
  double achieved_dist = 0.0; // distance of the witness to the target
};

// Least cost c <= max_cost with some reduced word within eps of u.  The
// exhaustive mode proves minimality; the meet-in-the-middle mode reports an
// upper bound flagged exact = false (equality is checked in tests).
ComplexityResult gate_complexity(const GateSet& a, const Mat& u, double eps, int max_cost,
                                 SearchMode mode = SearchMode::kExhaustive,
                                 int threads = 0);

// --- free-group census ----------------------------------------------------

struct CollisionPair {
  Word first;
  Word second;
  double dist;
};

struct FreeGroupReport {
  bool is_free = false;
  std::vector<long long> shell_counts;     // reduced words per cost 0..max_cost
  std::vector<long long> expected_counts;  // 1, then 2r(2r-1)^(l-1)
  std::vector<CollisionPair> collisions;   // pairs closer than tol (capped)
  double min_checked_dist = 0.0;  // smallest pairwise distance examined by the census
};

// Enumerates every reduced word of cost <= max_cost and checks all pairs for
// proximity below tol via a sorted-projection sliding window (the window is
// exact: |proj(x) - proj(y)| <= ||x - y||).
FreeGroupReport free_group_check(const GateSet& a, int max_cost, double tol,
                                 std::size_t max_entries = kDefaultEnumBudget,
                                 int threads = 0);

// --- Cayley growth --------------------------------------------------------

struct CayleyRow {
  int r;
  long long shell;  // 2r0(2r0-1)^(r-1) reduced words at cost exactly r
  long long ball;   // cumulative including the identity
  double ball_ratio;  // ball(r)/ball(r-1)
};

// Closed-form free-group growth for n_generators free generators; throws on
// 64-bit overflow rather than saturating.
std::vector<CayleyRow> cayley_growth(int r_max, int n_generators);

}  // namespace qclab
