#include "qclab/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <unordered_map>

#include "qclab/rng.hpp"
#include "qclab/threads.hpp"

namespace qclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Generator alphabet with inverses materialized once; letter encoding matches
// encode_letter so letter ^ 1 is the inverse letter.
struct Alphabet {
  std::vector<Mat> mats;
  int n_letters() const { return static_cast<int>(mats.size()); }
  static int inverse(int letter) { return letter ^ 1; }
};

Alphabet make_alphabet(const GateSet& a) {
  Alphabet ab;
  ab.mats.reserve(static_cast<std::size_t>(2 * a.size()));
  for (const Gate& g : a.gates) {
    ab.mats.push_back(g.u);
    ab.mats.push_back(g.u.adjoint());
  }
  return ab;
}

// Depth-first walk over reduced words (no letter followed by its inverse).
// The visitor sees every nonempty word of cost <= max_depth below the given
// prefix exactly once, with its product matrix and letter stack.
template <class Visit>
void dfs_extend(const Alphabet& ab, int max_depth, std::vector<int>& stack,
                std::vector<Mat>& prod, Visit&& visit) {
  const int depth = static_cast<int>(stack.size());
  if (depth >= max_depth) return;
  for (int letter = 0; letter < ab.n_letters(); ++letter) {
    if (depth > 0 && Alphabet::inverse(letter) == stack.back()) continue;
    prod[static_cast<std::size_t>(depth + 1)] =
        prod[static_cast<std::size_t>(depth)] * ab.mats[static_cast<std::size_t>(letter)];
    stack.push_back(letter);
    visit(prod[static_cast<std::size_t>(depth + 1)], depth + 1, stack);
    dfs_extend(ab, max_depth, stack, prod, visit);
    stack.pop_back();
  }
}

Word word_from_letters(const std::vector<int>& letters) {
  Word w;
  for (int letter : letters) w.push_letter(letter >> 1, (letter & 1) ? -1 : 1);
  return w;
}

// Per-shell minima with witnesses; merge order is made irrelevant by the
// (distance, lexicographic letters) total order.
struct ShellBest {
  std::vector<double> best;
  std::vector<std::vector<int>> letters;

  explicit ShellBest(int max_cost)
      : best(static_cast<std::size_t>(max_cost) + 1, kInf),
        letters(static_cast<std::size_t>(max_cost) + 1) {}

  void offer(int level, double dist, const std::vector<int>& word_letters) {
    auto& b = best[static_cast<std::size_t>(level)];
    auto& w = letters[static_cast<std::size_t>(level)];
    if (dist < b || (dist == b && (w.empty() || word_letters < w))) {
      b = dist;
      w = word_letters;
    }
  }

  void merge(const ShellBest& other) {
    for (std::size_t l = 0; l < best.size(); ++l) {
      if (other.best[l] < kInf) offer(static_cast<int>(l), other.best[l], other.letters[l]);
    }
  }
};

double min_target_dist(const Mat& m, const std::vector<Mat>& targets) {
  double d = kInf;
  for (const Mat& t : targets) d = std::min(d, (m - t).norm());
  return d;
}

// Runs one DFS task for every first letter, in parallel when allowed, and
// merges the per-task shell minima deterministically in letter order.
ShellBest scan_shells_impl(const GateSet& a, const std::vector<Mat>& targets, int max_cost,
                           int threads) {
  const Alphabet ab = make_alphabet(a);
  const Mat id = Mat::Identity(a.dim, a.dim);
  ShellBest acc(max_cost);
  acc.offer(0, min_target_dist(id, targets), {});
  if (max_cost == 0) return acc;

  auto run_task = [&](int first_letter) {
    ShellBest local(max_cost);
    std::vector<int> stack;
    stack.reserve(static_cast<std::size_t>(max_cost));
    std::vector<Mat> prod(static_cast<std::size_t>(max_cost) + 1);
    prod[1] = ab.mats[static_cast<std::size_t>(first_letter)];
    stack.push_back(first_letter);
    local.offer(1, min_target_dist(prod[1], targets), stack);
    auto visit = [&](const Mat& m, int depth, const std::vector<int>& letters) {
      local.offer(depth, min_target_dist(m, targets), letters);
    };
    dfs_extend(ab, max_cost, stack, prod, visit);
    return local;
  };

  const int n_tasks = ab.n_letters();
  const int budget = thread_budget(threads);
  std::vector<ShellBest> results;
  results.reserve(static_cast<std::size_t>(n_tasks));
  if (budget <= 1 || n_tasks <= 1) {
    for (int t = 0; t < n_tasks; ++t) results.push_back(run_task(t));
  } else {
    std::vector<std::future<ShellBest>> futs;
    futs.reserve(static_cast<std::size_t>(n_tasks));
    for (int t = 0; t < n_tasks; ++t) {
      futs.push_back(std::async(std::launch::async, run_task, t));
    }
    for (auto& f : futs) results.push_back(f.get());
  }
  for (const ShellBest& r : results) acc.merge(r);
  return acc;
}

}  // namespace

ShellScan scan_shells(const GateSet& a, const std::vector<Mat>& targets, int max_cost,
                      int threads) {
  if (max_cost < 0) throw Error("scan_shells: max_cost must be >= 0");
  if (targets.empty()) throw Error("scan_shells: need at least one target");
  for (const Mat& t : targets) {
    if (t.rows() != a.dim || t.cols() != a.dim) {
      throw DimensionError("scan_shells: target dimension mismatch");
    }
  }
  ShellBest acc = scan_shells_impl(a, targets, max_cost, threads);
  ShellScan out;
  out.best = acc.best;
  out.witness.resize(acc.letters.size());
  for (std::size_t l = 0; l < acc.letters.size(); ++l) {
    if (acc.best[l] < kInf) out.witness[l] = word_from_letters(acc.letters[l]);
  }
  return out;
}

double min_distance_to_targets(const GateSet& a, int l, const std::vector<Mat>& targets,
                               int threads) {
  if (l < 0) throw Error("min_distance_to_targets: cost must be >= 0");
  const ShellScan scan = scan_shells(a, targets, l, threads);
  return scan.best[static_cast<std::size_t>(l)];
}

std::vector<Mat> center_targets(int d) {
  if (d < 2) throw DimensionError("center_targets: dimension must be >= 2");
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double phase = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d);
    out.push_back(std::exp(cplx(0.0, phase)) * Mat::Identity(d, d));
  }
  return out;
}

// --- enumeration ----------------------------------------------------------

namespace {

struct QuantKey {
  std::vector<std::int64_t> cells;
  friend bool operator==(const QuantKey&, const QuantKey&) = default;
};

struct QuantKeyHash {
  std::size_t operator()(const QuantKey& k) const {
    std::uint64_t h = 14695981039346656037ull;
    for (std::int64_t v : k.cells) {
      for (int byte = 0; byte < 8; ++byte) {
        h ^= static_cast<std::uint64_t>(v >> (8 * byte)) & 0xffull;
        h *= 1099511628211ull;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

QuantKey quantize(const Mat& m, double quantum) {
  QuantKey key;
  key.cells.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      key.cells.push_back(static_cast<std::int64_t>(std::floor(m(r, c).real() / quantum)));
      key.cells.push_back(static_cast<std::int64_t>(std::floor(m(r, c).imag() / quantum)));
    }
  }
  return key;
}

// Number of reduced words of cost <= max_cost over r generators (the full
// alphabet tree, independent of any relations among the matrices).
long long reduced_word_ball(int max_cost, int n_generators) {
  long long total = 1;
  long long shell = 0;
  for (int l = 1; l <= max_cost; ++l) {
    if (l == 1) {
      shell = 2ll * n_generators;
    } else if (__builtin_mul_overflow(shell, 2ll * n_generators - 1, &shell)) {
      throw BudgetExceededError("reduced word count overflows 64-bit range");
    }
    if (__builtin_add_overflow(total, shell, &total)) {
      throw BudgetExceededError("reduced word count overflows 64-bit range");
    }
  }
  return total;
}

}  // namespace

EnumerationResult enumerate_group_elements(const GateSet& a, int max_cost, double dedup_tol,
                                           std::size_t max_entries) {
  if (max_cost < 0) throw Error("enumerate_group_elements: max_cost must be >= 0");
  if (dedup_tol < 0.0) throw Error("enumerate_group_elements: dedup_tol must be >= 0");
  if (dedup_tol == 0.0) {
    const long long tree = reduced_word_ball(max_cost, a.size());
    if (tree > static_cast<long long>(max_entries)) {
      throw BudgetExceededError("enumerate_group_elements: reduced word tree exceeds budget");
    }
  }

  const Alphabet ab = make_alphabet(a);
  const double quantum = dedup_tol > 0.0 ? dedup_tol / (2.0 * a.dim) : 0.0;

  EnumerationResult out;
  out.dedup_tol = dedup_tol;
  out.shell_counts.assign(static_cast<std::size_t>(max_cost) + 1, 0);
  out.entries.push_back(EnumerationEntry{Word{}, Mat::Identity(a.dim, a.dim), 0});
  out.shell_counts[0] = 1;

  std::unordered_map<QuantKey, std::vector<std::size_t>, QuantKeyHash> buckets;
  if (dedup_tol > 0.0) {
    buckets[quantize(out.entries[0].u, quantum)].push_back(0);
  }

  std::vector<std::size_t> frontier{0};
  for (int cost = 1; cost <= max_cost; ++cost) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      // Copies, not references: the push_backs below reallocate out.entries.
      const Mat parent_u = out.entries[idx].u;
      const Word parent_word = out.entries[idx].word;
      const std::vector<int> parent_letters = parent_word.letters();
      const int banned =
          parent_letters.empty() ? -1 : Alphabet::inverse(parent_letters.back());
      for (int letter = 0; letter < ab.n_letters(); ++letter) {
        if (letter == banned) continue;
        Mat m = parent_u * ab.mats[static_cast<std::size_t>(letter)];
        if (dedup_tol > 0.0) {
          const QuantKey key = quantize(m, quantum);
          auto it = buckets.find(key);
          bool duplicate = false;
          if (it != buckets.end()) {
            for (std::size_t cand : it->second) {
              if ((m - out.entries[cand].u).norm() <= dedup_tol) {
                duplicate = true;
                break;
              }
            }
          }
          if (duplicate) continue;
          if (out.entries.size() >= max_entries) {
            throw BudgetExceededError("enumerate_group_elements: budget exceeded");
          }
          Word w = parent_word;
          w.push_letter(letter >> 1, (letter & 1) ? -1 : 1);
          buckets[key].push_back(out.entries.size());
          next.push_back(out.entries.size());
          out.entries.push_back(EnumerationEntry{std::move(w), std::move(m), cost});
        } else {
          if (out.entries.size() >= max_entries) {
            throw BudgetExceededError("enumerate_group_elements: budget exceeded");
          }
          Word w = parent_word;
          w.push_letter(letter >> 1, (letter & 1) ? -1 : 1);
          next.push_back(out.entries.size());
          out.entries.push_back(EnumerationEntry{std::move(w), std::move(m), cost});
        }
      }
    }
    out.shell_counts[static_cast<std::size_t>(cost)] = static_cast<long long>(next.size());
    frontier = std::move(next);
  }
  return out;
}

// --- gate complexity ------------------------------------------------------

ComplexityResult gate_complexity(const GateSet& a, const Mat& u, double eps, int max_cost,
                                 SearchMode mode, int threads) {
  if (eps <= 0.0) throw Error("gate_complexity: eps must be positive");
  if (max_cost < 0) throw Error("gate_complexity: max_cost must be >= 0");
  if (u.rows() != a.dim || u.cols() != a.dim) {
    throw DimensionError("gate_complexity: target dimension mismatch");
  }
  require_unitary(u, 1e-8);

  if (mode == SearchMode::kMeetInTheMiddle) {
    // Split every candidate W = W1 W2 at the middle: both halves live in the
    // half-cost tree, and |proj(W1) - proj(U W2^{-1})| <= ||W1 W2 - U|| makes
    // the sorted-projection window exact.
    const int half = (max_cost + 1) / 2;
    const EnumerationResult left = enumerate_group_elements(a, half, 0.0);
    Rng prng(0x51d2c4a9b7e3f815ull);
    Eigen::VectorXd dir(2 * a.dim * a.dim);
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = prng.next_gauss();
    dir.normalize();
    auto project = [&](const Mat& m) {
      double p = 0.0;
      Eigen::Index k = 0;
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          p += dir(k++) * m(r, c).real();
          p += dir(k++) * m(r, c).imag();
        }
      }
      return p;
    };
    std::vector<std::pair<double, std::size_t>> index;
    index.reserve(left.entries.size());
    for (std::size_t i = 0; i < left.entries.size(); ++i) {
      index.emplace_back(project(left.entries[i].u), i);
    }
    std::sort(index.begin(), index.end());

    ComplexityResult best;
    best.exact = false;
    best.achieved_dist = kInf;
    int best_cost = max_cost + 1;
    std::vector<int> best_letters;

    auto consider = [&](const Mat& inv_right, int right_cost,
                        const std::vector<int>& right_letters) {
      if (right_cost >= best_cost) return;
      const Mat q = u * inv_right;
      const double pq = project(q);
      auto lo = std::lower_bound(index.begin(), index.end(),
                                 std::make_pair(pq - eps, std::size_t{0}));
      for (auto it = lo; it != index.end() && it->first <= pq + eps; ++it) {
        const EnumerationEntry& le = left.entries[it->second];
        if (le.cost + right_cost > max_cost) continue;
        const double dist = (le.u - q).norm();
        if (dist >= eps) continue;
        std::vector<int> letters = le.word.letters();
        letters.insert(letters.end(), right_letters.begin(), right_letters.end());
        const Word w = word_from_letters(letters);
        const int cost = w.cost();
        const std::vector<int> wl = w.letters();
        if (cost < best_cost || (cost == best_cost && dist < best.achieved_dist) ||
            (cost == best_cost && dist == best.achieved_dist && wl < best_letters)) {
          best_cost = cost;
          best.achieved_dist = dist;
          best_letters = wl;
        }
      }
    };

    consider(Mat::Identity(a.dim, a.dim), 0, {});
    const Alphabet ab = make_alphabet(a);
    std::vector<int> stack;
    std::vector<Mat> inv_chain(static_cast<std::size_t>(half) + 1);
    inv_chain[0] = Mat::Identity(a.dim, a.dim);
    // Depth-first over right halves, carrying W2^{-1} incrementally.
    std::function<void(int)> walk = [&](int depth) {
      if (depth >= half) return;
      for (int letter = 0; letter < ab.n_letters(); ++letter) {
        if (depth > 0 && Alphabet::inverse(letter) == stack.back()) continue;
        inv_chain[static_cast<std::size_t>(depth + 1)] =
            ab.mats[static_cast<std::size_t>(Alphabet::inverse(letter))] *
            inv_chain[static_cast<std::size_t>(depth)];
        stack.push_back(letter);
        consider(inv_chain[static_cast<std::size_t>(depth + 1)], depth + 1, stack);
        walk(depth + 1);
        stack.pop_back();
      }
    };
    walk(0);

    if (best_cost <= max_cost) {
      best.cost = best_cost;
      best.witness = word_from_letters(best_letters);
    }
    return best;
  }

  // Exhaustive: grow the search radius one shell at a time; shells already
  // cleared cannot contain a hit, so the first shell with a sub-eps word
  // gives the exact complexity.
  ComplexityResult out;
  double best_seen = kInf;
  Word best_word;
  for (int c = 0; c <= max_cost; ++c) {
    const ShellScan scan = scan_shells(a, {u}, c, threads);
    const double d = scan.best[static_cast<std::size_t>(c)];
    if (d < best_seen) {
      best_seen = d;
      best_word = scan.witness[static_cast<std::size_t>(c)];
    }
    if (d < eps) {
      out.cost = c;
      out.exact = true;
      out.witness = scan.witness[static_cast<std::size_t>(c)];
      out.achieved_dist = d;
      return out;
    }
  }
  out.exact = true;
  out.achieved_dist = best_seen;
  out.witness = best_word;
  return out;
}

// --- free-group census ----------------------------------------------------

FreeGroupReport free_group_check(const GateSet& a, int max_cost, double tol,
                                 std::size_t max_entries, int threads) {
  (void)threads;
  if (tol <= 0.0) throw Error("free_group_check: tol must be positive");
  const EnumerationResult en = enumerate_group_elements(a, max_cost, 0.0, max_entries);

  FreeGroupReport rep;
  rep.shell_counts = en.shell_counts;
  rep.expected_counts.assign(static_cast<std::size_t>(max_cost) + 1, 0);
  rep.expected_counts[0] = 1;
  long long shell = 0;
  for (int l = 1; l <= max_cost; ++l) {
    shell = (l == 1) ? 2ll * a.size() : shell * (2ll * a.size() - 1);
    rep.expected_counts[static_cast<std::size_t>(l)] = shell;
  }

  // Sorted projection census: any pair within tol in Hilbert-Schmidt norm
  // lands within tol in the projection, so scanning the sliding window
  // examines a superset of the near pairs.
  Rng prng(0x9c1af5b3d7e24680ull);
  Eigen::VectorXd dir(2 * a.dim * a.dim);
  for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = prng.next_gauss();
  dir.normalize();
  auto project = [&](const Mat& m) {
    double p = 0.0;
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        p += dir(k++) * m(r, c).real();
        p += dir(k++) * m(r, c).imag();
      }
    }
    return p;
  };

  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(en.entries.size());
  for (std::size_t i = 0; i < en.entries.size(); ++i) {
    order.emplace_back(project(en.entries[i].u), i);
  }
  std::sort(order.begin(), order.end());

  rep.min_checked_dist = kInf;
  constexpr std::size_t kMaxRecorded = 200;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (order[j].first - order[i].first > tol) break;
      const EnumerationEntry& x = en.entries[order[i].second];
      const EnumerationEntry& y = en.entries[order[j].second];
      const double dist = (x.u - y.u).norm();
      rep.min_checked_dist = std::min(rep.min_checked_dist, dist);
      if (dist <= tol && rep.collisions.size() < kMaxRecorded) {
        rep.collisions.push_back(CollisionPair{x.word, y.word, dist});
      }
    }
  }

  bool counts_ok = true;
  for (std::size_t l = 0; l < rep.shell_counts.size(); ++l) {
    if (rep.shell_counts[l] != rep.expected_counts[l]) counts_ok = false;
  }
  rep.is_free = rep.collisions.empty() && counts_ok;
  return rep;
}

// --- Cayley growth --------------------------------------------------------

std::vector<CayleyRow> cayley_growth(int r_max, int n_generators) {
  if (r_max < 1) throw Error("cayley_growth: r_max must be >= 1");
  if (n_generators < 1) throw Error("cayley_growth: need at least one generator");
  std::vector<CayleyRow> rows;
  rows.reserve(static_cast<std::size_t>(r_max));
  long long shell = 0;
  long long ball = 1;
  for (int r = 1; r <= r_max; ++r) {
    if (r == 1) {
      shell = 2ll * n_generators;
    } else if (__builtin_mul_overflow(shell, 2ll * n_generators - 1, &shell)) {
      throw Error("cayley_growth: shell count overflows 64-bit range");
    }
    const long long prev_ball = ball;
    if (__builtin_add_overflow(ball, shell, &ball)) {
      throw Error("cayley_growth: ball count overflows 64-bit range");
    }
    rows.push_back(CayleyRow{r, shell, ball,
                             static_cast<double>(ball) / static_cast<double>(prev_ball)});
  }
  return rows;
}

}  // namespace qclab
