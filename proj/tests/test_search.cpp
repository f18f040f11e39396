#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qclab/search.hpp"
#include "qclab/rng.hpp"
#include "test_support.hpp"

using namespace qclab;

namespace {

GateSet a2() { return build_su2_gateset(1, 3); }

// single generator of order 4: words wrap around, so dedup has work to do
GateSet cyclic4() {
  Mat ix(2, 2);
  ix << 0, cplx(0, 1), cplx(0, 1), 0;
  return make_gateset({Gate{"g", ix}}, false);
}

Word random_reduced_word(const GateSet& a, int cost, Rng& rng) {
  Word w;
  while (w.cost() < cost) {
    const int gate = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(a.size()));
    const int sign = (rng.next_u64() & 1) ? 1 : -1;
    const int before = w.cost();
    w.push_letter(gate, sign);
    if (w.cost() < before) w.push_letter(gate, sign);  // undo a cancellation
  }
  return w;
}

}  // namespace

TEST_CASE("enumeration walks free-group shells in cost order") {
  const EnumerationResult res = enumerate_group_elements(a2(), 4, 0.0);
  CHECK(res.shell_counts == std::vector<long long>{1, 4, 12, 36, 108});
  CHECK(res.entries.size() == 161);
  int last_cost = 0;
  for (const EnumerationEntry& e : res.entries) {
    CHECK(e.cost >= last_cost);
    last_cost = e.cost;
    CHECK(e.word.cost() == e.cost);
    CHECK((e.word.realize(a2()) - e.u).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("near-duplicate merging collapses a cyclic generator") {
  const EnumerationResult res = enumerate_group_elements(cyclic4(), 4, 1e-9);
  // iX generates {1, iX, -1, -iX}; everything past cost 2 is a repeat
  CHECK(res.shell_counts == std::vector<long long>{1, 2, 1, 0, 0});
  CHECK(res.entries.size() == 4);
  const EnumerationResult raw = enumerate_group_elements(cyclic4(), 4, 0.0);
  CHECK(raw.shell_counts == std::vector<long long>{1, 2, 2, 2, 2});
}

TEST_CASE("enumeration budget is enforced") {
  CHECK_THROWS_AS(enumerate_group_elements(a2(), 5, 0.0, 100), BudgetExceededError);
}

TEST_CASE("shell scan agrees with brute-force enumeration") {
  const GateSet a = a2();
  Rng rng(31);
  const std::vector<Mat> targets = {qtest::haar_su(2, rng), qtest::haar_su(2, rng)};
  const int max_cost = 5;
  const ShellScan scan = scan_shells(a, targets, max_cost);
  REQUIRE(scan.best.size() == static_cast<std::size_t>(max_cost) + 1);

  const EnumerationResult all = enumerate_group_elements(a, max_cost, 0.0);
  std::vector<double> brute(static_cast<std::size_t>(max_cost) + 1,
                            std::numeric_limits<double>::infinity());
  for (const EnumerationEntry& e : all.entries) {
    for (const Mat& t : targets) {
      brute[static_cast<std::size_t>(e.cost)] =
          std::min(brute[static_cast<std::size_t>(e.cost)], hs_norm(e.u - t));
    }
  }
  for (int l = 0; l <= max_cost; ++l) {
    CHECK(scan.best[static_cast<std::size_t>(l)] ==
          doctest::Approx(brute[static_cast<std::size_t>(l)]).epsilon(1e-12));
    // the witness word attains the reported distance within its shell
    const Word& w = scan.witness[static_cast<std::size_t>(l)];
    CHECK(w.cost() == l);
    double d = std::numeric_limits<double>::infinity();
    for (const Mat& t : targets) d = std::min(d, hs_norm(w.realize(a) - t));
    CHECK(d == doctest::Approx(scan.best[static_cast<std::size_t>(l)]).epsilon(1e-12));
  }

  CHECK(min_distance_to_targets(a, 3, targets) ==
        doctest::Approx(scan.best[3]).epsilon(1e-12));
}

TEST_CASE("threaded scans reproduce the single-thread result exactly") {
  const GateSet a = a2();
  Rng rng(77);
  const std::vector<Mat> targets = {qtest::haar_su(2, rng)};
  const ShellScan one = scan_shells(a, targets, 7, 1);
  const ShellScan four = scan_shells(a, targets, 7, 4);
  REQUIRE(one.best.size() == four.best.size());
  for (std::size_t l = 0; l < one.best.size(); ++l) {
    CHECK(one.best[l] == four.best[l]);  // bitwise: merges are order-independent
    CHECK(one.witness[l] == four.witness[l]);
  }
}

TEST_CASE("center targets") {
  const std::vector<Mat> c2 = center_targets(2);
  REQUIRE(c2.size() == 2);
  CHECK((c2[0] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((c2[1] + Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  const std::vector<Mat> c3 = center_targets(3);
  REQUIRE(c3.size() == 3);
  for (const Mat& m : c3) {
    CHECK((m - m(0, 0) * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(std::abs(m(0, 0)) - 1.0) < 1e-14);
  }
}

TEST_CASE("gate complexity is exact on realizable words") {
  const GateSet a = a2();
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const int cost = 3 + trial;
    const Word w = random_reduced_word(a, cost, rng);
    const Mat u = w.realize(a);
    const ComplexityResult res = gate_complexity(a, u, 1e-9, cost + 2);
    REQUIRE(res.cost.has_value());
    CHECK(*res.cost == cost);
    CHECK(res.exact);
    CHECK(res.achieved_dist < 1e-9);
    CHECK((res.witness.realize(a) - u).cwiseAbs().maxCoeff() < 1e-9);
  }

  // identity is free
  const ComplexityResult id = gate_complexity(a, Mat::Identity(2, 2), 1e-9, 4);
  REQUIRE(id.cost.has_value());
  CHECK(*id.cost == 0);

  // unresolved: a generic target is nowhere near the cost-6 ball at 1e-6
  Rng hrng(123);
  const ComplexityResult miss = gate_complexity(a, qtest::haar_su(2, hrng), 1e-6, 6);
  CHECK_FALSE(miss.cost.has_value());
}

TEST_CASE("meet-in-the-middle matches the exhaustive search") {
  const GateSet a = a2();
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int cost = 4 + trial % 5;
    const Word w = random_reduced_word(a, cost, rng);
    const Mat u = w.realize(a);
    const ComplexityResult ex = gate_complexity(a, u, 1e-9, 9, SearchMode::kExhaustive);
    const ComplexityResult mm =
        gate_complexity(a, u, 1e-9, 9, SearchMode::kMeetInTheMiddle);
    REQUIRE(ex.cost.has_value());
    REQUIRE(mm.cost.has_value());
    CHECK(*ex.cost == *mm.cost);
    CHECK_FALSE(mm.exact);
    CHECK(mm.achieved_dist < 1e-9);
  }
}

TEST_CASE("free-group census certifies the rational-cosine pair") {
  const FreeGroupReport rep = free_group_check(a2(), 6, 1e-6);
  CHECK(rep.is_free);
  CHECK(rep.collisions.empty());
  CHECK(rep.shell_counts == rep.expected_counts);
  REQUIRE(rep.shell_counts.size() == 7);
  CHECK(rep.shell_counts[0] == 1);
  for (int l = 1; l <= 6; ++l) {
    CHECK(rep.shell_counts[static_cast<std::size_t>(l)] ==
          4 * static_cast<long long>(std::llround(std::pow(3.0, l - 1))));
  }
  CHECK(rep.min_checked_dist > 1e-6);
}

TEST_CASE("free-group census flags a cyclic generator") {
  const FreeGroupReport rep = free_group_check(cyclic4(), 4, 1e-6);
  CHECK_FALSE(rep.is_free);
  CHECK_FALSE(rep.collisions.empty());
  CHECK(rep.min_checked_dist < 1e-6);
  for (const CollisionPair& c : rep.collisions) {
    CHECK(c.dist < 1e-6);
    CHECK_FALSE(c.first == c.second);
  }
}

TEST_CASE("closed-form Cayley growth") {
  const std::vector<CayleyRow> rows = cayley_growth(10, 2);
  REQUIRE(rows.size() == 10);
  long long ball = 1;
  for (const CayleyRow& row : rows) {
    const long long shell =
        4 * static_cast<long long>(std::llround(std::pow(3.0, row.r - 1)));
    CHECK(row.shell == shell);
    CHECK(row.ball == ball + shell);
    CHECK(row.ball_ratio ==
          doctest::Approx(static_cast<double>(ball + shell) / static_cast<double>(ball))
              .epsilon(1e-14));
    ball += shell;
  }
  CHECK(rows.back().ball == 118097);  // 2 * 3^10 - 1

  CHECK_THROWS_AS(cayley_growth(45, 2), Error);  // 64-bit overflow
  CHECK_THROWS_AS(cayley_growth(0, 2), Error);
  CHECK_THROWS_AS(cayley_growth(3, 0), Error);
}
