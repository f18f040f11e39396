#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qclab/words.hpp"

using namespace qclab;

TEST_CASE("push_letter merges runs and cancels inverses") {
  Word w;
  CHECK(w.empty());
  CHECK(w.cost() == 0);

  w.push_letter(0, 1);
  w.push_letter(0, 1);
  REQUIRE(w.factors().size() == 1);
  CHECK(w.factors()[0] == WordFactor{0, 2});
  CHECK(w.cost() == 2);

  w.push_letter(1, -1);
  CHECK(w.factors().size() == 2);
  CHECK(w.cost() == 3);

  // cancel back through the run boundary
  w.push_letter(1, 1);
  CHECK(w.factors().size() == 1);
  CHECK(w.cost() == 2);
  w.push_letter(0, -1);
  w.push_letter(0, -1);
  CHECK(w.empty());
  CHECK(w.cost() == 0);

  CHECK_THROWS_AS(w.push_letter(0, 2), IndexError);
  CHECK_THROWS_AS(w.push_letter(-1, 1), IndexError);
}

TEST_CASE("pop_letter unwinds non-cancelling pushes") {
  // the search never pushes the inverse of the tail letter, so replaying
  // such a sequence and popping must walk back through the same states
  const std::vector<std::pair<int, int>> moves = {
      {0, 1}, {0, 1}, {1, -1}, {0, 1}, {1, 1}, {1, 1}, {0, -1}};
  Word w;
  std::vector<Word> states;
  states.push_back(w);
  for (auto [g, s] : moves) {
    w.push_letter(g, s);
    states.push_back(w);
  }
  for (std::size_t i = moves.size(); i > 0; --i) {
    w.pop_letter();
    CHECK(w == states[i - 1]);
  }
  CHECK(w.empty());
  CHECK_THROWS_AS(w.pop_letter(), IndexError);

  // after a cancelling push, pop removes the last letter of the reduced
  // word, not the cancelled one
  Word v;
  v.push_letter(0, 1);
  v.push_letter(1, 1);
  v.push_letter(1, -1);  // cancels: v = g0
  v.pop_letter();
  CHECK(v.empty());
}

TEST_CASE("letter encoding and flattening") {
  CHECK(encode_letter(0, 1) == 0);
  CHECK(encode_letter(0, -1) == 1);
  CHECK(encode_letter(1, 1) == 2);
  CHECK(encode_letter(2, -1) == 5);

  Word w;
  w.push_letter(0, 1);
  w.push_letter(0, 1);
  w.push_letter(1, -1);
  CHECK(w.letters() == std::vector<int>{0, 0, 3});
}

TEST_CASE("realize multiplies factors left to right") {
  const GateSet a = build_su2_gateset(1, 3);
  Word w;
  w.push_letter(0, 1);
  w.push_letter(1, -1);
  w.push_letter(1, -1);
  const Mat expect = a.matrix(0) * a.matrix(1).adjoint() * a.matrix(1).adjoint();
  CHECK((w.realize(a) - expect).cwiseAbs().maxCoeff() < 1e-14);

  Word empty;
  CHECK((empty.realize(a) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  Word bad;
  bad.push_letter(7, 1);
  CHECK_THROWS_AS(bad.realize(a), IndexError);
}

TEST_CASE("lexicographic order on letter sequences") {
  Word a, b;
  a.push_letter(0, 1);
  b.push_letter(0, 1);
  b.push_letter(0, 1);
  CHECK(Word::lex_less(a, b));   // proper prefix sorts first
  CHECK_FALSE(Word::lex_less(b, a));
  CHECK_FALSE(Word::lex_less(a, a));

  Word c, d;
  c.push_letter(0, -1);  // letter 1
  d.push_letter(1, 1);   // letter 2
  CHECK(Word::lex_less(c, d));

  Word e;
  CHECK(Word::lex_less(e, a));  // empty word before everything
}

TEST_CASE("json form lists label and power per factor") {
  const GateSet a = build_su2_gateset(1, 3);
  Word w;
  w.push_letter(0, 1);
  w.push_letter(0, 1);
  w.push_letter(1, -1);
  const nlohmann::json j = w.to_json(a);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0][0] == "gZ");
  CHECK(j[0][1] == 2);
  CHECK(j[1][0] == "gY");
  CHECK(j[1][1] == -1);
  CHECK(w.str(a).find("gZ") != std::string::npos);
}
