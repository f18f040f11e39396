#pragma once

// Reduced words over a gate alphabet {g_i^{+1}, g_i^{-1}}.  A word is stored
// as run-length factors (gate, power) with nonzero powers and distinct
// adjacent gates; cost is the total letter count sum |power|.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qclab/gateset.hpp"

namespace qclab {

struct WordFactor {
  int gate;
  int power;  // nonzero; negative means the inverse generator
  friend bool operator==(const WordFactor&, const WordFactor&) = default;
};

// A letter is one signed generator occurrence, encoded 2*gate + (sign < 0)
// so that letter order gives a canonical lexicographic order on words.
inline int encode_letter(int gate, int sign) { return 2 * gate + (sign < 0 ? 1 : 0); }

class Word {
 public:
  Word() = default;

  // Appends one letter, cancelling against the tail when it is the inverse
  // of the previous letter.
  void push_letter(int gate, int sign);
  void pop_letter();  // undo of push_letter for backtracking searches

  const std::vector<WordFactor>& factors() const { return factors_; }
  std::vector<int> letters() const;  // encoded letters, left to right
  int cost() const { return cost_; }
  bool empty() const { return factors_.empty(); }

  Mat realize(const GateSet& a) const;
  nlohmann::json to_json(const GateSet& a) const;  // [[label, power], ...]
  std::string str(const GateSet& a) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Lexicographic on the letter sequence; used only for deterministic ties.
  static bool lex_less(const Word& a, const Word& b);

 private:
  std::vector<WordFactor> factors_;
  int cost_ = 0;
};

}  // namespace qclab
