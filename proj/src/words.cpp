#include "qclab/words.hpp"

namespace qclab {

void Word::push_letter(int gate, int sign) {
  if (sign != 1 && sign != -1) throw IndexError("Word: sign must be +-1");
  if (gate < 0) throw IndexError("Word: negative gate index");
  if (!factors_.empty() && factors_.back().gate == gate) {
    WordFactor& tail = factors_.back();
    const bool cancels = (tail.power > 0) != (sign > 0);
    tail.power += sign;
    if (tail.power == 0) factors_.pop_back();
    cost_ += cancels ? -1 : 1;
  } else {
    factors_.push_back(WordFactor{gate, sign});
    cost_ += 1;
  }
}

void Word::pop_letter() {
  if (factors_.empty()) throw IndexError("Word: pop from empty word");
  WordFactor& tail = factors_.back();
  tail.power += tail.power > 0 ? -1 : 1;
  if (tail.power == 0) factors_.pop_back();
  cost_ -= 1;
}

std::vector<int> Word::letters() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cost_));
  for (const WordFactor& f : factors_) {
    const int sign = f.power > 0 ? 1 : -1;
    const int reps = f.power > 0 ? f.power : -f.power;
    for (int k = 0; k < reps; ++k) out.push_back(encode_letter(f.gate, sign));
  }
  return out;
}

Mat Word::realize(const GateSet& a) const {
  Mat out = Mat::Identity(a.dim, a.dim);
  for (const WordFactor& f : factors_) {
    if (f.gate >= a.size()) throw IndexError("Word::realize: gate index out of range");
    const Mat& g = a.matrix(f.gate);
    const Mat step = f.power > 0 ? g : Mat(g.adjoint());
    const int reps = f.power > 0 ? f.power : -f.power;
    for (int k = 0; k < reps; ++k) out = out * step;
  }
  return out;
}

nlohmann::json Word::to_json(const GateSet& a) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const WordFactor& f : factors_) {
    if (f.gate >= a.size()) throw IndexError("Word::to_json: gate index out of range");
    arr.push_back({a.gates[static_cast<std::size_t>(f.gate)].label, f.power});
  }
  return arr;
}

std::string Word::str(const GateSet& a) const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const WordFactor& f : factors_) {
    if (!out.empty()) out += ".";
    out += a.gates[static_cast<std::size_t>(f.gate)].label;
    if (f.power != 1) out += "^" + std::to_string(f.power);
  }
  return out;
}

bool Word::lex_less(const Word& a, const Word& b) {
  return a.letters() < b.letters();
}

}  // namespace qclab
