#pragma once

// Symbolic Pauli strings with base-4 packed codes, the Hermitian basis of
// su(2^N) they span, and the support rule for commutators.  Dense 2^N x 2^N
// realizations are available for small N so symbolic results can be checked
// against ordinary matrix algebra.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qclab/linalg.hpp"

namespace qclab {

inline constexpr int kDenseQubitCap = 3;
inline constexpr int kMaxPauliQubits = 31;  // 2 bits per site in a 64-bit code

class PauliString {
 public:
  // letters: 0 = I, 1 = X, 2 = Y, 3 = Z; site 0 occupies the highest base-4
  // digit so that code order matches lexicographic order of the letter string.
  PauliString(int n_qubits, std::uint64_t code);
  static PauliString from_letters(std::string_view letters);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t code() const { return code_; }
  int letter(int site) const;
  int weight() const;  // number of non-identity sites
  bool is_identity() const { return code_ == 0; }
  std::string str() const;

  // Dense matrix, N <= kDenseQubitCap only (site 0 is the leftmost factor).
  Mat dense() const;

  friend auto operator<=>(const PauliString& a, const PauliString& b) = default;

 private:
  int n_qubits_;
  std::uint64_t code_;
};

// All 4^N - 1 non-identity strings in lexicographic order.
std::vector<PauliString> pauli_basis(int n_qubits);

// Support of [P, Q]: nullopt when the strings commute, otherwise the unique
// string R with [P, Q] proportional to R (nonzero scalar).
std::optional<PauliString> pauli_commutator(const PauliString& p, const PauliString& q);

bool pauli_commutes(const PauliString& p, const PauliString& q);

}  // namespace qclab
