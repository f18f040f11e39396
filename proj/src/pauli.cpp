#include "qclab/pauli.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace qclab {

namespace {

int shift_for_site(int n_qubits, int site) { return 2 * (n_qubits - 1 - site); }

Mat letter_matrix(int letter) {
  Mat m(2, 2);
  const cplx i(0.0, 1.0);
  switch (letter) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t code)
    : n_qubits_(n_qubits), code_(code) {
  if (n_qubits < 1 || n_qubits > kMaxPauliQubits) {
    throw DimensionError("PauliString: n_qubits out of range");
  }
  if (n_qubits < 32 && code >= (1ull << (2 * n_qubits))) {
    throw IndexError("PauliString: code does not fit n_qubits");
  }
}

PauliString PauliString::from_letters(std::string_view letters) {
  if (letters.empty()) throw DimensionError("PauliString: empty letter string");
  std::uint64_t code = 0;
  for (char c : letters) {
    int v;
    switch (c) {
      case 'I': v = 0; break;
      case 'X': v = 1; break;
      case 'Y': v = 2; break;
      case 'Z': v = 3; break;
      default: throw IndexError("PauliString: letters must be one of I, X, Y, Z");
    }
    code = (code << 2) | static_cast<std::uint64_t>(v);
  }
  return PauliString(static_cast<int>(letters.size()), code);
}

int PauliString::letter(int site) const {
  if (site < 0 || site >= n_qubits_) throw IndexError("PauliString: site out of range");
  return static_cast<int>((code_ >> shift_for_site(n_qubits_, site)) & 3ull);
}

int PauliString::weight() const {
  int w = 0;
  for (int s = 0; s < n_qubits_; ++s) {
    if (letter(s) != 0) ++w;
  }
  return w;
}

std::string PauliString::str() const {
  static const char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string out(static_cast<std::size_t>(n_qubits_), 'I');
  for (int s = 0; s < n_qubits_; ++s) {
    out[static_cast<std::size_t>(s)] = kNames[letter(s)];
  }
  return out;
}

Mat PauliString::dense() const {
  if (n_qubits_ > kDenseQubitCap) {
    throw DimensionCapError("PauliString::dense: capped at 3 qubits");
  }
  Mat out = letter_matrix(letter(0));
  for (int s = 1; s < n_qubits_; ++s) {
    out = Eigen::kroneckerProduct(out, letter_matrix(letter(s))).eval();
  }
  return out;
}

std::vector<PauliString> pauli_basis(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxPauliQubits) {
    throw DimensionError("pauli_basis: n_qubits out of range");
  }
  const std::uint64_t total = 1ull << (2 * n_qubits);
  std::vector<PauliString> out;
  out.reserve(total - 1);
  for (std::uint64_t code = 1; code < total; ++code) {
    out.emplace_back(n_qubits, code);
  }
  return out;
}

bool pauli_commutes(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw DimensionError("pauli_commutes: qubit count mismatch");
  }
  // Single-site Paulis anticommute iff both are non-identity and different;
  // the strings commute iff the number of anticommuting sites is even.
  int anti = 0;
  for (int s = 0; s < p.n_qubits(); ++s) {
    const int a = p.letter(s);
    const int b = q.letter(s);
    if (a != 0 && b != 0 && a != b) ++anti;
  }
  return (anti % 2) == 0;
}

std::optional<PauliString> pauli_commutator(const PauliString& p, const PauliString& q) {
  if (pauli_commutes(p, q)) return std::nullopt;
  // Site-wise products multiply up to phases, and base-4 digits of the
  // product string are the XOR of the factors' digits.
  return PauliString(p.n_qubits(), p.code() ^ q.code());
}

}  // namespace qclab
