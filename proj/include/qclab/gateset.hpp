#pragma once

// Gate sets: finite lists of special-unitary generators searched as a free
// alphabet.  Includes the rational-cosine SU(2) pair, the corner embedding
// of SU(2) blocks into SU(d), and locally generated multi-qubit sets.

#include <string>
#include <vector>

#include "qclab/linalg.hpp"

namespace qclab {

struct Gate {
  std::string label;
  Mat u;
};

struct GateSet {
  std::vector<Gate> gates;  // generators; inverses are implicit in searches
  int dim = 0;
  bool algebraic = false;  // metadata: entries are exact algebraic numbers

  int size() const { return static_cast<int>(gates.size()); }
  const Mat& matrix(int g) const { return gates[static_cast<std::size_t>(g)].u; }
};

// Validates unitarity, unit determinant, distinct labels, and that no
// generator equals +1 or -1.
GateSet make_gateset(std::vector<Gate> gates, bool algebraic);

// The pair {exp(i pi alpha Z), exp(i pi alpha Y)} with cos(pi alpha) given as
// a reduced rational p/q.  Rational cosines other than 0, +-1/2, +-1 give
// irrational alpha/pi, and the pair generates a free group.
GateSet build_su2_gateset(long long cos_num, long long cos_den);

// Corner embedding of a 2x2 block into dimension d at position j (2 <= j <= d):
// identity on the first j-2 and last d-j coordinates, m on the middle two.
Mat embed_gate(const Mat& m, int j, int d);

enum class LocalityPattern { kRingNearest, kAllToAll };

// For every interacting qubit pair under the pattern, the six corner
// embeddings beta_j(m), j in {2,3,4}, m in the SU(2) pair, lifted to the
// pair's SU(4) factor inside SU(2^N).  Dense construction, so N <= 3.
GateSet build_local_gateset(int n_qubits, long long cos_num, long long cos_den,
                            LocalityPattern pattern);

std::vector<std::pair<int, int>> interaction_pairs(int n_qubits, LocalityPattern pattern);

}  // namespace qclab
