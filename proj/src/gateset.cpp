#include "qclab/gateset.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "qclab/pauli.hpp"

namespace qclab {

GateSet make_gateset(std::vector<Gate> gates, bool algebraic) {
  if (gates.empty()) throw Error("make_gateset: need at least one generator");
  const Eigen::Index d = gates.front().u.rows();
  std::set<std::string> labels;
  for (const Gate& g : gates) {
    if (g.u.rows() != d || g.u.cols() != d) {
      throw DimensionError("make_gateset: generators must share one dimension");
    }
    if (!is_special_unitary(g.u, 1e-10)) {
      throw Error("make_gateset: generator '" + g.label + "' is not special unitary");
    }
    const Mat id = Mat::Identity(d, d);
    if ((g.u - id).cwiseAbs().maxCoeff() < 1e-10 ||
        (g.u + id).cwiseAbs().maxCoeff() < 1e-10) {
      throw Error("make_gateset: generator '" + g.label + "' equals +1 or -1");
    }
    if (!labels.insert(g.label).second) {
      throw Error("make_gateset: duplicate label '" + g.label + "'");
    }
  }
  GateSet out;
  out.gates = std::move(gates);
  out.dim = static_cast<int>(d);
  out.algebraic = algebraic;
  return out;
}

GateSet build_su2_gateset(long long cos_num, long long cos_den) {
  if (cos_den == 0) throw InvalidAngleError("build_su2_gateset: zero denominator");
  if (cos_den < 0) {
    cos_num = -cos_num;
    cos_den = -cos_den;
  }
  const long long g = std::gcd(cos_num < 0 ? -cos_num : cos_num, cos_den);
  if (g > 0) {
    cos_num /= g;
    cos_den /= g;
  }
  // cos(pi alpha) must be rational in (-1, 1) and outside {0, +-1/2}; those
  // values are the only rational cosines of rational angles, and the free
  // product structure fails exactly there.
  if (cos_num == 0) throw InvalidAngleError("build_su2_gateset: cos = 0 is excluded");
  if (cos_den == 1) throw InvalidAngleError("build_su2_gateset: |cos| >= 1 is excluded");
  if (cos_den == 2) throw InvalidAngleError("build_su2_gateset: cos = +-1/2 is excluded");
  if (std::llabs(cos_num) >= cos_den) {
    throw InvalidAngleError("build_su2_gateset: |cos| must be < 1");
  }
  const double c = static_cast<double>(cos_num) / static_cast<double>(cos_den);
  const double s = std::sqrt(1.0 - c * c);
  const cplx i(0.0, 1.0);
  Mat gz(2, 2), gy(2, 2);
  gz << c + i * s, 0.0, 0.0, c - i * s;  // exp(i pi alpha Z)
  gy << c, s, -s, c;                     // exp(i pi alpha Y)
  return make_gateset({Gate{"gZ", gz}, Gate{"gY", gy}}, true);
}

Mat embed_gate(const Mat& m, int j, int d) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw DimensionError("embed_gate: block must be 2x2");
  }
  if (d < 2) throw DimensionError("embed_gate: dimension must be >= 2");
  if (j < 2 || j > d) throw IndexError("embed_gate: position j must satisfy 2 <= j <= d");
  Mat out = Mat::Identity(d, d);
  out.block(j - 2, j - 2, 2, 2) = m;
  return out;
}

std::vector<std::pair<int, int>> interaction_pairs(int n_qubits, LocalityPattern pattern) {
  if (n_qubits < 2) throw DimensionError("interaction_pairs: need at least 2 qubits");
  std::vector<std::pair<int, int>> pairs;
  if (pattern == LocalityPattern::kAllToAll || n_qubits == 2) {
    for (int a = 0; a < n_qubits; ++a) {
      for (int b = a + 1; b < n_qubits; ++b) pairs.emplace_back(a, b);
    }
  } else {
    for (int a = 0; a < n_qubits; ++a) {
      const int b = (a + 1) % n_qubits;
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  }
  return pairs;
}

namespace {

// Lift a 4x4 operator acting on qubits (a, b) to the full 2^n register.
Mat lift_pair_operator(const Mat& op4, int a, int b, int n_qubits) {
  const int dim = 1 << n_qubits;
  Mat out = Mat::Zero(dim, dim);
  const int sa = n_qubits - 1 - a;  // bit position of qubit a (site 0 = MSB)
  const int sb = n_qubits - 1 - b;
  for (int col = 0; col < dim; ++col) {
    const int ca = (col >> sa) & 1;
    const int cb = (col >> sb) & 1;
    const int col4 = (ca << 1) | cb;
    const int base = col & ~((1 << sa) | (1 << sb));
    for (int row4 = 0; row4 < 4; ++row4) {
      const cplx v = op4(row4, col4);
      if (v == cplx(0.0, 0.0)) continue;
      const int row = base | (((row4 >> 1) & 1) << sa) | ((row4 & 1) << sb);
      out(row, col) = v;
    }
  }
  return out;
}

}  // namespace

GateSet build_local_gateset(int n_qubits, long long cos_num, long long cos_den,
                            LocalityPattern pattern) {
  if (n_qubits < 2) throw DimensionError("build_local_gateset: need at least 2 qubits");
  if (n_qubits > kDenseQubitCap) {
    throw DimensionCapError("build_local_gateset: dense construction capped at 3 qubits");
  }
  const GateSet su2 = build_su2_gateset(cos_num, cos_den);
  std::vector<Gate> gates;
  for (const auto& [a, b] : interaction_pairs(n_qubits, pattern)) {
    for (int j = 2; j <= 4; ++j) {
      for (const Gate& g : su2.gates) {
        const Mat op4 = embed_gate(g.u, j, 4);
        Gate lifted;
        lifted.label = "p" + std::to_string(a) + std::to_string(b) + "_b" +
                       std::to_string(j) + "_" + g.label;
        lifted.u = (n_qubits == 2) ? op4 : lift_pair_operator(op4, a, b, n_qubits);
        gates.push_back(std::move(lifted));
      }
    }
  }
  return make_gateset(std::move(gates), true);
}

}  // namespace qclab
