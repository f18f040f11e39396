#include "qclab/metric.hpp"

#include <cmath>
#include <set>

namespace qclab {

PenaltyMetric PenaltyMetric::make(int n_qubits, double q, const Distribution& easy) {
  if (n_qubits < 1 || n_qubits > kDenseQubitCap) {
    throw DimensionCapError("PenaltyMetric: dense realization capped at 3 qubits");
  }
  if (!(q >= 1.0)) throw Error("PenaltyMetric: q must be >= 1 (or infinity)");
  if (easy.n_qubits != n_qubits) {
    throw DimensionError("PenaltyMetric: distribution qubit count mismatch");
  }
  PenaltyMetric m;
  m.n_qubits = n_qubits;
  m.q = q;
  m.easy = easy;
  m.basis = pauli_basis(n_qubits);
  m.dense_basis.reserve(m.basis.size());
  for (const PauliString& p : m.basis) m.dense_basis.push_back(p.dense());
  m.is_easy.assign(m.basis.size(), false);
  const std::set<PauliString> easy_set(easy.strings.begin(), easy.strings.end());
  for (std::size_t i = 0; i < m.basis.size(); ++i) {
    m.is_easy[i] = easy_set.contains(m.basis[i]);
  }
  m.weight.resize(m.basis.size());
  for (std::size_t i = 0; i < m.basis.size(); ++i) {
    m.weight[i] = m.is_easy[i] ? 1.0 : q;
  }
  return m;
}

double metric_inner(const Eigen::VectorXd& h1, const Eigen::VectorXd& h2,
                    const PenaltyMetric& m, double tol) {
  if (h1.size() != m.n_dirs() || h2.size() != m.n_dirs()) {
    throw DimensionError("metric_inner: coefficient size mismatch");
  }
  double acc = 0.0;
  for (int a = 0; a < m.n_dirs(); ++a) {
    const std::size_t ia = static_cast<std::size_t>(a);
    if (!m.is_easy[ia]) {
      if (m.horizontal_only()) {
        if (std::abs(h1(a)) > tol || std::abs(h2(a)) > tol) {
          throw HorizontalityViolationError(
              "metric_inner: hard coordinate in horizontal-only mode");
        }
        continue;
      }
      acc += m.q * h1(a) * h2(a);
    } else {
      acc += h1(a) * h2(a);
    }
  }
  return acc;
}

Mat assemble_hamiltonian(const Eigen::VectorXd& h, const PenaltyMetric& m) {
  if (h.size() != m.n_dirs()) {
    throw DimensionError("assemble_hamiltonian: coefficient size mismatch");
  }
  const int dim = 1 << m.n_qubits;
  Mat out = Mat::Zero(dim, dim);
  for (int a = 0; a < m.n_dirs(); ++a) {
    if (h(a) == 0.0) continue;
    out += h(a) * m.dense_basis[static_cast<std::size_t>(a)];
  }
  return out;
}

Mat path_endpoint(const ControlPath& p, const PenaltyMetric& m, const Mat& start) {
  const int dim = 1 << m.n_qubits;
  if (start.rows() != dim || start.cols() != dim) {
    throw DimensionError("path_endpoint: start dimension mismatch");
  }
  if (p.coeffs.cols() != m.n_dirs()) {
    throw DimensionError("path_endpoint: coefficient columns mismatch");
  }
  if (p.segments() == 0) return start;
  const double dt = 1.0 / static_cast<double>(p.segments());
  Mat u = start;
  for (int k = 0; k < p.segments(); ++k) {
    const Mat hk = assemble_hamiltonian(p.coeffs.row(k).transpose(), m);
    u = (mat_exp(hk, dt) * u).eval();
  }
  return u;
}

PathCost path_cost(const ControlPath& p, const PenaltyMetric& m) {
  if (p.coeffs.cols() != m.n_dirs()) {
    throw DimensionError("path_cost: coefficient columns mismatch");
  }
  const double dt = p.segments() > 0 ? 1.0 / static_cast<double>(p.segments()) : 0.0;
  PathCost out{0.0, 0.0};
  for (int k = 0; k < p.segments(); ++k) {
    const Eigen::VectorXd row = p.coeffs.row(k).transpose();
    const double g = metric_inner(row, row, m);
    out.length += dt * std::sqrt(std::max(g, 0.0));
    out.energy += dt * g;
  }
  return out;
}

}  // namespace qclab
