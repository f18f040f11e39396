#pragma once

// Right-invariant penalty metrics on SU(2^N) in Pauli coordinates: easy
// directions carry weight 1, the rest weight q (or are forbidden when
// q = infinity), and piecewise-constant control paths integrate to unitaries
// under dU/dt = -i H(t) U.

#include <limits>

#include "qclab/flag.hpp"

namespace qclab {

struct PenaltyMetric {
  int n_qubits = 0;
  double q = 1.0;  // penalty weight; infinity means horizontal-only
  Distribution easy;
  std::vector<PauliString> basis;  // pauli_basis(n_qubits), fixed order
  std::vector<Mat> dense_basis;    // dense realizations, aligned with basis
  std::vector<bool> is_easy;       // aligned with basis
  std::vector<double> weight;      // 1 or q, aligned with basis

  bool horizontal_only() const { return std::isinf(q); }
  int n_dirs() const { return static_cast<int>(basis.size()); }

  static PenaltyMetric make(int n_qubits, double q, const Distribution& easy);
};

// <h1, h2> = sum_a w_a h1_a h2_a over Pauli coordinates.  In horizontal-only
// mode any weight on a hard coordinate above tol is an error.
double metric_inner(const Eigen::VectorXd& h1, const Eigen::VectorXd& h2,
                    const PenaltyMetric& m, double tol = 1e-12);

// m segments of equal duration 1/m; row k holds the Pauli coefficients of
// the (constant) Hamiltonian on segment k.
struct ControlPath {
  Eigen::MatrixXd coeffs;  // segments x n_dirs

  int segments() const { return static_cast<int>(coeffs.rows()); }
};

// Hermitian matrix sum_a h_a P_a for one coefficient row.
Mat assemble_hamiltonian(const Eigen::VectorXd& h, const PenaltyMetric& m);

// Ordered product of segment propagators applied to start:
// exp(-i H_m /m) ... exp(-i H_1 /m) * start.
Mat path_endpoint(const ControlPath& p, const PenaltyMetric& m, const Mat& start);

struct PathCost {
  double length;  // sum dt * sqrt(<H_k, H_k>)
  double energy;  // sum dt * <H_k, H_k>
};

// Length and energy; length^2 <= energy with equality at constant speed.
PathCost path_cost(const ControlPath& p, const PenaltyMetric& m);

}  // namespace qclab
