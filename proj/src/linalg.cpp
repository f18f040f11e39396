#include "qclab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qclab {

double hs_norm(const Mat& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("hs_norm: matrix must be square and nonempty");
  }
  return a.norm();  // Frobenius norm equals [Tr(A^dag A)]^(1/2)
}

bool is_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const Mat gram = u.adjoint() * u;
  return (gram - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_special_unitary(const Mat& u, double tol) {
  if (!is_unitary(u, tol)) return false;
  return std::abs(u.determinant() - cplx(1.0, 0.0)) <= 10.0 * tol;
}

bool is_hermitian(const Mat& h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw DimensionError("expected a square matrix");
  }
  if (!is_unitary(u, tol)) {
    throw Error("matrix is not unitary within tolerance");
  }
}

void require_hermitian(const Mat& h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw DimensionError("expected a square matrix");
  }
  if (!is_hermitian(h, tol)) {
    throw Error("matrix is not Hermitian within tolerance");
  }
}

Mat mat_exp(const Mat& h, double t) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd lam = es.eigenvalues();
  const Mat& q = es.eigenvectors();
  Eigen::VectorXcd phase(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    phase(j) = std::exp(cplx(0.0, -lam(j) * t));
  }
  return q * phase.asDiagonal() * q.adjoint();
}

namespace {

// Eigenphases of a unitary on the principal branch via complex Schur; a
// unitary matrix is normal, so the Schur form is diagonal to machine
// precision and the Schur vectors are an orthonormal eigenbasis.
struct UnitaryEigs {
  Eigen::VectorXd phases;
  Mat vectors;
};

UnitaryEigs unitary_eigs(const Mat& u) {
  require_unitary(u);
  Eigen::ComplexSchur<Mat> schur(u);
  if (schur.info() != Eigen::Success) {
    throw Error("Schur decomposition failed");
  }
  const Mat& t = schur.matrixT();
  UnitaryEigs out;
  out.phases.resize(u.rows());
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    out.phases(j) = std::arg(t(j, j));  // in (-pi, pi]
  }
  out.vectors = schur.matrixU();
  return out;
}

}  // namespace

Mat PrincipalLog::traceless() const {
  const double d = static_cast<double>(herm.rows());
  const double shift = 2.0 * kPi * static_cast<double>(two_pi_multiple) / d;
  return herm - shift * Mat::Identity(herm.rows(), herm.cols());
}

PrincipalLog principal_log(const Mat& u, double branch_tol) {
  UnitaryEigs eig = unitary_eigs(u);
  for (Eigen::Index j = 0; j < eig.phases.size(); ++j) {
    if (kPi - std::abs(eig.phases(j)) < branch_tol) {
      throw BranchCutError("principal_log: eigenvalue at the -1 branch cut");
    }
  }
  PrincipalLog out;
  Mat d = eig.phases.cast<cplx>().asDiagonal();
  out.herm = eig.vectors * d * eig.vectors.adjoint();
  out.herm = 0.5 * (out.herm + out.herm.adjoint().eval());
  out.two_pi_multiple = static_cast<int>(std::llround(eig.phases.sum() / (2.0 * kPi)));
  return out;
}

Mat minimal_log(const Mat& u, double tol) {
  if (!is_special_unitary(u, tol)) {
    throw Error("minimal_log: input must be special unitary");
  }
  UnitaryEigs eig = unitary_eigs(u);
  const Eigen::Index d = eig.phases.size();
  // det = 1 makes the principal phases sum to 2*pi*k; the zero-sum lift of
  // least norm shifts whole turns off the k most extreme phases one each.
  int k = static_cast<int>(std::llround(eig.phases.sum() / (2.0 * kPi)));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return eig.phases(a) < eig.phases(b); });
  std::size_t hi = order.size();
  while (k > 0) {
    eig.phases(order[--hi]) -= 2.0 * kPi;
    --k;
  }
  std::size_t lo = 0;
  while (k < 0) {
    eig.phases(order[lo++]) += 2.0 * kPi;
    ++k;
  }
  Mat diag = eig.phases.cast<cplx>().asDiagonal();
  Mat out = eig.vectors * diag * eig.vectors.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

double biinvariant_distance(const Mat& u, const Mat& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("biinvariant_distance: dimension mismatch");
  }
  if (!is_special_unitary(u, 1e-8) || !is_special_unitary(v, 1e-8)) {
    throw Error("biinvariant_distance: inputs must be special unitary");
  }
  const Mat l = minimal_log(u.adjoint() * v, 3e-8);
  return l.norm() / std::sqrt(static_cast<double>(u.rows()));
}

EulerAngles euler_decompose(const Mat& u, double tol) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw DimensionError("euler_decompose: expected a 2x2 matrix");
  }
  if (!is_special_unitary(u, 1e-10)) {
    throw Error("euler_decompose: matrix is not special unitary");
  }
  // SU(2) entries: u = [[a, b], [-conj(b), conj(a)]] with
  // a = e^{i(chi1+chi3)} cos(chi2), b = e^{i(chi1-chi3)} sin(chi2).
  const cplx a = u(0, 0);
  const cplx b = u(0, 1);
  EulerAngles ang{0.0, 0.0, 0.0};
  ang.chi2 = std::atan2(std::abs(b), std::abs(a));  // in [0, pi/2]
  if (std::abs(b) <= tol) {
    ang.chi1 = std::arg(a);
    ang.chi3 = 0.0;
  } else if (std::abs(a) <= tol) {
    ang.chi1 = std::arg(b);
    ang.chi3 = 0.0;
  } else {
    ang.chi1 = 0.5 * (std::arg(a) + std::arg(b));
    ang.chi3 = 0.5 * (std::arg(a) - std::arg(b));
  }
  return ang;
}

Mat euler_compose(const EulerAngles& angles) {
  const cplx i(0.0, 1.0);
  Mat z1(2, 2), y(2, 2), z2(2, 2);
  z1 << std::exp(i * angles.chi1), 0.0, 0.0, std::exp(-i * angles.chi1);
  y << std::cos(angles.chi2), std::sin(angles.chi2), -std::sin(angles.chi2),
      std::cos(angles.chi2);
  z2 << std::exp(i * angles.chi3), 0.0, 0.0, std::exp(-i * angles.chi3);
  return z1 * y * z2;
}

Rational depth_lower_bound(int n_qubits, long long k_params, long long w_per_step) {
  if (n_qubits < 1) throw Error("depth_lower_bound: n_qubits must be >= 1");
  if (k_params < 1 || w_per_step < 1) {
    throw Error("depth_lower_bound: k_params and w_per_step must be >= 1");
  }
  if (n_qubits > 31) {
    throw Error("depth_lower_bound: 4^n_qubits overflows 64-bit arithmetic");
  }
  long long num = (1ll << (2 * n_qubits)) - 1;  // 4^n - 1
  long long den;
  if (__builtin_mul_overflow(k_params, w_per_step, &den)) {
    throw Error("depth_lower_bound: k_params * w_per_step overflows");
  }
  const long long g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

}  // namespace qclab
