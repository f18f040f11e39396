#pragma once

// Dense linear algebra over the unitary groups: Hilbert-Schmidt geometry,
// exponential/logarithm between unitaries and Hermitian generators, Euler
// factorization on SU(2), and the parameter-counting depth bound.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qclab/errors.hpp"

namespace qclab {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Hilbert-Schmidt norm [Tr(A^dag A)]^(1/2) of a square matrix.
double hs_norm(const Mat& a);

bool is_unitary(const Mat& u, double tol = 1e-10);
bool is_special_unitary(const Mat& u, double tol = 1e-10);
bool is_hermitian(const Mat& h, double tol = 1e-10);
void require_unitary(const Mat& u, double tol = 1e-10);
void require_hermitian(const Mat& h, double tol = 1e-10);

// e^{-iHt} for Hermitian H, via eigendecomposition.
Mat mat_exp(const Mat& h, double t = 1.0);

// Principal logarithm of a unitary: Hermitian L with eigenphases in (-pi, pi]
// and e^{iL} = U.  For det(U) = 1 the phases sum to a multiple of 2*pi; that
// multiple is recorded so the traceless representative can be recovered.
struct PrincipalLog {
  Mat herm;             // eigenphases in (-pi, pi], e^{i herm} = U
  int two_pi_multiple;  // Tr(herm) = 2*pi*k when det(U) = 1
  Mat traceless() const;
};
PrincipalLog principal_log(const Mat& u, double branch_tol = 1e-12);

// Hermitian logarithm of minimal Hilbert-Schmidt norm: M with e^{iM} = U and
// the eigenphase multiset lifted to zero sum.  Phases start on the principal
// branch; when they sum to 2*pi*k with k != 0, a whole turn is shifted off
// each of the k most extreme phases (the cheapest integer redistribution, as
// moving 4*pi off a single phase inside (-pi, pi] is always dearer).
// Eigenphases exactly at the branch cut are accepted here, unlike
// principal_log which must refuse them to keep the logarithm single-valued.
// Requires det(U) = 1; on degenerate eigenspaces split by the shift, the
// result is one of several equal-norm minimizers.
Mat minimal_log(const Mat& u, double tol = 1e-8);

// Bi-invariant geodesic distance on SU(d): [sum_j theta_j^2 / d]^(1/2) from
// the zero-sum eigenphases theta_j of U^dag V, i.e. the normalized
// Hilbert-Schmidt norm of minimal_log(U^dag V).
double biinvariant_distance(const Mat& u, const Mat& v);

// U = e^{i chi1 Z} e^{i chi2 Y} e^{i chi3 Z} with chi2 in [0, pi/2] and
// chi3 = 0 whenever U is diagonal or anti-diagonal.
struct EulerAngles {
  double chi1;
  double chi2;
  double chi3;
};
EulerAngles euler_decompose(const Mat& u, double tol = 1e-12);
Mat euler_compose(const EulerAngles& angles);

// Exact rational value of the dimension-counting depth bound
// (4^n_qubits - 1) / (k_params * w_per_step), reduced to lowest terms.
struct Rational {
  long long num;
  long long den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Rational depth_lower_bound(int n_qubits, long long k_params, long long w_per_step);

}  // namespace qclab
