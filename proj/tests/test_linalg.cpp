#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qclab/linalg.hpp"
#include "test_support.hpp"

using namespace qclab;

namespace {

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("hs_norm matches the explicit entry sum") {
  Mat a(2, 2);
  a << cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(0, 4);
  CHECK(hs_norm(a) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-14));
  CHECK_THROWS_AS(hs_norm(Mat(2, 3)), DimensionError);
  CHECK_THROWS_AS(hs_norm(Mat(0, 0)), DimensionError);
}

TEST_CASE("unitarity predicates") {
  Rng rng(42);
  const Mat u = qtest::haar_su(3, rng);
  CHECK(is_unitary(u));
  CHECK(is_special_unitary(u));
  CHECK_FALSE(is_unitary(2.0 * u));
  Mat w = Mat::Identity(2, 2);
  w(0, 0) = std::exp(cplx(0.0, 0.3));
  CHECK(is_unitary(w));
  CHECK_FALSE(is_special_unitary(w));
  CHECK_NOTHROW(require_unitary(u));
  CHECK_THROWS_AS(require_unitary(2.0 * u), Error);
  CHECK_THROWS_AS(require_unitary(Mat(2, 3)), DimensionError);
}

TEST_CASE("mat_exp closed forms on Pauli generators") {
  const double t = 0.37;
  const Mat ez = mat_exp(pauli_z(), t);
  CHECK(std::abs(ez(0, 0) - std::exp(cplx(0.0, -t))) < 1e-14);
  CHECK(std::abs(ez(1, 1) - std::exp(cplx(0.0, t))) < 1e-14);
  CHECK(std::abs(ez(0, 1)) < 1e-14);

  const Mat ex = mat_exp(pauli_x(), kPi / 2.0);  // = -i X
  CHECK((ex - cplx(0.0, -1.0) * pauli_x()).cwiseAbs().maxCoeff() < 1e-14);

  Mat nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(mat_exp(nh), Error);
}

TEST_CASE("principal_log round trip and branch behaviour") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 4;
    const Mat u = qtest::haar_su(d, rng);
    const PrincipalLog pl = principal_log(u);
    CHECK(is_hermitian(pl.herm, 1e-12));
    // e^{i herm} recovers u; mat_exp applies e^{-iHt}, so t = -1
    CHECK((mat_exp(pl.herm, -1.0) - u).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(pl.herm.trace().real() - 2.0 * kPi * pl.two_pi_multiple) < 1e-10);
    CHECK(std::abs(pl.traceless().trace()) < 1e-10);
  }

  const Mat minus_one = -Mat::Identity(2, 2);
  CHECK_THROWS_AS(principal_log(minus_one), BranchCutError);

  // center element of SU(4) with phase sum 2*pi
  const Mat center = cplx(0.0, 1.0) * Mat::Identity(4, 4);
  const PrincipalLog pl = principal_log(center);
  CHECK(pl.two_pi_multiple == 1);
}

TEST_CASE("minimal_log lifts phases to zero sum") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 4;
    const Mat u = qtest::haar_su(d, rng);
    const Mat l = minimal_log(u);
    CHECK(is_hermitian(l, 1e-12));
    CHECK(std::abs(l.trace()) < 1e-9);
    CHECK((mat_exp(l, -1.0) - u).cwiseAbs().maxCoeff() < 1e-11);
    // norm realizes the bi-invariant distance from the identity
    CHECK(l.norm() / std::sqrt(static_cast<double>(d)) ==
          doctest::Approx(biinvariant_distance(Mat::Identity(d, d), u)).epsilon(1e-12));
  }

  // branch-cut phases are accepted: -1 in SU(2) lifts to +-pi
  const Mat minus_one = -Mat::Identity(2, 2);
  const Mat lm = minimal_log(minus_one);
  CHECK((mat_exp(lm, -1.0) - minus_one).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(lm.norm() == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-12));

  // center element with k = 1: norm sqrt(3) pi, not the principal 2*pi
  const Mat center = cplx(0.0, 1.0) * Mat::Identity(4, 4);
  const Mat lc = minimal_log(center);
  CHECK(std::abs(lc.trace()) < 1e-9);
  CHECK(lc.norm() == doctest::Approx(std::sqrt(3.0) * kPi).epsilon(1e-12));

  Mat det_phase = Mat::Identity(2, 2);
  det_phase(0, 0) = std::exp(cplx(0.0, 0.3));
  CHECK_THROWS_AS(minimal_log(det_phase), Error);
}

TEST_CASE("biinvariant_distance closed forms on SU(2)") {
  const Mat id = Mat::Identity(2, 2);
  const double theta = 0.7;
  // e^{i theta Z} has phases +-theta, so the distance is theta itself
  const Mat u = mat_exp(pauli_z(), -theta);
  CHECK(biinvariant_distance(id, u) == doctest::Approx(theta).epsilon(1e-13));
  CHECK(biinvariant_distance(id, -id) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(biinvariant_distance(Mat::Identity(4, 4), cplx(0.0, 1.0) * Mat::Identity(4, 4)) ==
        doctest::Approx(std::sqrt(3.0) * kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("biinvariant_distance is a bi-invariant metric") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 4;
    const Mat u = qtest::haar_su(d, rng);
    const Mat v = qtest::haar_su(d, rng);
    const Mat w = qtest::haar_su(d, rng);
    const double duv = biinvariant_distance(u, v);
    CHECK(duv == doctest::Approx(biinvariant_distance(v, u)).epsilon(1e-11));
    CHECK(biinvariant_distance(u * w, v * w) == doctest::Approx(duv).epsilon(1e-10));
    CHECK(biinvariant_distance(w * u, w * v) == doctest::Approx(duv).epsilon(1e-10));
    CHECK(duv <= biinvariant_distance(u, w) + biinvariant_distance(w, v) + 1e-10);
    CHECK(biinvariant_distance(u, u) < 1e-7);
  }
}

TEST_CASE("biinvariant_distance input validation") {
  const Mat id2 = Mat::Identity(2, 2);
  CHECK_THROWS_AS(biinvariant_distance(id2, Mat::Identity(4, 4)), DimensionError);
  Mat w = id2;
  w(0, 0) = std::exp(cplx(0.0, 0.3));  // unitary but det != 1
  CHECK_THROWS_AS(biinvariant_distance(id2, w), Error);
}

TEST_CASE("euler decomposition round trip") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat u = qtest::haar_su(2, rng);
    const EulerAngles ang = euler_decompose(u);
    CHECK(ang.chi2 >= 0.0);
    CHECK(ang.chi2 <= kPi / 2.0 + 1e-12);
    CHECK((euler_compose(ang) - u).cwiseAbs().maxCoeff() < 1e-12);
  }

  // diagonal and anti-diagonal matrices pin chi3 = 0
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = std::exp(cplx(0.0, 0.4));
  diag(1, 1) = std::exp(cplx(0.0, -0.4));
  EulerAngles da = euler_decompose(diag);
  CHECK(da.chi3 == 0.0);
  CHECK(da.chi1 == doctest::Approx(0.4).epsilon(1e-13));
  CHECK((euler_compose(da) - diag).cwiseAbs().maxCoeff() < 1e-13);

  Mat anti = Mat::Zero(2, 2);
  anti(0, 1) = std::exp(cplx(0.0, 0.9));
  anti(1, 0) = -std::exp(cplx(0.0, -0.9));
  EulerAngles aa = euler_decompose(anti);
  CHECK(aa.chi3 == 0.0);
  CHECK(aa.chi2 == doctest::Approx(kPi / 2.0).epsilon(1e-13));
  CHECK((euler_compose(aa) - anti).cwiseAbs().maxCoeff() < 1e-13);

  CHECK_THROWS_AS(euler_decompose(Mat::Identity(3, 3)), DimensionError);
  CHECK_THROWS_AS(euler_decompose(2.0 * Mat::Identity(2, 2)), Error);
}

TEST_CASE("depth_lower_bound exact rational values") {
  const Rational one_qubit = depth_lower_bound(1, 3, 2);
  CHECK(one_qubit.num == 1);
  CHECK(one_qubit.den == 2);
  CHECK(one_qubit.value() == doctest::Approx(0.5));

  const Rational two_qubit = depth_lower_bound(2, 5, 3);  // 15/15 reduces to 1
  CHECK(two_qubit.num == 1);
  CHECK(two_qubit.den == 1);

  const Rational big = depth_lower_bound(10, 7, 13);  // 4^10 - 1 is coprime to 91
  CHECK(big.num == (1ll << 20) - 1);
  CHECK(big.den == 91);

  CHECK_THROWS_AS(depth_lower_bound(0, 1, 1), Error);
  CHECK_THROWS_AS(depth_lower_bound(1, 0, 1), Error);
  CHECK_THROWS_AS(depth_lower_bound(1, 1, 0), Error);
  CHECK_THROWS_AS(depth_lower_bound(32, 1, 1), Error);
}
