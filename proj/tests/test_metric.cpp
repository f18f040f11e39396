#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "qclab/metric.hpp"
#include "test_support.hpp"

using namespace qclab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<PauliString> strings_from(std::initializer_list<const char*> letters) {
  std::vector<PauliString> out;
  for (const char* s : letters) out.push_back(PauliString::from_letters(s));
  return out;
}

PenaltyMetric yz_metric(double q) {
  return PenaltyMetric::make(1, q, explicit_distribution(1, strings_from({"Y", "Z"})));
}

PenaltyMetric full_metric() {
  return PenaltyMetric::make(1, 1.0, build_distribution(1, DistributionPattern::kAllToAll));
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("penalty metric aligns weights with the Pauli basis") {
  const PenaltyMetric m = yz_metric(2.5);
  CHECK(m.n_qubits == 1);
  CHECK(m.q == 2.5);
  CHECK_FALSE(m.horizontal_only());
  REQUIRE(m.n_dirs() == 3);
  CHECK(m.basis[0].str() == "X");
  CHECK(m.basis[1].str() == "Y");
  CHECK(m.basis[2].str() == "Z");
  CHECK(m.is_easy == std::vector<bool>{false, true, true});
  CHECK(m.weight == std::vector<double>{2.5, 1.0, 1.0});
  for (int a = 0; a < 3; ++a) {
    CHECK((m.dense_basis[static_cast<std::size_t>(a)] - m.basis[static_cast<std::size_t>(a)].dense())
              .norm() == 0.0);
  }
}

TEST_CASE("penalty metric input validation") {
  const Distribution yz = explicit_distribution(1, strings_from({"Y", "Z"}));
  CHECK(yz_metric(kInf).horizontal_only());
  CHECK_THROWS_AS(PenaltyMetric::make(1, 0.5, yz), Error);
  CHECK_THROWS_AS(PenaltyMetric::make(1, -1.0, yz), Error);
  CHECK_THROWS_AS(PenaltyMetric::make(0, 1.0, yz), DimensionCapError);
  CHECK_THROWS_AS(PenaltyMetric::make(4, 1.0, yz), DimensionCapError);
  CHECK_THROWS_AS(PenaltyMetric::make(2, 1.0, yz), DimensionError);
}

TEST_CASE("metric inner product weights hard coordinates by q") {
  const PenaltyMetric m = yz_metric(2.5);
  const Eigen::VectorXd h1 = vec3(1.0, 2.0, 3.0);
  const Eigen::VectorXd h2 = vec3(4.0, 5.0, 6.0);
  CHECK(metric_inner(h1, h2, m) == doctest::Approx(38.0).epsilon(1e-14));
  CHECK(metric_inner(h2, h1, m) == doctest::Approx(38.0).epsilon(1e-14));
  CHECK(metric_inner(vec3(1.0, 0.0, 0.0), vec3(1.0, 0.0, 0.0), yz_metric(3.0)) ==
        doctest::Approx(3.0));
  Eigen::VectorXd short_vec(2);
  short_vec << 1.0, 2.0;
  CHECK_THROWS_AS(metric_inner(short_vec, h2, m), DimensionError);
}

TEST_CASE("horizontal-only mode rejects hard components above tolerance") {
  const PenaltyMetric m = yz_metric(kInf);
  const Eigen::VectorXd ok = vec3(0.0, 1.0, 2.0);
  CHECK(metric_inner(ok, ok, m) == doctest::Approx(5.0).epsilon(1e-14));
  const Eigen::VectorXd slack = vec3(1e-13, 1.0, 2.0);
  CHECK(metric_inner(slack, slack, m) == doctest::Approx(5.0).epsilon(1e-12));
  const Eigen::VectorXd bad = vec3(1e-3, 1.0, 2.0);
  CHECK_THROWS_AS(metric_inner(bad, bad, m), HorizontalityViolationError);
}

TEST_CASE("hamiltonian assembly sums weighted Pauli matrices") {
  const PenaltyMetric m = full_metric();
  const Mat h = assemble_hamiltonian(vec3(0.3, -0.7, 1.1), m);
  Mat expected(2, 2);
  expected << 1.1, cplx(0.3, 0.7), cplx(0.3, -0.7), -1.1;
  CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::VectorXd short_vec(2);
  short_vec << 1.0, 2.0;
  CHECK_THROWS_AS(assemble_hamiltonian(short_vec, m), DimensionError);
}

TEST_CASE("path endpoint multiplies segment propagators in path order") {
  const PenaltyMetric m = full_metric();
  ControlPath p;
  p.coeffs = Eigen::MatrixXd::Zero(2, 3);
  p.coeffs(0, 0) = kPi;  // first segment: pi * X
  p.coeffs(1, 2) = kPi;  // second segment: pi * Z
  const Mat u = path_endpoint(p, m, Mat::Identity(2, 2));
  // exp(-i pi Z / 2) exp(-i pi X / 2) = (-iZ)(-iX) = -ZX
  Mat expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-13);
  // the reversed product lands at +ZX instead
  CHECK((u + expected).cwiseAbs().maxCoeff() > 1.0);
}

TEST_CASE("path endpoint edge cases and validation") {
  const PenaltyMetric m = full_metric();
  ControlPath empty;
  empty.coeffs = Eigen::MatrixXd::Zero(0, 3);
  const Mat start = (Mat(2, 2) << cplx(0, 1), 0, 0, cplx(0, -1)).finished();
  CHECK((path_endpoint(empty, m, start) - start).norm() == 0.0);

  ControlPath single;
  single.coeffs = Eigen::MatrixXd::Zero(1, 3);
  single.coeffs << 0.3, -0.7, 1.1;
  const Mat h = assemble_hamiltonian(vec3(0.3, -0.7, 1.1), m);
  CHECK((path_endpoint(single, m, Mat::Identity(2, 2)) - mat_exp(h, 1.0))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  CHECK_THROWS_AS(path_endpoint(single, m, Mat::Identity(3, 3)), DimensionError);
  ControlPath narrow;
  narrow.coeffs = Eigen::MatrixXd::Zero(1, 2);
  CHECK_THROWS_AS(path_endpoint(narrow, m, Mat::Identity(2, 2)), DimensionError);
}

TEST_CASE("path cost integrates length and energy") {
  const PenaltyMetric m = full_metric();
  ControlPath p;
  p.coeffs = Eigen::MatrixXd::Zero(1, 3);
  p.coeffs(0, 0) = 2.0;
  const PathCost c = path_cost(p, m);
  CHECK(c.length == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.energy == doctest::Approx(4.0).epsilon(1e-14));

  // a stop-and-go path of the same length costs strictly more energy
  ControlPath stop_go;
  stop_go.coeffs = Eigen::MatrixXd::Zero(2, 3);
  stop_go.coeffs(0, 0) = 2.0;
  const PathCost c2 = path_cost(stop_go, m);
  CHECK(c2.length == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c2.energy == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c2.length * c2.length <= c2.energy + 1e-15);

  ControlPath narrow;
  narrow.coeffs = Eigen::MatrixXd::Zero(1, 2);
  CHECK_THROWS_AS(path_cost(narrow, m), DimensionError);
}
