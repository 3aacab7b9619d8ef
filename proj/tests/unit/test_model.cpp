#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pssc/error.hpp"
#include "pssc/model.hpp"
#include "systems.hpp"

using namespace pssc;

namespace {

ErrorCode code_of(auto&& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("relative degree of the reference systems")
{
  CHECK(relative_degree(test::scalar_system().model, 0) == 1);
  CHECK(relative_degree(test::double_integrator().model, 0) == 2);
  const LtiModel rcci = test::rcci_system().model;
  CHECK(relative_degree(rcci, 0) == 1);
  CHECK(relative_degree(rcci, 1) == 1);
}

TEST_CASE("relative degree agrees with Markov-parameter enumeration")
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + trial % 4;
    Matrix A = test::random_matrix(rng, n, n);
    Matrix B = test::random_matrix(rng, n, 1);
    Matrix C = Matrix::Zero(1, n);
    // chain structure forces a chosen relative degree
    const Index d = 1 + trial % n;
    A.setZero();
    for (Index i = 0; i + 1 < n; ++i) {
      A(i, i + 1) = 1.0;
    }
    A.row(n - 1) = 0.3 * test::random_matrix(rng, 1, n);
    B.setZero();
    B(n - 1, 0) = 1.0;
    C(0, n - d) = 1.0;
    const LtiModel model(A, B, C);
    const auto oracle = test::brute_force_relative_degree(A, B, C, 0);
    REQUIRE(oracle);
    CHECK(relative_degree(model, 0) == *oracle);
    CHECK(*oracle == d);
  }
}

TEST_CASE("decoupled output has no relative degree")
{
  Matrix A = Matrix::Identity(2, 2);
  Matrix B(2, 1);
  B << 1, 0;
  Matrix C(1, 2);
  C << 0, 1;
  CHECK(code_of([&] { relative_degree(LtiModel(A, B, C), 0); }) == ErrorCode::NoRelativeDegree);
}

TEST_CASE("sliding design of the scalar example")
{
  const auto sys = test::scalar_system(0.2);
  const SlidingDesign d = sys.design();
  CHECK(d.G(0, 0) == doctest::Approx(1.0));
  CHECK(d.Htilde(0, 0) == doctest::Approx(1.0));
  CHECK(d.K(0, 0) == doctest::Approx(-0.7));
  CHECK(d.L(0, 0) == doctest::Approx(1.2));
}

TEST_CASE("sliding design of the double integrator")
{
  const SlidingDesign d = test::double_integrator().design();
  CHECK(d.G(0, 0) == doctest::Approx(1.5));
  CHECK(d.G(0, 1) == doctest::Approx(1.0));
  CHECK(d.Htilde(0, 0) == doctest::Approx(1.5));
  CHECK((d.G * test::double_integrator().model.B())(0, 0) == doctest::Approx(1.0));
  CHECK(d.lookahead() == 1);
}

TEST_CASE("design errors")
{
  const auto sys = test::scalar_system();
  CHECK(code_of([&] { build_sliding_design(sys.model, {{1.0, 2.0}}, sys.beta); }) == ErrorCode::AlphaMismatch);
  CHECK(code_of([&] { build_sliding_design(sys.model, {{1.0}}, Matrix::Constant(1, 1, 1.0)); })
        == ErrorCode::UnstableBeta);
  CHECK(code_of([&] { build_sliding_design(sys.model, {{1.0}, {1.0}}, sys.beta); }) == ErrorCode::AlphaMismatch);
  CHECK(code_of([&] { LtiModel(Matrix::Identity(2, 2), Matrix::Ones(3, 1), Matrix::Ones(1, 2)); })
        == ErrorCode::DimensionMismatch);
}

TEST_CASE("singular GB is rejected")
{
  // two outputs driven by one combination of inputs
  Matrix A = 0.5 * Matrix::Identity(2, 2);
  Matrix B(2, 2);
  B << 1, 1, 1, 1;
  Matrix C = Matrix::Identity(2, 2);
  const LtiModel model(A, B, C);
  CHECK(code_of([&] { build_sliding_design(model, {{1.0}, {1.0}}, Matrix::Zero(2, 2)); })
        == ErrorCode::SingularGB);
}

TEST_CASE("transmission zeros make the Rosenbrock matrix singular")
{
  const LtiModel model = test::rcci_system().model;
  const auto zeros = transmission_zeros(model);
  REQUIRE(zeros.size() == 2);
  for (const auto z : zeros) {
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(6, 6);
    R.topLeftCorner(4, 4) = model.A().cast<std::complex<double>>() - z * Eigen::MatrixXcd::Identity(4, 4);
    R.topRightCorner(4, 2) = model.B().cast<std::complex<double>>();
    R.bottomLeftCorner(2, 4) = model.C().cast<std::complex<double>>();
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
    CHECK(svd.singularValues()(5) / svd.singularValues()(0) < 1e-9);
    CHECK(std::abs(z) < 1.0);
  }
}

TEST_CASE("non-minimum-phase zero produces a warning")
{
  // y = x1 - 2 x2 style zero at 2 outside the unit circle
  Matrix A(2, 2);
  A << 0.0, 1.0, -0.1, 0.2;
  Matrix B(2, 1);
  B << 0.0, 1.0;
  Matrix C(1, 2);
  C << -2.0, 1.0;
  const LtiModel model(A, B, C);
  const auto zeros = transmission_zeros(model);
  REQUIRE(zeros.size() == 1);
  CHECK(std::abs(zeros[0] - std::complex<double>(2.0, 0.0)) < 1e-9);
  // the zero becomes a closed-loop pole of the terminal law, which is unstable
  CHECK(code_of([&] { build_sliding_design(model, {{1.0}}, Matrix::Zero(1, 1)); })
        == ErrorCode::UnstableTerminalLaw);
}

TEST_CASE("terminal law is stable for the shipped systems")
{
  for (const auto& sys : {test::scalar_system(), test::double_integrator(), test::rcci_system()}) {
    const SlidingDesign d = sys.design();
    CHECK(spectral_radius(sys.model.A() + sys.model.B() * d.K) < 1.0);
    CHECK(d.warnings.empty());
  }
}

TEST_CASE("reference window")
{
  const std::vector<Vector> traj{Vector::Constant(1, 1.0), Vector::Constant(1, 2.0), Vector::Constant(1, 3.0)};
  CHECK(reference_window(test::scalar_system().design(), traj, 0)(0) == doctest::Approx(1.0));
  CHECK(reference_window(test::double_integrator().design(), traj, 0)(0) == doctest::Approx(2.5));
  CHECK(code_of([&] { reference_window(test::double_integrator().design(), traj, 2); })
        == ErrorCode::TrajectoryTooShort);
}

TEST_CASE("constraint validation")
{
  auto sys = test::scalar_system();
  validate_constraints(sys.model, sys.sets);
  sys.sets.state = Polyhedron::from_box(Vector::Constant(1, 0.5), Vector::Constant(1, 1.0));
  CHECK_THROWS_AS(validate_constraints(sys.model, sys.sets), Error);
}
