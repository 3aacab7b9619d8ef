#include <random>

#include "doctest.h"
#include "pssc/error.hpp"
#include "pssc/rcci.hpp"

using namespace pssc;

TEST_CASE("operating point follows the intake conditions")
{
  const RcciLinearization nominal = rcci_linearization();
  CHECK(nominal.x_op.CA50 == doctest::Approx(8.0));
  CHECK(nominal.x_op.T_soc == doctest::Approx(900.0));
  CHECK(nominal.x_op.P_soc == doctest::Approx(3000.0));
  CHECK(nominal.x_op.IMEP == doctest::Approx(550.0));
  RcciOperatingPoint hot;
  hot.T_in = 2.0 * 333.1;
  CHECK(rcci_linearization(hot).x_op.T_soc == doctest::Approx(1800.0));
  RcciOperatingPoint bad;
  bad.P_in = 0.0;
  CHECK_THROWS_AS(rcci_linearization(bad), Error);
}

TEST_CASE("the operating point is a fixed point of the surrogate")
{
  const RcciLinearization lin = rcci_linearization();
  const RcciStepResult res = surrogate_rcci_step(lin.x_op, lin.u_op);
  CHECK((res.state.to_vector() - lin.x_op.to_vector()).norm() < 1e-12);
  CHECK(res.outputs.CA50 == doctest::Approx(lin.x_op.CA50));
  CHECK(res.outputs.IMEP == doctest::Approx(lin.x_op.IMEP));
}

TEST_CASE("finite-difference Jacobian of the surrogate matches the linear model")
{
  const RcciLinearization lin = rcci_linearization();
  const Vector x0 = lin.x_op.to_vector();
  const Vector u0 = lin.u_op.to_vector();
  const double h = 1e-5;
  Matrix A_fd(4, 4);
  Matrix B_fd(4, 2);
  for (Index j = 0; j < 4; ++j) {
    Vector xp = x0;
    Vector xm = x0;
    xp(j) += h;
    xm(j) -= h;
    A_fd.col(j) = (surrogate_rcci_step(RcciState::from_vector(xp), lin.u_op).state.to_vector()
                   - surrogate_rcci_step(RcciState::from_vector(xm), lin.u_op).state.to_vector())
                  / (2 * h);
  }
  for (Index j = 0; j < 2; ++j) {
    Vector up = u0;
    Vector um = u0;
    up(j) += h;
    um(j) -= h;
    B_fd.col(j) = (surrogate_rcci_step(lin.x_op, RcciInput::from_vector(up)).state.to_vector()
                   - surrogate_rcci_step(lin.x_op, RcciInput::from_vector(um)).state.to_vector())
                  / (2 * h);
  }
  CHECK((A_fd - lin.model.A()).cwiseAbs().maxCoeff() < 1e-4);
  CHECK((B_fd - lin.model.B()).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("measurement noise has the requested spread")
{
  const RcciLinearization lin = rcci_linearization();
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double std_ca50 = 2.0;
  const double std_imep = 25.0;
  constexpr int draws = 5000;
  double sum[2] = {0, 0};
  double sq[2] = {0, 0};
  for (int i = 0; i < draws; ++i) {
    const Vector noise{{std_ca50 * normal(rng), std_imep * normal(rng)}};
    const RcciStepResult res = surrogate_rcci_step(lin.x_op, lin.u_op, {}, noise);
    const double e[2] = {res.outputs.CA50 - res.state.CA50, res.outputs.IMEP - res.state.IMEP};
    for (int c = 0; c < 2; ++c) {
      sum[c] += e[c];
      sq[c] += e[c] * e[c];
    }
  }
  const double target[2] = {std_ca50, std_imep};
  for (int c = 0; c < 2; ++c) {
    const double mean = sum[c] / draws;
    const double sd = std::sqrt(sq[c] / draws - mean * mean);
    CHECK(std::abs(sd - target[c]) < 0.15 * target[c]);
  }
}

TEST_CASE("large inputs saturate smoothly and stay finite")
{
  const RcciLinearization lin = rcci_linearization();
  RcciInput big = lin.u_op;
  big.SOI += 1000.0;
  RcciInput bigger = lin.u_op;
  bigger.SOI += 2000.0;
  // the injection-timing response is bounded by the saturation span
  const double a = surrogate_rcci_step(lin.x_op, big).state.IMEP;
  const double b = surrogate_rcci_step(lin.x_op, bigger).state.IMEP;
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("states outside the validity range are reported")
{
  const RcciLinearization lin = rcci_linearization();
  RcciState far = lin.x_op;
  far.CA50 = 120.0;
  try {
    surrogate_rcci_step(far, lin.u_op);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfEnvelope);
  }
  RcciInput negative = lin.u_op;
  negative.FQ = -1.0;
  CHECK_THROWS_AS(surrogate_rcci_step(lin.x_op, negative), Error);
}
