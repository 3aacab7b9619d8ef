#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pssc/controller.hpp"
#include "pssc/error.hpp"
#include "pssc/sliding.hpp"
#include "systems.hpp"

using namespace pssc;

TEST_CASE("closest admissible setpoint of the scalar plant clamps to the state box")
{
  const auto sys = test::scalar_system(0.2);
  const auto set = test::terminal_set(sys);
  auto closest = [&](double y) {
    return closest_admissible_setpoint(sys.model, sys.sets, set->T, Vector::Constant(1, y))(0);
  };
  CHECK(closest(3.0) == doctest::Approx(1.0));
  CHECK(closest(-2.0) == doctest::Approx(-1.0));
  CHECK(closest(0.25) == doctest::Approx(0.25));
}

TEST_CASE("closest admissible setpoint matches the steady-state interval oracle")
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    auto sys = test::double_integrator();
    // leaky variant: steady states need nonzero velocity and input
    const double leak = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
    const double damp = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
    sys.model = LtiModel((Matrix(2, 2) << leak, 1.0, 0.0, damp).finished(), sys.model.B(), sys.model.C());
    const auto set = test::terminal_set(sys);
    REQUIRE(set->status == InvariantSetStatus::FinitelyDetermined);
    const auto interval = test::steady_state_interval(sys.model.A(), sys.model.B(), sys.model.C(),
                                                      sys.sets.state.F(), sys.sets.state.g(),
                                                      sys.sets.input.F(), sys.sets.input.g());
    const double yd = std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
    const double expected = std::clamp(yd, interval.lower, interval.upper);
    const double got = closest_admissible_setpoint(sys.model, sys.sets, set->T, Vector::Constant(1, yd))(0);
    CHECK(got == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("empty terminal set makes the setpoint search fail")
{
  const auto sys = test::scalar_system(0.2);
  const Polyhedron empty = Polyhedron::certified_empty(2, Vector::Ones(1));
  CHECK_THROWS_AS(closest_admissible_setpoint(sys.model, sys.sets, empty, Vector::Zero(1)), Error);
}

TEST_CASE("one-step horizon reproduces the discrete sliding-mode law away from constraints")
{
  std::mt19937_64 rng(41);
  for (const auto& sys : {test::scalar_system(0.2), test::double_integrator(), test::rcci_system()}) {
    const SlidingDesign design = sys.design();
    PsscConfig cfg;
    cfg.horizon = 1;
    PsscController ctrl(sys.model, design, sys.sets, test::terminal_set(sys, 0.99), cfg);
    const Index n = sys.model.states();
    const Index m = sys.model.inputs();
    for (int trial = 0; trial < 10; ++trial) {
      ctrl.reset();
      const Vector x = 1e-3 * test::random_matrix(rng, n, 1);
      const Vector yd = 1e-3 * test::random_matrix(rng, m, 1);
      const PsscStepResult res = ctrl.step(x, yd);
      REQUIRE(res.solver_status == QpStatus::Optimal);
      const Vector h = design.Htilde * yd;
      const Vector u_dsmc = dsmc_control(design, sys.model, x, h, h);
      CHECK((res.u - u_dsmc).norm() <= 1e-6 * (1.0 + u_dsmc.norm()));
      CHECK((res.y_virtual - yd).norm() <= 1e-9);
    }
  }
}

TEST_CASE("PSSC keeps the nominal closed loop feasible and inside the constraints")
{
  std::mt19937_64 rng(43);
  const auto sys = test::double_integrator();
  const auto set = test::terminal_set(sys);
  PsscController ctrl(sys.model, sys.design(), sys.sets, set);
  for (int run = 0; run < 10; ++run) {
    ctrl.reset();
    Vector x = test::uniform_in_box(rng, Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
    for (int k = 0; k < 40; ++k) {
      const Vector yd = Vector::Constant(1, k < 20 ? 8.0 : -3.0);
      const PsscStepResult res = ctrl.step(x, yd);
      REQUIRE(res.solver_status == QpStatus::Optimal);
      CHECK_FALSE(res.fallback);
      CHECK(sys.sets.input.contains(res.u, 1e-8));
      x = sys.model.step(x, res.u);
      CHECK(sys.sets.state.contains(x, 1e-7));
    }
    // the unreachable 8 is replaced by the admissible -3 in the second half
    CHECK(x(0) == doctest::Approx(-3.0).epsilon(1e-4));
  }
}

TEST_CASE("infeasible horizon problem falls back to the clipped terminal law")
{
  const auto sys = test::scalar_system(0.2);
  PsscController ctrl(sys.model, sys.design(), sys.sets, test::terminal_set(sys));
  // far outside X, no admissible input reaches T in one step
  const PsscStepResult res = ctrl.step(Vector::Constant(1, 20.0), Vector::Zero(1));
  CHECK(res.fallback);
  CHECK(res.solver_status == QpStatus::Infeasible);
  CHECK(res.u(0) == doctest::Approx(-1.0));
  CHECK(input_was_clipped(res.u_requested, res.u));
}

TEST_CASE("DSMC clipping is reported only when the input moved")
{
  const auto sys = test::scalar_system(0.2);
  const SlidingDesign design = sys.design();
  const DsmcStepResult inside = dsmc_step(design, sys.model, sys.sets.input, Vector::Constant(1, 0.1),
                                          Vector::Constant(1, 0.2), Vector::Constant(1, 0.2));
  CHECK_FALSE(inside.saturated);
  CHECK(inside.u == inside.u_requested);
  const DsmcStepResult outside = dsmc_step(design, sys.model, sys.sets.input, Vector::Zero(1),
                                           Vector::Constant(1, 5.0), Vector::Constant(1, 5.0));
  CHECK(outside.saturated);
  CHECK(outside.u(0) == doctest::Approx(1.0));
  CHECK_FALSE(input_was_clipped(Vector::Constant(1, 1.0), Vector::Constant(1, 1.0 - 1e-12)));
}
