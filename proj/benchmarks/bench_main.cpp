#include <benchmark/benchmark.h>

#include "pssc/controller.hpp"
#include "pssc/invariant_set.hpp"
#include "pssc/problem_builder.hpp"
#include "pssc/qp.hpp"
#include "pssc/rcci.hpp"

namespace {

using namespace pssc;

struct RcciFixture {
  LtiModel model = rcci_linearization().model;
  SlidingDesign design;
  ConstraintSets sets;

  RcciFixture() : design(build_sliding_design(model, {{1.0}, {0.04}}, -0.2 * Matrix::Identity(2, 2)))
  {
    const RcciLinearization lin = rcci_linearization();
    Vector xl(4), xu(4), ul(2), uu(2);
    xl << -2.0, 750.0, 2000.0, 150.0;
    xu << 18.0, 1050.0, 4500.0, 1000.0;
    ul << -80.0, 15.0;
    uu << -30.0, 40.0;
    sets.state = Polyhedron::from_box(xl - lin.x_op.to_vector(), xu - lin.x_op.to_vector());
    sets.input = Polyhedron::from_box(ul - lin.u_op.to_vector(), uu - lin.u_op.to_vector());
  }
};

const RcciFixture& fixture()
{
  static const RcciFixture f;
  return f;
}

const TrackingInvariantSet& rcci_set()
{
  static const TrackingInvariantSet set = [] {
    InvariantSetOptions opts;
    opts.lambda = 0.99;
    opts.compute_projection = false;
    return max_invariant_set(augment(fixture().model, fixture().design, fixture().sets), opts);
  }();
  return set;
}

void BM_InvariantSetRcci(benchmark::State& state)
{
  const auto& f = fixture();
  const AugmentedSystem sys = augment(f.model, f.design, f.sets);
  InvariantSetOptions opts;
  opts.lambda = 0.99;
  opts.compute_projection = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_invariant_set(sys, opts));
  }
}
BENCHMARK(BM_InvariantSetRcci)->Unit(benchmark::kMillisecond);

void BM_PsscQpColdStart(benchmark::State& state)
{
  const auto& f = fixture();
  const Index horizon = state.range(0);
  Vector x0(4);
  x0 << 1.0, 10.0, 20.0, -30.0;
  Vector yd(2);
  yd << 0.0, -100.0;
  const PsscProblem prob = build_pssc_problem(f.model, f.design, f.sets, rcci_set().T, x0, yd, horizon, 100.0);
  QpSolver solver;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.solve(prob.qp));
  }
}
BENCHMARK(BM_PsscQpColdStart)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PsscControllerStep(benchmark::State& state)
{
  const auto& f = fixture();
  auto set = std::make_shared<TrackingInvariantSet>(rcci_set());
  PsscController ctrl(f.model, f.design, f.sets, set);
  Vector yd(2);
  yd << 0.0, -100.0;
  Vector x = Vector::Zero(4);
  for (auto _ : state) {
    const PsscStepResult res = ctrl.step(x, yd);
    x = f.model.step(x, res.u);
  }
}
BENCHMARK(BM_PsscControllerStep)->Unit(benchmark::kMicrosecond);

void BM_PolyhedronMinimize(benchmark::State& state)
{
  const Polyhedron& T = rcci_set().T;
  const Polyhedron stacked(
      (Matrix(2 * T.rows(), T.dim()) << T.F(), T.F()).finished(),
      (Vector(2 * T.rows()) << T.g(), T.g() * 1.1).finished());
  for (auto _ : state) {
    benchmark::DoNotOptimize(stacked.minimize());
  }
}
BENCHMARK(BM_PolyhedronMinimize)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
