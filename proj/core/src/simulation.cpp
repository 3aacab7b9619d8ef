#include "pssc/simulation.hpp"

#include <chrono>
#include <random>

#include "pssc/error.hpp"
#include "pssc/kalman.hpp"
#include "pssc/sliding.hpp"

namespace pssc {

std::string_view to_string(ControllerKind kind) noexcept
{
  return kind == ControllerKind::Pssc ? "pssc" : "dsmc";
}

std::string_view to_string(PlantKind kind) noexcept
{
  return kind == PlantKind::Linear ? "linear" : "surrogate";
}

std::string_view to_string(EstimatorKind kind) noexcept
{
  return kind == EstimatorKind::Kalman ? "kalman" : "none";
}

std::string_view to_string(StepStatus status) noexcept
{
  switch (status) {
  case StepStatus::Ok: return "ok";
  case StepStatus::Saturated: return "saturated";
  case StepStatus::Fallback: return "fallback";
  case StepStatus::FallbackSaturated: return "fallback_saturated";
  }
  return "unknown";
}

Vector Scenario::reference_at(Index k) const
{
  if (reference.empty()) {
    throw Error(ErrorCode::InvalidArgument, "scenario has no reference breakpoints");
  }
  const Vector* value = &reference.front().y;
  for (const auto& bp : reference) {
    if (bp.cycle > k) {
      break;
    }
    value = &bp.y;
  }
  return *value;
}

namespace {

Polyhedron shift(const Polyhedron& P, const Vector& origin)
{
  return Polyhedron(P.F(), P.g() - P.F() * origin);
}

} // namespace

ControlSetup design_setup(const Scenario& scenario)
{
  LtiModel model(scenario.A, scenario.B, scenario.C);
  SlidingDesign design = build_sliding_design(model, scenario.alpha, scenario.beta);
  ConstraintSets sets{shift(scenario.state_set, scenario.x_op), shift(scenario.input_set, scenario.u_op)};
  return ControlSetup{std::move(model), std::move(design), std::move(sets), nullptr, scenario.C * scenario.x_op};
}

ControlSetup prepare(const Scenario& scenario, bool with_invariant_set)
{
  ControlSetup setup = design_setup(scenario);
  validate_constraints(setup.model, setup.sets);
  if (with_invariant_set) {
    auto set = std::make_shared<TrackingInvariantSet>(scenario_invariant_set(scenario, setup, false));
    if (set->status == InvariantSetStatus::Empty) {
      throw Error(ErrorCode::InfeasibleTarget, "terminal invariant set is empty");
    }
    if (set->status == InvariantSetStatus::NotFinitelyDetermined) {
      throw Error(ErrorCode::NotFinitelyDetermined,
                  "terminal set not determined within " + std::to_string(scenario.max_set_iterations)
                      + " iterations; lower lambda_tighten or raise max_set_iterations");
    }
    setup.invariant_set = std::move(set);
  }
  return setup;
}

TrackingInvariantSet scenario_invariant_set(const Scenario& scenario, const ControlSetup& setup,
                                            bool compute_projection)
{
  InvariantSetOptions opts;
  opts.lambda = scenario.lambda_tighten;
  opts.max_iterations = scenario.max_set_iterations;
  opts.compute_projection = compute_projection;
  return max_invariant_set(augment(setup.model, setup.design, setup.sets), opts);
}

SimTrace simulate(const Scenario& scenario)
{
  return simulate(scenario, prepare(scenario, scenario.controller == ControllerKind::Pssc));
}

SimTrace simulate(const Scenario& scenario, const ControlSetup& setup)
{
  const LtiModel& model = setup.model;
  const SlidingDesign& design = setup.design;
  const Index n = model.states();
  const Index m = model.outputs();
  if (scenario.cycles < 1) {
    throw Error(ErrorCode::InvalidArgument, "scenario needs at least one cycle");
  }
  if (scenario.plant == PlantKind::Surrogate && !scenario.rcci_model) {
    throw Error(ErrorCode::InvalidArgument, "the surrogate plant requires the rcci model");
  }
  if (scenario.initial_state.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "initial state has wrong dimension");
  }

  std::optional<PsscController> pssc;
  if (scenario.controller == ControllerKind::Pssc) {
    if (!setup.invariant_set) {
      throw Error(ErrorCode::InvalidArgument, "PSSC run needs a setup prepared with the terminal set");
    }
    PsscConfig cfg;
    cfg.horizon = scenario.horizon;
    cfg.lambda_offset = scenario.lambda_offset;
    pssc.emplace(model, design, setup.sets, setup.invariant_set, cfg);
  }

  std::optional<KalmanFilter> kf;
  const Vector dx0 = scenario.initial_state - scenario.x_op;
  if (scenario.estimator == EstimatorKind::Kalman) {
    kf.emplace(model, Matrix(scenario.kalman.process_noise.asDiagonal()),
               Matrix(scenario.kalman.measurement_noise.asDiagonal()), dx0,
               Matrix(scenario.kalman.initial_covariance.asDiagonal()));
  }

  std::mt19937_64 rng(scenario.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  SimTrace trace;
  trace.scenario = scenario.name;
  trace.controller = scenario.controller;
  trace.plant = scenario.plant;
  trace.seed = scenario.seed;
  trace.state_names = scenario.state_names;
  trace.output_names = scenario.output_names;
  trace.input_names = scenario.input_names;
  trace.records.reserve(static_cast<std::size_t>(scenario.cycles));

  // sliding reference windows in deviation coordinates
  std::vector<Vector> refs;
  const Index window = design.lookahead() + 2;
  auto dref = [&](Index k) { return Vector(scenario.reference_at(k) - setup.y_op); };
  auto href = [&](Index k) {
    refs.clear();
    for (Index j = 0; j < window; ++j) {
      refs.push_back(dref(k + j));
    }
    return reference_window(design, refs, 0);
  };

  Vector x = scenario.initial_state; // physical
  for (Index k = 0; k < scenario.cycles; ++k) {
    StepRecord rec;
    rec.k = k;
    rec.x_true = x;
    const Vector dx = x - scenario.x_op;
    rec.y_true = scenario.C * x;
    rec.y = rec.y_true;
    if (scenario.noise_enabled) {
      for (Index i = 0; i < m; ++i) {
        rec.y(i) += scenario.output_noise_std(i) * normal(rng);
      }
    }

    Vector dx_hat = dx;
    if (kf) {
      kf->update(rec.y - setup.y_op);
      dx_hat = kf->state();
    }
    rec.x_hat = scenario.x_op + dx_hat;
    rec.y_ref = scenario.reference_at(k);
    const Vector dyd = rec.y_ref - setup.y_op;

    Vector du;
    Vector du_req;
    Vector h_now;
    Vector h_next;
    bool fallback = false;
    const auto start = std::chrono::steady_clock::now();
    if (pssc) {
      const PsscStepResult res = pssc->step(dx_hat, dyd);
      du = res.u;
      du_req = res.u_requested;
      fallback = res.fallback;
      rec.qp_status = res.solver_status;
      rec.y_virtual = setup.y_op + res.y_virtual;
      h_now = design.Htilde * res.y_virtual;
      h_next = h_now;
    } else {
      h_now = href(k);
      h_next = href(k + 1);
      const DsmcStepResult res = dsmc_step(design, model, setup.sets.input, dx_hat, h_now, h_next);
      du = res.u;
      du_req = res.u_requested;
      rec.y_virtual = rec.y_ref;
    }
    if (scenario.record_timing) {
      rec.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    const bool saturated = input_was_clipped(du_req, du);
    rec.status = fallback ? (saturated ? StepStatus::FallbackSaturated : StepStatus::Fallback)
                          : (saturated ? StepStatus::Saturated : StepStatus::Ok);
    rec.u = scenario.u_op + du;
    rec.u_requested = scenario.u_op + du_req;

    Vector x_next;
    if (scenario.plant == PlantKind::Linear) {
      x_next = scenario.x_op + model.step(dx, du);
    } else {
      const RcciStepResult res = surrogate_rcci_step(RcciState::from_vector(x), RcciInput::from_vector(rec.u),
                                                     scenario.operating_point);
      x_next = res.state.to_vector();
    }
    if (!x_next.allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "plant state became non-finite at cycle " + std::to_string(k));
    }
    if (kf) {
      kf->predict(du);
    }

    rec.s = sliding_value(design, dx, h_now);
    const Vector s_next = sliding_value(design, x_next - scenario.x_op, h_next);
    rec.xi = second_order_value(design, s_next, rec.s);
    trace.records.push_back(std::move(rec));
    x = x_next;
  }
  return trace;
}

} // namespace pssc
