#include "pssc/controller.hpp"

#include <chrono>

#include "pssc/error.hpp"
#include "pssc/lp.hpp"
#include "pssc/sliding.hpp"

namespace pssc {

PsscController::PsscController(LtiModel model, SlidingDesign design, ConstraintSets sets,
                               std::shared_ptr<const TrackingInvariantSet> invariant_set, PsscConfig config)
    : model_(std::move(model)), design_(std::move(design)), sets_(std::move(sets)),
      set_(std::move(invariant_set)), config_(config), solver_(config.qp)
{
  if (!set_) {
    throw Error(ErrorCode::InvalidArgument, "PSSC controller needs a terminal invariant set");
  }
  if (set_->T.dim() != model_.states() + model_.inputs()) {
    throw Error(ErrorCode::DimensionMismatch, "terminal set dimension does not match the model");
  }
  if (config_.horizon < 1) {
    throw Error(ErrorCode::InvalidArgument, "prediction horizon must be at least 1");
  }
  if (!(config_.lambda_offset > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "offset weight must be positive");
  }
}

void PsscController::reset()
{
  last_z_.reset();
  last_active_.clear();
  last_yref_.reset();
}

PsscStepResult PsscController::step(const Vector& x_hat, const Vector& yd_now)
{
  const auto start = std::chrono::steady_clock::now();
  PsscStepResult out;

  const PsscProblem prob = build_pssc_problem(model_, design_, sets_, set_->T, x_hat, yd_now,
                                              config_.horizon, config_.lambda_offset);
  const PsscLayout& lay = prob.layout;

  QpWarmStart warm;
  if (last_z_) {
    // shift, then re-propagate from the new estimate so the dynamics hold exactly
    Vector z = shift_solution(lay, *last_z_, model_, design_, yd_now);
    z.segment(lay.x_offset(0), lay.n) = x_hat;
    for (Index i = 0; i < lay.horizon; ++i) {
      z.segment(lay.x_offset(i + 1), lay.n) = model_.step(lay.x(z, i), lay.u(z, i));
    }
    warm.z = std::move(z);
    warm.active = last_active_;
  }

  const QpSolution sol = solver_.solve(prob.qp, last_z_ ? &warm : nullptr);
  out.solver_status = sol.status;
  out.qp_iterations = sol.iterations;

  if (sol.status == QpStatus::Optimal) {
    out.u = lay.u(sol.z, 0);
    out.u_requested = out.u;
    out.y_virtual = lay.yref(sol.z);
    out.predicted_x.resize(lay.n, lay.horizon + 1);
    for (Index i = 0; i <= lay.horizon; ++i) {
      out.predicted_x.col(i) = lay.x(sol.z, i);
    }
    out.predicted_u.resize(lay.m, lay.horizon);
    for (Index i = 0; i < lay.horizon; ++i) {
      out.predicted_u.col(i) = lay.u(sol.z, i);
    }
    out.xi = prob.xi_map.topRows(lay.m) * sol.z;
    out.cost = prob.cost(sol.z);
    last_z_ = sol.z;
    last_active_ = sol.active;
    last_yref_ = out.y_virtual;
  } else {
    out.fallback = true;
    const Vector yref = last_yref_ ? *last_yref_ : yd_now;
    out.y_virtual = yref;
    out.u_requested = terminal_control(design_, x_hat, yref);
    out.u = sets_.input.box_bounds() ? saturate(out.u_requested, sets_.input) : out.u_requested;
    last_z_.reset();
    last_active_.clear();
  }

  out.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool input_was_clipped(const Vector& requested, const Vector& applied)
{
  const double scale = 1.0 + requested.cwiseAbs().maxCoeff();
  return (applied - requested).cwiseAbs().maxCoeff() > 1e-7 * scale;
}

DsmcStepResult dsmc_step(const SlidingDesign& design, const LtiModel& model, const Polyhedron& input_set,
                         const Vector& x_hat, const Vector& href_now, const Vector& href_next)
{
  DsmcStepResult out;
  out.u_requested = dsmc_control(design, model, x_hat, href_now, href_next);
  out.u = saturate(out.u_requested, input_set);
  out.saturated = input_was_clipped(out.u_requested, out.u);
  return out;
}

Vector closest_admissible_setpoint(const LtiModel& model, const ConstraintSets& sets,
                                   const Polyhedron& terminal_set, const Vector& y_d)
{
  const Index n = model.states();
  const Index m = model.inputs();
  if (y_d.size() != m || terminal_set.dim() != n + m) {
    throw Error(ErrorCode::DimensionMismatch, "setpoint or terminal set does not match the model");
  }
  if (terminal_set.is_empty()) {
    throw Error(ErrorCode::InfeasibleTarget, "terminal set is empty");
  }
  // variables v = [x_s, u_s, y_s, t]
  const Index xs = 0;
  const Index us = n;
  const Index ys = n + m;
  const Index ts = n + 2 * m;
  const Index nv = n + 3 * m;

  LinearProgram lp;
  lp.c = Vector::Zero(nv);
  lp.c.segment(ts, m).setConstant(-1.0);

  lp.E = Matrix::Zero(n + m, nv);
  lp.h = Vector::Zero(n + m);
  lp.E.block(0, xs, n, n) = model.A() - Matrix::Identity(n, n);
  lp.E.block(0, us, n, m) = model.B();
  lp.E.block(n, xs, m, n) = model.C();
  lp.E.block(n, ys, m, m) = -Matrix::Identity(m, m);

  const Polyhedron& X = sets.state;
  const Polyhedron& U = sets.input;
  const Polyhedron& T = terminal_set;
  const Index rows = X.rows() + U.rows() + T.rows() + 2 * m;
  lp.F = Matrix::Zero(rows, nv);
  lp.g = Vector::Zero(rows);
  Index r = 0;
  lp.F.block(r, xs, X.rows(), n) = X.F();
  lp.g.segment(r, X.rows()) = X.g();
  r += X.rows();
  lp.F.block(r, us, U.rows(), m) = U.F();
  lp.g.segment(r, U.rows()) = U.g();
  r += U.rows();
  lp.F.block(r, xs, T.rows(), n) = T.F().leftCols(n);
  lp.F.block(r, ys, T.rows(), m) = T.F().rightCols(m);
  lp.g.segment(r, T.rows()) = T.g();
  r += T.rows();
  lp.F.block(r, ys, m, m).setIdentity();
  lp.F.block(r, ts, m, m) = -Matrix::Identity(m, m);
  lp.g.segment(r, m) = y_d;
  r += m;
  lp.F.block(r, ys, m, m) = -Matrix::Identity(m, m);
  lp.F.block(r, ts, m, m) = -Matrix::Identity(m, m);
  lp.g.segment(r, m) = -y_d;

  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) {
    throw Error(ErrorCode::InfeasibleTarget, "no admissible steady state for the requested setpoint");
  }
  return res.w.segment(ys, m);
}

} // namespace pssc
