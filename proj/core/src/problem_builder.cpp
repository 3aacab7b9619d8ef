#include "pssc/problem_builder.hpp"

#include "pssc/error.hpp"

namespace pssc {

double PsscProblem::cost(const Vector& z) const
{
  return (xi_map * z).squaredNorm() + lambda_offset * layout.slack(z).sum();
}

PsscProblem build_pssc_problem(const LtiModel& model, const SlidingDesign& design, const ConstraintSets& sets,
                               const Polyhedron& terminal_set, const Vector& x0, const Vector& yd_now,
                               Index horizon, double lambda_offset)
{
  const Index n = model.states();
  const Index m = model.inputs();
  if (horizon < 1) {
    throw Error(ErrorCode::InvalidArgument, "prediction horizon must be at least 1");
  }
  if (x0.size() != n || yd_now.size() != m || terminal_set.dim() != n + m) {
    throw Error(ErrorCode::DimensionMismatch, "PSSC problem inputs do not match the model");
  }
  if (!x0.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "state estimate is not finite");
  }

  PsscLayout lay;
  lay.n = n;
  lay.m = m;
  lay.horizon = horizon;
  lay.state_rows_per_stage = sets.state.rows();
  lay.input_rows_per_stage = sets.input.rows();
  lay.terminal_rows = terminal_set.rows();
  const Index nv = lay.size();

  PsscProblem prob;
  prob.layout = lay;
  prob.lambda_offset = lambda_offset;

  // xi(i) = G x_{i+1} + beta G x_i - (I + beta) Htilde yref,  i = 0..N-1
  const Matrix betaG = design.beta * design.G;
  const Matrix yref_gain = -(Matrix::Identity(m, m) + design.beta) * design.Htilde;
  prob.xi_map = Matrix::Zero(horizon * m, nv);
  for (Index i = 0; i < horizon; ++i) {
    auto rows = prob.xi_map.middleRows(i * m, m);
    rows.middleCols(lay.x_offset(i + 1), n) = design.G;
    rows.middleCols(lay.x_offset(i), n) = betaG;
    rows.middleCols(lay.yref_offset(), m) = yref_gain;
  }

  QpProblem& qp = prob.qp;
  qp.P = 2.0 * prob.xi_map.transpose() * prob.xi_map;
  qp.q = Vector::Zero(nv);
  qp.q.segment(lay.slack_offset(), m).setConstant(lambda_offset);

  // equalities: x_0 = x0, x_{i+1} = A x_i + B u_i
  qp.A_eq = Matrix::Zero((horizon + 1) * n, nv);
  qp.b_eq = Vector::Zero((horizon + 1) * n);
  qp.A_eq.block(0, lay.x_offset(0), n, n).setIdentity();
  qp.b_eq.head(n) = x0;
  for (Index i = 0; i < horizon; ++i) {
    const Index r = (i + 1) * n;
    qp.A_eq.block(r, lay.x_offset(i + 1), n, n).setIdentity();
    qp.A_eq.block(r, lay.x_offset(i), n, n) = -model.A();
    qp.A_eq.block(r, lay.u_offset(i), n, m) = -model.B();
  }

  const Index ni = lay.slack_block() + 2 * m;
  qp.A_in = Matrix::Zero(ni, nv);
  qp.b_in = Vector::Zero(ni);
  const Polyhedron& X = sets.state;
  const Polyhedron& U = sets.input;
  for (Index i = 1; i < horizon; ++i) {
    const Index r = lay.state_block() + (i - 1) * X.rows();
    qp.A_in.block(r, lay.x_offset(i), X.rows(), n) = X.F();
    qp.b_in.segment(r, X.rows()) = X.g();
  }
  for (Index i = 0; i < horizon; ++i) {
    const Index r = lay.input_block() + i * U.rows();
    qp.A_in.block(r, lay.u_offset(i), U.rows(), m) = U.F();
    qp.b_in.segment(r, U.rows()) = U.g();
  }
  {
    const Index r = lay.terminal_block();
    qp.A_in.block(r, lay.x_offset(horizon), terminal_set.rows(), n) = terminal_set.F().leftCols(n);
    qp.A_in.block(r, lay.yref_offset(), terminal_set.rows(), m) = terminal_set.F().rightCols(m);
    qp.b_in.segment(r, terminal_set.rows()) = terminal_set.g();
  }
  {
    // yref - t <= yd,  -yref - t <= -yd
    const Index r = lay.slack_block();
    qp.A_in.block(r, lay.yref_offset(), m, m).setIdentity();
    qp.A_in.block(r, lay.slack_offset(), m, m) = -Matrix::Identity(m, m);
    qp.b_in.segment(r, m) = yd_now;
    qp.A_in.block(r + m, lay.yref_offset(), m, m) = -Matrix::Identity(m, m);
    qp.A_in.block(r + m, lay.slack_offset(), m, m) = -Matrix::Identity(m, m);
    qp.b_in.segment(r + m, m) = -yd_now;
  }
  return prob;
}

Vector shift_solution(const PsscLayout& lay, const Vector& z, const LtiModel& model,
                      const SlidingDesign& design, const Vector& yd_next)
{
  Vector out(lay.size());
  const Vector yref = lay.yref(z);
  const Vector x_last = lay.x(z, lay.horizon);
  const Vector u_tail = design.K * x_last + design.L * yref;
  for (Index i = 0; i < lay.horizon; ++i) {
    out.segment(lay.x_offset(i), lay.n) = lay.x(z, i + 1);
  }
  out.segment(lay.x_offset(lay.horizon), lay.n) = model.A() * x_last + model.B() * u_tail;
  for (Index i = 0; i + 1 < lay.horizon; ++i) {
    out.segment(lay.u_offset(i), lay.m) = lay.u(z, i + 1);
  }
  out.segment(lay.u_offset(lay.horizon - 1), lay.m) = u_tail;
  out.segment(lay.yref_offset(), lay.m) = yref;
  out.segment(lay.slack_offset(), lay.m) = (yref - yd_next).cwiseAbs();
  return out;
}

} // namespace pssc
