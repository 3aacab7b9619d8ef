#pragma once

#include "pssc/invariant_set.hpp"
#include "pssc/model.hpp"
#include "pssc/qp.hpp"

namespace pssc {

/// Where each named quantity lives in the PSSC decision vector
/// z = [x_0 .. x_N | u_0 .. u_{N-1} | yref | t].
struct PsscLayout {
  Index n = 0;
  Index m = 0;
  Index horizon = 0;

  Index x_offset(Index i) const { return i * n; }
  Index u_offset(Index i) const { return (horizon + 1) * n + i * m; }
  Index yref_offset() const { return (horizon + 1) * n + horizon * m; }
  Index slack_offset() const { return yref_offset() + m; }
  Index size() const { return slack_offset() + m; }

  // inequality row blocks, in order
  Index state_rows_per_stage = 0; ///< applied to x_1 .. x_{N-1}
  Index input_rows_per_stage = 0; ///< applied to u_0 .. u_{N-1}
  Index terminal_rows = 0;
  Index state_block() const { return 0; }
  Index input_block() const { return state_block() + (horizon - 1) * state_rows_per_stage; }
  Index terminal_block() const { return input_block() + horizon * input_rows_per_stage; }
  Index slack_block() const { return terminal_block() + terminal_rows; }

  Vector x(const Vector& z, Index i) const { return z.segment(x_offset(i), n); }
  Vector u(const Vector& z, Index i) const { return z.segment(u_offset(i), m); }
  Vector yref(const Vector& z) const { return z.segment(yref_offset(), m); }
  Vector slack(const Vector& z) const { return z.segment(slack_offset(), m); }
};

struct PsscProblem {
  QpProblem qp;
  PsscLayout layout;
  /// Stacked second-order sliding values [xi(k); ..; xi(k+N-1)] = xi_map * z.
  Matrix xi_map;
  double lambda_offset = 0.0;

  /// Sum of squared xi plus lambda_offset * sum(t); equals qp.objective(z).
  double cost(const Vector& z) const;
};

/// Horizon problem: minimize ||Xi||^2 + lambda_offset * ||yref - yd||_1 over
/// states, inputs and the virtual reference, with dynamics, X/U rows on the
/// interior stages, and the terminal pair (x_N, yref) in T.
PsscProblem build_pssc_problem(const LtiModel& model, const SlidingDesign& design, const ConstraintSets& sets,
                               const Polyhedron& terminal_set, const Vector& x0, const Vector& yd_now,
                               Index horizon, double lambda_offset);

/// Previous optimum advanced by one step: trajectories shifted, the tail
/// closed with the terminal law, slacks recomputed for the new reference.
Vector shift_solution(const PsscLayout& layout, const Vector& z, const LtiModel& model,
                      const SlidingDesign& design, const Vector& yd_next);

} // namespace pssc
