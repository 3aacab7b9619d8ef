#pragma once

#include "pssc/types.hpp"

namespace pssc {

/// maximize c'w  subject to  F w <= g,  E w = h,  w free.
///
/// Solved through its dual (min g'y + h'z, F'y + E'z = c, y >= 0) with a dense
/// two-phase tableau simplex. The dual has one row per primal variable, which
/// keeps the tableau small for the tall, thin systems that polyhedral
/// operations produce.
struct LinearProgram {
  Matrix F;
  Vector g;
  Matrix E;
  Vector h;
  Vector c;

  Index dim() const { return c.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpOptions {
  double tolerance = 1e-10;
  int max_iterations = 0; ///< 0 selects a size-dependent cap
  int bland_after = 50;   ///< consecutive degenerate pivots before switching to Bland's rule
};

struct LpResult {
  LpStatus status = LpStatus::IterLimit;
  Vector w;                 ///< primal point (optimal, or feasible when Unbounded)
  double objective = 0.0;   ///< c'w when Optimal
  Vector ineq_multipliers;  ///< y >= 0 for the F rows
  Vector eq_multipliers;    ///< z for the E rows
  Vector farkas_ineq;       ///< when Infeasible: y >= 0 with F'y + E'z = 0 and g'y + h'z < 0
  Vector farkas_eq;
  int iterations = 0;
};

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options = {});

/// Standard-form simplex: minimize d'v subject to M v = b, v >= 0.
struct StandardFormResult {
  LpStatus status = LpStatus::IterLimit;
  Vector v;
  Vector multipliers; ///< pi with d - M'pi >= 0 at optimality
  Vector ray;         ///< when Unbounded: M ray = 0, ray >= 0, d'ray < 0
  int iterations = 0;
};

StandardFormResult solve_standard_form(const Matrix& M, const Vector& b, const Vector& d,
                                       const LpOptions& options = {});

} // namespace pssc
