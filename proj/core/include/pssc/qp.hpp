#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "pssc/types.hpp"

namespace pssc {

/// minimize 1/2 z'P z + q'z  subject to  A_in z <= b_in,  A_eq z = b_eq.
struct QpProblem {
  Matrix P;
  Vector q;
  Matrix A_in;
  Vector b_in;
  Matrix A_eq;
  Vector b_eq;

  Index dim() const { return q.size(); }
  double objective(const Vector& z) const { return 0.5 * z.dot(P * z) + q.dot(z); }
};

enum class QpStatus { Optimal, Infeasible, Unbounded, IterLimit };

std::string_view to_string(QpStatus status) noexcept;

struct QpSolution {
  QpStatus status = QpStatus::IterLimit;
  Vector z;
  Vector dual_in; ///< >= 0, one per inequality row
  Vector dual_eq;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool phase_one = false;      ///< a feasibility LP was needed to find a start point
  std::vector<Index> active;   ///< inequality rows in the final working set
  Vector farkas_in;            ///< infeasibility certificate when status == Infeasible
  Vector farkas_eq;
};

struct QpWarmStart {
  std::optional<Vector> z;
  std::vector<Index> active;
};

struct QpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int max_iterations = 0; ///< 0 selects a size-dependent cap
  int bland_after = 25;
};

/// Scaled max of stationarity, primal feasibility, dual sign and complementarity violations.
double kkt_residual(const QpProblem& problem, const Vector& z, const Vector& dual_in, const Vector& dual_eq);

/// Dense primal active-set solver with a Phase-1 LP for the starting point.
///
/// Each iteration works in the null space of the current working set; the
/// reduced Hessian is eigen-decomposed so that semidefinite problems (linear
/// slack terms, flat directions) take boundary-seeking steps instead of
/// failing a factorization. The instance holds a workspace and is not
/// thread-safe; results are deterministic for identical inputs and hints.
class QpSolver {
public:
  explicit QpSolver(QpOptions options = {}) : options_(options) {}

  QpSolution solve(const QpProblem& problem, const QpWarmStart* warm = nullptr);

  const QpOptions& options() const { return options_; }

private:
  QpOptions options_;
  Matrix working_; // rows of the current working set
};

/// Plain-text dump of a problem for external cross-checking.
void write_qp(std::ostream& os, const QpProblem& problem);

} // namespace pssc
