#pragma once

#include <memory>
#include <optional>

#include "pssc/invariant_set.hpp"
#include "pssc/problem_builder.hpp"
#include "pssc/qp.hpp"

namespace pssc {

struct PsscConfig {
  Index horizon = 5;
  double lambda_offset = 100.0;
  QpOptions qp;
};

struct PsscStepResult {
  Vector u;                ///< input sent to the plant
  Vector u_requested;      ///< before clipping (differs only on fallback)
  Vector y_virtual;        ///< virtual reference used this step
  QpStatus solver_status = QpStatus::Optimal;
  bool fallback = false;   ///< QP failed; saturated terminal law applied instead
  Matrix predicted_x;      ///< n x (N+1), empty on fallback
  Matrix predicted_u;      ///< m x N, empty on fallback
  Vector xi;               ///< predicted xi(k), empty on fallback
  double cost = 0.0;
  int qp_iterations = 0;
  double solve_ms = 0.0;
};

/// Receding-horizon tracking controller around the sliding design.
///
/// Keeps the previous optimum to warm-start the next solve. When the QP
/// reports anything but Optimal, it applies the terminal law with the last
/// accepted virtual reference, clipped to the input box.
class PsscController {
public:
  PsscController(LtiModel model, SlidingDesign design, ConstraintSets sets,
                 std::shared_ptr<const TrackingInvariantSet> invariant_set, PsscConfig config = {});

  PsscStepResult step(const Vector& x_hat, const Vector& yd_now);

  /// Forget warm-start data and the last virtual reference.
  void reset();

  const PsscConfig& config() const { return config_; }
  const SlidingDesign& design() const { return design_; }

private:
  LtiModel model_;
  SlidingDesign design_;
  ConstraintSets sets_;
  std::shared_ptr<const TrackingInvariantSet> set_;
  PsscConfig config_;
  QpSolver solver_;
  std::optional<Vector> last_z_;
  std::vector<Index> last_active_;
  std::optional<Vector> last_yref_;
};

struct DsmcStepResult {
  Vector u_requested;
  Vector u;
  bool saturated = false;
};

/// True when clipping moved the input by more than round-off.
bool input_was_clipped(const Vector& requested, const Vector& applied);

/// Discrete sliding-mode law followed by clipping to the input box.
DsmcStepResult dsmc_step(const SlidingDesign& design, const LtiModel& model, const Polyhedron& input_set,
                         const Vector& x_hat, const Vector& href_now, const Vector& href_next);

/// Output closest (1-norm) to y_d among steady states (x_s, u_s) with
/// x_s in X, u_s in U and (x_s, y_s) in T. Throws InfeasibleTarget when no
/// admissible steady state exists.
Vector closest_admissible_setpoint(const LtiModel& model, const ConstraintSets& sets,
                                   const Polyhedron& terminal_set, const Vector& y_d);

} // namespace pssc
