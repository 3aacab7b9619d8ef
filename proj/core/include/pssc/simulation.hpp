#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pssc/controller.hpp"
#include "pssc/invariant_set.hpp"
#include "pssc/model.hpp"
#include "pssc/rcci.hpp"

namespace pssc {

enum class ControllerKind { Pssc, Dsmc };
enum class PlantKind { Linear, Surrogate };
enum class EstimatorKind { Kalman, None };

std::string_view to_string(ControllerKind kind) noexcept;
std::string_view to_string(PlantKind kind) noexcept;
std::string_view to_string(EstimatorKind kind) noexcept;

/// Reference value held from `cycle` until the next breakpoint.
struct ReferenceBreakpoint {
  Index cycle = 0;
  Vector y;
};

struct KalmanSettings {
  Vector process_noise;       ///< diagonal of Q
  Vector measurement_noise;   ///< diagonal of R
  Vector initial_covariance;  ///< diagonal of P0
};

/// Fully resolved closed-loop experiment. All vectors are in physical units;
/// the controllers work on deviations from (x_op, u_op), y_op = C x_op.
struct Scenario {
  std::string name;
  bool rcci_model = false;
  RcciOperatingPoint operating_point;
  Matrix A;
  Matrix B;
  Matrix C;
  Vector x_op;
  Vector u_op;
  std::vector<std::string> state_names;
  std::vector<std::string> output_names;
  std::vector<std::string> input_names;

  AlphaCoefficients alpha;
  Matrix beta;
  Polyhedron state_set; ///< physical units
  Polyhedron input_set; ///< physical units

  Index horizon = 5;
  double lambda_offset = 100.0;
  double lambda_tighten = 1.0;
  int max_set_iterations = 500;

  Index cycles = 0;
  std::vector<ReferenceBreakpoint> reference;
  std::uint64_t seed = 0;
  bool noise_enabled = false;
  Vector output_noise_std;

  ControllerKind controller = ControllerKind::Pssc;
  PlantKind plant = PlantKind::Linear;
  EstimatorKind estimator = EstimatorKind::None;
  KalmanSettings kalman;
  Vector initial_state; ///< physical units
  bool record_timing = false;

  Index states() const { return A.rows(); }
  Index outputs() const { return C.rows(); }
  /// Zero-order-hold reference at cycle k (held past the last breakpoint).
  Vector reference_at(Index k) const;
};

/// Everything derived from a scenario before the loop runs; immutable and
/// shared between concurrent simulations of the same scenario.
struct ControlSetup {
  LtiModel model;          ///< deviation coordinates
  SlidingDesign design;
  ConstraintSets sets;     ///< deviation coordinates
  std::shared_ptr<const TrackingInvariantSet> invariant_set; ///< null unless requested
  Vector y_op;
};

/// Deviation model, sliding design and shifted constraint sets, without
/// validating the sets or computing the terminal set.
ControlSetup design_setup(const Scenario& scenario);

/// Builds the deviation model, sliding design and (optionally) the terminal
/// set. Throws NotFinitelyDetermined when the set iteration hits its cap and
/// InfeasibleTarget when the terminal set is empty.
ControlSetup prepare(const Scenario& scenario, bool with_invariant_set = true);

/// Terminal set of a scenario in deviation coordinates, without projection.
TrackingInvariantSet scenario_invariant_set(const Scenario& scenario, const ControlSetup& setup,
                                            bool compute_projection);

enum class StepStatus { Ok, Saturated, Fallback, FallbackSaturated };
std::string_view to_string(StepStatus status) noexcept;

struct StepRecord {
  Index k = 0;
  Vector x_true;    ///< physical units
  Vector x_hat;     ///< physical units
  Vector y;         ///< measured (noise included)
  Vector y_true;    ///< noise free
  Vector y_ref;     ///< requested reference
  Vector y_virtual; ///< virtual reference (PSSC) or the requested one (DSMC)
  Vector u;         ///< applied input
  Vector u_requested;
  Vector s;         ///< sliding value of the true state
  Vector xi;        ///< s(k+1) + beta s(k)
  StepStatus status = StepStatus::Ok;
  QpStatus qp_status = QpStatus::Optimal;
  double solve_ms = 0.0;

  bool saturated() const { return status == StepStatus::Saturated || status == StepStatus::FallbackSaturated; }
  bool fallback() const { return status == StepStatus::Fallback || status == StepStatus::FallbackSaturated; }
};

struct SimTrace {
  std::string scenario;
  ControllerKind controller = ControllerKind::Pssc;
  PlantKind plant = PlantKind::Linear;
  std::uint64_t seed = 0;
  std::vector<std::string> state_names;
  std::vector<std::string> output_names;
  std::vector<std::string> input_names;
  std::vector<StepRecord> records;
};

/// Closed loop: measure, estimator update, control, actuate, estimator predict.
SimTrace simulate(const Scenario& scenario, const ControlSetup& setup);
SimTrace simulate(const Scenario& scenario);

} // namespace pssc
