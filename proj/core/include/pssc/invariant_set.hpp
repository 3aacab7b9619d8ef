#pragma once

#include <vector>

#include "pssc/model.hpp"
#include "pssc/polyhedron.hpp"

namespace pssc {

/// Closed loop of the terminal law on w = [x; yref]:
///   A_eq = [[A + BK, BL], [0, I]],  W_eq = {w : x in X, K x + L yref in U}.
struct AugmentedSystem {
  Matrix A_eq;
  Polyhedron W_eq;
  Index state_dim = 0;
};

AugmentedSystem augment(const LtiModel& model, const SlidingDesign& design, const ConstraintSets& sets);

enum class InvariantSetStatus { FinitelyDetermined, NotFinitelyDetermined, Empty };

struct InvariantSetOptions {
  /// Steady-state tightening: every equilibrium of A_eq reachable in T must
  /// satisfy the constraints scaled by lambda. lambda = 1 disables it.
  double lambda = 1.0;
  int max_iterations = 500;
  double tolerance = 1e-10;
  bool compute_projection = true;
  bool keep_iterates = false; ///< store every minimized Omega_k
  ProjectionOptions projection;
};

struct TrackingInvariantSet {
  Matrix A_eq;
  Polyhedron W_eq;
  Polyhedron T;
  Polyhedron Z; ///< projection of T onto the states; dimension 0 unless T was finitely determined and projection requested
  /// When Empty: the constraint rows that T.emptiness_certificate() combines
  /// into 0 <= negative.
  Polyhedron infeasible_rows;
  int iterations = 0;
  InvariantSetStatus status = InvariantSetStatus::NotFinitelyDetermined;
  double lambda = 1.0;
  Index state_dim = 0;
  std::vector<Index> row_counts; ///< rows of each Omega iterate
  std::vector<Polyhedron> iterates; ///< Omega_0, Omega_1, ... when requested
};

/// Fixed point of Omega_{k+1} = Omega_k intersect {w : A_eq w in Omega_k}, Omega_0 = W_eq.
TrackingInvariantSet max_invariant_set(const AugmentedSystem& system, const InvariantSetOptions& options = {});

/// Constraints on yref that place the steady state of A_eq inside lambda * W_eq.
Polyhedron steady_state_tightening(const AugmentedSystem& system, double lambda);

std::string_view to_string(InvariantSetStatus status) noexcept;

} // namespace pssc
