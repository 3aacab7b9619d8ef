#pragma once

#include <memory>
#include <string>

#include "pssc/invariant_set.hpp"
#include "pssc/model.hpp"
#include "pssc/scenario.hpp"

namespace pssc::test {

/// A plant with its sliding parameters and constraint sets, in deviation coordinates.
struct TestSystem {
  std::string name;
  LtiModel model;
  AlphaCoefficients alpha;
  Matrix beta;
  ConstraintSets sets;

  SlidingDesign design() const { return build_sliding_design(model, alpha, beta); }
};

/// x+ = 0.5 x + u, y = x, |x| <= 1, |u| <= 1, alpha = [1].
TestSystem scalar_system(double beta = 0.2);

/// Position/velocity double integrator, alpha = [alpha0, 1], beta = 0,
/// |position| <= 5, |velocity| <= 2, |u| <= 1. On the surface the error
/// obeys e(k+1) = -alpha0 e(k), so a negative alpha0 gives monotone
/// convergence and the default 0.5 an alternating one.
TestSystem double_integrator(double alpha0 = 0.5);

/// Synthetic RCCI model around its operating point with the default
/// engine constraint boxes, alpha = [[1], [0.04]], beta = -0.2 I.
TestSystem rcci_system();

/// Terminal set for a test system (no projection).
std::shared_ptr<const TrackingInvariantSet> terminal_set(const TestSystem& sys, double lambda = 1.0);

/// Scenario document around an inline model; callers fill in the reference
/// and run settings before parsing.
Scenario inline_scenario(const TestSystem& sys, Index cycles, const std::vector<ReferenceBreakpoint>& reference);

/// Path of a shipped scenario file.
std::string scenario_path(const std::string& name);

} // namespace pssc::test
