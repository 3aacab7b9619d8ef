#include "pssc/invariant_set.hpp"

#include <numeric>

#include "pssc/error.hpp"

namespace pssc {

AugmentedSystem augment(const LtiModel& model, const SlidingDesign& design, const ConstraintSets& sets)
{
  const Index n = model.states();
  const Index m = model.inputs();
  if (sets.state.dim() != n || sets.input.dim() != m) {
    throw Error(ErrorCode::DimensionMismatch, "constraint sets do not match the model");
  }
  AugmentedSystem sys;
  sys.state_dim = n;
  sys.A_eq = Matrix::Zero(n + m, n + m);
  sys.A_eq.topLeftCorner(n, n) = model.A() + model.B() * design.K;
  sys.A_eq.topRightCorner(n, m) = model.B() * design.L;
  sys.A_eq.bottomRightCorner(m, m).setIdentity();

  Matrix select_x = Matrix::Zero(n, n + m);
  select_x.leftCols(n).setIdentity();
  Matrix law(m, n + m);
  law << design.K, design.L;

  const Polyhedron state_rows = sets.state.preimage(select_x);
  const Polyhedron input_rows = sets.input.preimage(law);
  sys.W_eq = intersect(state_rows, input_rows);
  return sys;
}

Polyhedron steady_state_tightening(const AugmentedSystem& system, double lambda)
{
  const Index n = system.state_dim;
  const Index p = system.A_eq.rows();
  const Index m = p - n;
  // x_s = (I - A_K)^-1 BL yref
  const Matrix AK = system.A_eq.topLeftCorner(n, n);
  const Matrix BL = system.A_eq.topRightCorner(n, m);
  const Matrix S = (Matrix::Identity(n, n) - AK).fullPivLu().solve(BL);
  // w -> steady state lifted from its yref part
  Matrix lift = Matrix::Zero(p, p);
  lift.topRightCorner(n, m) = S;
  lift.bottomRightCorner(m, m).setIdentity();
  const Polyhedron& W = system.W_eq;
  return Polyhedron(W.F() * lift, lambda * W.g());
}

TrackingInvariantSet max_invariant_set(const AugmentedSystem& system, const InvariantSetOptions& options)
{
  if (!(options.lambda > 0.0 && options.lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0, 1]");
  }
  TrackingInvariantSet result;
  result.A_eq = system.A_eq;
  result.W_eq = system.W_eq;
  result.lambda = options.lambda;
  result.state_dim = system.state_dim;

  Polyhedron omega = system.W_eq;
  if (options.lambda < 1.0) {
    omega = intersect(omega, steady_state_tightening(system, options.lambda));
  }
  Polyhedron raw = omega;
  omega = omega.minimize(options.tolerance);
  result.row_counts.push_back(omega.rows());
  if (options.keep_iterates) {
    result.iterates.push_back(omega);
  }

  if (omega.is_empty()) {
    result.T = omega;
    result.status = InvariantSetStatus::Empty;
  } else {
    result.status = InvariantSetStatus::NotFinitelyDetermined;
    for (int k = 0; k < options.max_iterations; ++k) {
      const Polyhedron pre = omega.preimage(system.A_eq);
      Matrix F(omega.rows() + pre.rows(), omega.dim());
      Vector g(omega.rows() + pre.rows());
      F << omega.F(), pre.F();
      g << omega.g(), pre.g();
      raw = Polyhedron(std::move(F), std::move(g));
      Polyhedron next = raw.minimize(options.tolerance);
      result.iterations = k + 1;
      result.row_counts.push_back(next.rows());
      if (options.keep_iterates) {
        result.iterates.push_back(next);
      }
      if (next.is_empty()) {
        omega = next;
        result.status = InvariantSetStatus::Empty;
        break;
      }
      // next is a subset of omega by construction; equality needs the reverse inclusion
      const bool converged = is_subset(omega, next, options.tolerance);
      omega = std::move(next);
      if (converged) {
        result.status = InvariantSetStatus::FinitelyDetermined;
        break;
      }
    }
    result.T = omega;
  }

  if (result.status == InvariantSetStatus::Empty) {
    result.infeasible_rows = raw;
    result.Z = Polyhedron::certified_empty(system.state_dim, result.T.emptiness_certificate());
  } else if (options.compute_projection && result.status == InvariantSetStatus::FinitelyDetermined) {
    std::vector<Index> keep(static_cast<std::size_t>(system.state_dim));
    std::iota(keep.begin(), keep.end(), Index{0});
    result.Z = project(result.T, keep, options.projection);
  }
  return result;
}

std::string_view to_string(InvariantSetStatus status) noexcept
{
  switch (status) {
  case InvariantSetStatus::FinitelyDetermined: return "finitely_determined";
  case InvariantSetStatus::NotFinitelyDetermined: return "not_finitely_determined";
  case InvariantSetStatus::Empty: return "empty";
  }
  return "unknown";
}

} // namespace pssc
