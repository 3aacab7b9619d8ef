#pragma once

#include <optional>
#include <random>

#include "pssc/types.hpp"

// Reference computations used only to check the library. They share no code
// with the solvers they judge.
namespace pssc::test {

/// minimize 1/2 z'Pz + q'z s.t. A z <= b, E z = h with P positive definite,
/// by accelerated projected gradient on the dual (multipliers of A clipped at
/// zero, those of E free). Returns the primal point.
struct DualGradientResult {
  Vector z;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};
DualGradientResult dual_projected_gradient(const Matrix& P, const Vector& q, const Matrix& A, const Vector& b,
                                           const Matrix& E, const Vector& h, int max_iterations = 2000000,
                                           double tolerance = 1e-12);

/// Markov parameters c_i A^j B computed by repeated multiplication; returns
/// the first j + 1 with a nonzero entry (exact zero test on the given data).
std::optional<int> brute_force_relative_degree(const Matrix& A, const Matrix& B, const Matrix& C, Index row);

/// Closest admissible steady-state output of a single-output plant by
/// interval clamping: the steady state is linear in y, x_s = Sx y,
/// u_s = Su y, so every constraint row becomes a bound on y.
struct SteadyStateInterval {
  double lower = 0.0;
  double upper = 0.0;
};
SteadyStateInterval steady_state_interval(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& Fx,
                                          const Vector& gx, const Matrix& Fu, const Vector& gu);

/// Closest admissible steady-state output (1-norm) of a two-output square
/// plant by vertex enumeration in the output plane. Every constraint row
/// becomes a half-plane a'y <= b; the optimum lies on an intersection of two
/// lines drawn from those half-planes and the axis-parallel lines through
/// y_d, so all such points are tried.
struct PlanarSetpoint {
  Vector y;
  double distance = 0.0;
  bool unique = true; ///< false when another vertex ties the optimum at a different point
  bool feasible = false;
};
PlanarSetpoint closest_steady_output_2d(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& Fx,
                                        const Vector& gx, const Matrix& Fu, const Vector& gu, const Vector& y_d);

/// Uniform sample from the box [lo, hi].
Vector uniform_in_box(std::mt19937_64& rng, const Vector& lo, const Vector& hi);

/// Rejection sample of points with F w <= g inside the bounding box.
std::vector<Vector> sample_polytope(std::mt19937_64& rng, const Matrix& F, const Vector& g, const Vector& lo,
                                    const Vector& hi, std::size_t count, std::size_t max_tries = 50000000);

/// Hit-and-run walk inside the bounded polytope F w <= g, started from a
/// strictly interior point; keeps every `thin`-th point after `burn_in` moves.
std::vector<Vector> hit_and_run(std::mt19937_64& rng, const Matrix& F, const Vector& g, const Vector& start,
                                std::size_t count, int thin = 5, int burn_in = 200);

/// Random matrix with standard normal entries.
Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols);

} // namespace pssc::test
