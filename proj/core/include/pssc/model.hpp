#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "pssc/polyhedron.hpp"
#include "pssc/types.hpp"

namespace pssc {

/// Square discrete-time LTI plant x+ = A x + B u, y = C x (as many outputs as inputs).
class LtiModel {
public:
  LtiModel(Matrix A, Matrix B, Matrix C);

  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  const Matrix& C() const { return C_; }
  Index states() const { return A_.rows(); }
  Index inputs() const { return B_.cols(); }
  Index outputs() const { return C_.rows(); }

  Vector step(const Vector& x, const Vector& u) const { return A_ * x + B_ * u; }
  Vector output(const Vector& x) const { return C_ * x; }

private:
  Matrix A_;
  Matrix B_;
  Matrix C_;
};

struct ConstraintSets {
  Polyhedron state;
  Polyhedron input;
};

/// Throws unless both sets match the model, are bounded, and contain the origin in their interior.
void validate_constraints(const LtiModel& model, const ConstraintSets& sets);

struct RelativeDegreeOptions {
  double tolerance = 1e-9; ///< relative to ||c_i|| * ||A||^j * ||B||
};

/// Smallest d >= 1 with c_i A^(d-1) B != 0. Throws NoRelativeDegree when no
/// such d <= n+1 exists.
int relative_degree(const LtiModel& model, Index output, const RelativeDegreeOptions& options = {});

/// Finite zeros of the pencil [[A, B], [C, 0]] - z [[I, 0], [0, 0]].
std::vector<std::complex<double>> transmission_zeros(const LtiModel& model);

using AlphaCoefficients = std::vector<std::vector<double>>;

/// Sliding-surface matrices: s = G x - Htilde * yref, terminal law u = K x + L yref.
struct SlidingDesign {
  std::vector<int> relative_degree;
  AlphaCoefficients alpha; ///< alpha[i][j] multiplies e_i(k + j), j = 0..d_i-1
  Matrix beta;
  Matrix G;
  Matrix Htilde;
  Matrix K;
  Matrix L;
  double gb_condition = 0.0;
  std::vector<std::complex<double>> zeros;
  std::vector<std::string> warnings;

  Index outputs() const { return G.rows(); }
  Index states() const { return G.cols(); }
  /// max_i (d_i - 1)
  int lookahead() const;
};

struct SlidingDesignOptions {
  double max_gb_condition = 1e12;
  RelativeDegreeOptions relative_degree;
};

SlidingDesign build_sliding_design(const LtiModel& model, AlphaCoefficients alpha, const Matrix& beta,
                                   const SlidingDesignOptions& options = {});

/// H(k): component i is sum_j alpha[i][j] * trajectory[k + j](i).
Vector reference_window(const SlidingDesign& design, std::span<const Vector> trajectory, std::size_t k);

double spectral_radius(const Matrix& M);

} // namespace pssc
