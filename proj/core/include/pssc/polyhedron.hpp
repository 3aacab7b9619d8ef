#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>

#include "pssc/types.hpp"

namespace pssc {

/// H-representation {w : F w <= g}.
///
/// Emptiness is only known after an LP has been run (minimize, intersect);
/// until then `is_empty()` reports false. A certified-empty polyhedron keeps
/// the Farkas multipliers that prove it.
class Polyhedron {
public:
  Polyhedron() = default;
  Polyhedron(Matrix F, Vector g);

  static Polyhedron from_box(const Vector& lower, const Vector& upper);
  static Polyhedron universe(Index dim);
  static Polyhedron certified_empty(Index dim, Vector certificate);

  Index dim() const { return dim_; }
  Index rows() const { return F_.rows(); }
  const Matrix& F() const { return F_; }
  const Vector& g() const { return g_; }

  bool is_empty() const { return empty_; }
  const Vector& emptiness_certificate() const { return certificate_; }

  /// F w <= g + tol, evaluated on unit-norm rows.
  bool contains(const Vector& w, double tol = 1e-9) const;

  /// Largest normalized constraint violation (negative inside).
  double max_violation(const Vector& w) const;

  /// Drop every redundant row (one LP per row), normalize rows, and detect emptiness.
  Polyhedron minimize(double tol = 1e-9) const;

  /// Per-coordinate lower/upper bounds when the rows describe an axis-aligned box.
  std::optional<std::pair<Vector, Vector>> box_bounds() const;

  /// Axis-aligned bounding box from 2p LPs; nullopt if unbounded or empty.
  std::optional<std::pair<Vector, Vector>> bounding_box() const;

  /// {w : M w in this}.
  Polyhedron preimage(const Matrix& M) const;

  /// Max of c'w over the set (nullopt when unbounded or empty).
  std::optional<double> support(const Vector& c) const;

  /// Any member of the set, found by LP.
  std::optional<Vector> feasible_point() const;

private:
  Matrix F_;
  Vector g_;
  Index dim_ = 0;
  bool empty_ = false;
  Vector certificate_;
};

Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q);

/// P subset of Q, checked with one LP per row of Q.
bool is_subset(const Polyhedron& P, const Polyhedron& Q, double tol = 1e-9);

struct ProjectionOptions {
  Index max_rows = 20000;
  double tolerance = 1e-9;
};

/// Fourier-Motzkin elimination of every coordinate not listed in `keep`
/// (kept coordinates retain their relative order).
Polyhedron project(const Polyhedron& P, std::span<const Index> keep,
                   const ProjectionOptions& options = {});

/// Plain-text format: one row per line, coefficients then offset.
void write_polyhedron(std::ostream& os, const Polyhedron& P);
Polyhedron read_polyhedron(std::istream& is, Index dim = -1);

} // namespace pssc
