#include "pssc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pssc/error.hpp"

namespace pssc {

namespace {

class Tableau {
public:
  Tableau(const Matrix& M, const Vector& b, const LpOptions& options)
      : rows_(M.rows()), structural_(M.cols()), options_(options)
  {
    const Index cols = structural_ + rows_ + 1;
    t_ = Matrix::Zero(rows_ + 1, cols);
    flip_ = Vector::Ones(rows_);
    for (Index i = 0; i < rows_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      flip_(i) = sign;
      t_.row(i).head(structural_) = sign * M.row(i);
      t_(i, structural_ + i) = 1.0;
      t_(i, cols - 1) = sign * b(i);
    }
    basis_.resize(static_cast<std::size_t>(rows_));
    for (Index i = 0; i < rows_; ++i) {
      basis_[static_cast<std::size_t>(i)] = structural_ + i;
    }
    max_iterations_ = options.max_iterations > 0
        ? options.max_iterations
        : static_cast<int>(100 * (rows_ + structural_ + 10));
  }

  Index rhs() const { return t_.cols() - 1; }
  bool is_artificial(Index col) const { return col >= structural_; }

  void set_phase_one_objective()
  {
    t_.row(rows_).setZero();
    for (Index i = 0; i < rows_; ++i) {
      t_.row(rows_).head(structural_) -= t_.row(i).head(structural_);
      t_(rows_, rhs()) -= t_(i, rhs());
    }
  }

  void set_objective(const Vector& d)
  {
    t_.row(rows_).setZero();
    t_.row(rows_).head(structural_) = d.transpose();
    for (Index i = 0; i < rows_; ++i) {
      const Index col = basis_[static_cast<std::size_t>(i)];
      const double cost = is_artificial(col) ? 0.0 : d(col);
      if (cost != 0.0) {
        t_.row(rows_) -= cost * t_.row(i);
      }
    }
  }

  double objective_value() const { return -t_(rows_, rhs()); }

  enum class Outcome { Optimal, Unbounded, IterLimit };

  Outcome run(double rc_tol, Index& unbounded_col)
  {
    int degenerate_streak = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= max_iterations_) {
        return Outcome::IterLimit;
      }
      const Index enter = choose_entering(rc_tol, bland);
      if (enter < 0) {
        return Outcome::Optimal;
      }
      const Index leave = choose_leaving(enter, bland);
      if (leave < 0) {
        unbounded_col = enter;
        return Outcome::Unbounded;
      }
      const double step = t_(leave, rhs()) / t_(leave, enter);
      if (std::abs(step) <= 1e-14) {
        if (++degenerate_streak > options_.bland_after) {
          bland = true;
        }
      } else {
        degenerate_streak = 0;
      }
      pivot(leave, enter);
      ++iterations_;
    }
  }

  /// Pivot basic artificials out of the basis where a structural column allows it.
  void drive_out_artificials()
  {
    for (Index i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[static_cast<std::size_t>(i)])) {
        continue;
      }
      Index best = -1;
      double best_mag = 1e-9;
      for (Index j = 0; j < structural_; ++j) {
        if (std::abs(t_(i, j)) > best_mag) {
          best_mag = std::abs(t_(i, j));
          best = j;
        }
      }
      if (best >= 0) {
        pivot(i, best);
      }
    }
  }

  Vector primal() const
  {
    Vector v = Vector::Zero(structural_);
    for (Index i = 0; i < rows_; ++i) {
      const Index col = basis_[static_cast<std::size_t>(i)];
      if (!is_artificial(col)) {
        v(col) = std::max(0.0, t_(i, rhs()));
      }
    }
    return v;
  }

  /// Simplex multipliers read off the artificial columns' reduced costs.
  Vector multipliers() const
  {
    Vector pi(rows_);
    for (Index i = 0; i < rows_; ++i) {
      pi(i) = -t_(rows_, structural_ + i) * flip_(i);
    }
    return pi;
  }

  Vector ray(Index enter) const
  {
    Vector r = Vector::Zero(structural_);
    r(enter) = 1.0;
    for (Index i = 0; i < rows_; ++i) {
      const Index col = basis_[static_cast<std::size_t>(i)];
      if (!is_artificial(col)) {
        r(col) = -t_(i, enter);
      }
    }
    return r;
  }

  const std::vector<Index>& basis() const { return basis_; }
  int iterations() const { return iterations_; }

private:
  Index choose_entering(double rc_tol, bool bland) const
  {
    Index best = -1;
    double best_val = -rc_tol;
    for (Index j = 0; j < structural_; ++j) {
      const double r = t_(rows_, j);
      if (r < -rc_tol) {
        if (bland) {
          return j;
        }
        if (r < best_val) {
          best_val = r;
          best = j;
        }
      }
    }
    return best;
  }

  Index choose_leaving(Index enter, bool bland) const
  {
    constexpr double pivot_tol = 1e-11;
    Index best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (Index i = 0; i < rows_; ++i) {
      const double a = t_(i, enter);
      const bool art = is_artificial(basis_[static_cast<std::size_t>(i)]);
      double ratio;
      if (art && std::abs(a) > pivot_tol && std::abs(t_(i, rhs())) <= 1e-12) {
        // artificial pinned at zero must leave before it could turn positive
        ratio = 0.0;
      } else if (a > pivot_tol) {
        ratio = std::max(0.0, t_(i, rhs())) / a;
      } else {
        continue;
      }
      const double slack = best >= 0 ? 1e-12 * (1.0 + best_ratio) : 0.0;
      if (best < 0 || ratio < best_ratio - slack) {
        best = i;
        best_ratio = ratio;
        best_pivot = std::abs(a);
      } else if (ratio <= best_ratio + slack && best >= 0) {
        const bool take = bland
            ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(best)]
            : std::abs(a) > best_pivot;
        if (take) {
          best = i;
          best_ratio = std::min(best_ratio, ratio);
          best_pivot = std::abs(a);
        }
      }
    }
    return best;
  }

  void pivot(Index row, Index col)
  {
    t_.row(row) /= t_(row, col);
    for (Index i = 0; i <= rows_; ++i) {
      if (i == row) {
        continue;
      }
      const double factor = t_(i, col);
      if (factor != 0.0) {
        t_.row(i) -= factor * t_.row(row);
        t_(i, col) = 0.0;
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Index rows_;
  Index structural_;
  LpOptions options_;
  Matrix t_;
  Vector flip_;
  std::vector<Index> basis_;
  int iterations_ = 0;
  int max_iterations_ = 0;
};

/// Recompute multipliers from the final basis; the tableau accumulates
/// rounding over many pivots.
Vector refine_multipliers(const Matrix& M, const Vector& d, const std::vector<Index>& basis,
                          Index structural, const Vector& fallback)
{
  std::vector<Index> cols;
  for (const Index col : basis) {
    if (col < structural) {
      cols.push_back(col);
    }
  }
  if (cols.empty()) {
    return fallback;
  }
  Matrix Bt(static_cast<Index>(cols.size()), M.rows());
  Vector dB(static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    Bt.row(static_cast<Index>(k)) = M.col(cols[k]).transpose();
    dB(static_cast<Index>(k)) = d(cols[k]);
  }
  Vector pi;
  if (Bt.rows() == Bt.cols()) {
    pi = Bt.fullPivLu().solve(dB);
  } else {
    // only the components fixed by the basis are determined; move the tableau
    // multipliers onto the solution set along the least-norm correction
    pi = fallback - Bt.completeOrthogonalDecomposition().solve(Bt * fallback - dB);
  }
  if (!pi.allFinite()) {
    return fallback;
  }
  const double err_new = (Bt * pi - dB).lpNorm<Eigen::Infinity>();
  const double err_old = (Bt * fallback - dB).lpNorm<Eigen::Infinity>();
  return err_new <= err_old ? pi : fallback;
}

} // namespace

StandardFormResult solve_standard_form(const Matrix& M, const Vector& b, const Vector& d,
                                       const LpOptions& options)
{
  if (M.rows() != b.size() || M.cols() != d.size()) {
    throw Error(ErrorCode::DimensionMismatch, "standard-form LP dimensions disagree");
  }
  StandardFormResult result;
  Tableau tab(M, b, options);

  const double feas_tol = 1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>());
  Index unbounded_col = -1;

  tab.set_phase_one_objective();
  const auto phase1 = tab.run(options.tolerance, unbounded_col);
  result.iterations = tab.iterations();
  if (phase1 == Tableau::Outcome::IterLimit) {
    result.status = LpStatus::IterLimit;
    return result;
  }
  if (tab.objective_value() > feas_tol) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  tab.drive_out_artificials();

  tab.set_objective(d);
  const double rc_tol = options.tolerance * (1.0 + d.lpNorm<Eigen::Infinity>());
  const auto phase2 = tab.run(rc_tol, unbounded_col);
  result.iterations = tab.iterations();
  if (phase2 == Tableau::Outcome::IterLimit) {
    result.status = LpStatus::IterLimit;
    return result;
  }
  if (phase2 == Tableau::Outcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    result.ray = tab.ray(unbounded_col);
    result.v = tab.primal();
    return result;
  }
  result.status = LpStatus::Optimal;
  result.v = tab.primal();
  result.multipliers = refine_multipliers(M, d, tab.basis(), M.cols(), tab.multipliers());
  return result;
}

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options)
{
  const Index p = lp.dim();
  const Index r = lp.F.rows();
  const Index q = lp.E.rows();
  if ((r > 0 && lp.F.cols() != p) || lp.g.size() != r || (q > 0 && lp.E.cols() != p)
      || lp.h.size() != q) {
    throw Error(ErrorCode::DimensionMismatch, "linear program dimensions disagree");
  }

  // Dual in standard form: v = [y; z+; z-] >= 0, [F' E' -E'] v = c, min [g; h; -h]'v.
  Matrix M(p, r + 2 * q);
  Vector d(r + 2 * q);
  if (r > 0) {
    M.leftCols(r) = lp.F.transpose();
    d.head(r) = lp.g;
  }
  if (q > 0) {
    M.middleCols(r, q) = lp.E.transpose();
    M.rightCols(q) = -lp.E.transpose();
    d.segment(r, q) = lp.h;
    d.tail(q) = -lp.h;
  }

  LpResult result;
  const StandardFormResult dual = solve_standard_form(M, lp.c, d, options);
  result.iterations = dual.iterations;

  switch (dual.status) {
  case LpStatus::Optimal: {
    result.status = LpStatus::Optimal;
    result.w = dual.multipliers;
    result.objective = lp.c.dot(result.w);
    result.ineq_multipliers = dual.v.head(r);
    result.eq_multipliers = dual.v.segment(r, q) - dual.v.tail(q);
    return result;
  }
  case LpStatus::Unbounded: {
    // dual unbounded: the primal is infeasible, and the ray is a Farkas certificate
    result.status = LpStatus::Infeasible;
    result.farkas_ineq = dual.ray.head(r);
    result.farkas_eq = dual.ray.segment(r, q) - dual.ray.tail(q);
    return result;
  }
  case LpStatus::Infeasible: {
    // dual infeasible: primal is unbounded or infeasible; decide with a pure feasibility solve
    if (lp.c.isZero(0.0)) {
      result.status = LpStatus::IterLimit;
      return result;
    }
    LinearProgram feas = lp;
    feas.c = Vector::Zero(p);
    LpResult check = solve_lp(feas, options);
    check.iterations += result.iterations;
    if (check.status == LpStatus::Optimal) {
      check.status = LpStatus::Unbounded;
      check.objective = std::numeric_limits<double>::infinity();
    }
    return check;
  }
  case LpStatus::IterLimit:
    break;
  }
  result.status = LpStatus::IterLimit;
  return result;
}

} // namespace pssc
