#include "pssc/qp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "pssc/error.hpp"
#include "pssc/lp.hpp"

namespace pssc {

std::string_view to_string(QpStatus status) noexcept
{
  switch (status) {
  case QpStatus::Optimal: return "optimal";
  case QpStatus::Infeasible: return "infeasible";
  case QpStatus::Unbounded: return "unbounded";
  case QpStatus::IterLimit: return "iter_limit";
  }
  return "unknown";
}

namespace {

double inf_norm(const Vector& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

/// Incrementally maintained orthonormal basis of the working-set row space,
/// used only for linear-independence tests.
class RowSpace {
public:
  explicit RowSpace(Index dim) : basis_(dim, 0) {}

  bool try_add(const Eigen::RowVectorXd& row)
  {
    const double norm = row.norm();
    if (norm == 0.0) {
      return false;
    }
    Vector r = row.transpose();
    for (int pass = 0; pass < 2; ++pass) {
      if (basis_.cols() > 0) {
        r -= basis_ * (basis_.transpose() * r);
      }
    }
    if (r.norm() <= 1e-9 * norm) {
      return false;
    }
    basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
    basis_.col(basis_.cols() - 1) = r / r.norm();
    return true;
  }

private:
  Matrix basis_;
};

} // namespace

double kkt_residual(const QpProblem& problem, const Vector& z, const Vector& dual_in, const Vector& dual_eq)
{
  const Vector Pz = problem.P * z;
  Vector grad = Pz + problem.q;
  if (problem.A_in.rows() > 0) {
    grad += problem.A_in.transpose() * dual_in;
  }
  if (problem.A_eq.rows() > 0) {
    grad += problem.A_eq.transpose() * dual_eq;
  }
  const double stat = inf_norm(grad) / (1.0 + std::max(inf_norm(Pz), inf_norm(problem.q)));
  double res = stat;
  if (problem.A_eq.rows() > 0) {
    res = std::max(res, inf_norm(problem.A_eq * z - problem.b_eq) / (1.0 + inf_norm(problem.b_eq)));
  }
  if (problem.A_in.rows() > 0) {
    const Vector slack = problem.b_in - problem.A_in * z;
    const double bscale = 1.0 + inf_norm(problem.b_in);
    const double mscale = 1.0 + inf_norm(dual_in);
    res = std::max(res, std::max(0.0, -slack.minCoeff()) / bscale);
    res = std::max(res, std::max(0.0, -dual_in.minCoeff()) / mscale);
    res = std::max(res, (dual_in.cwiseProduct(slack)).cwiseAbs().maxCoeff() / (mscale * bscale));
  }
  return res;
}

QpSolution QpSolver::solve(const QpProblem& problem, const QpWarmStart* warm)
{
  const Index nv = problem.dim();
  const Index ni = problem.A_in.rows();
  const Index ne = problem.A_eq.rows();
  if (problem.P.rows() != nv || problem.P.cols() != nv || (ni > 0 && problem.A_in.cols() != nv)
      || problem.b_in.size() != ni || (ne > 0 && problem.A_eq.cols() != nv) || problem.b_eq.size() != ne) {
    throw Error(ErrorCode::DimensionMismatch, "QP dimensions are inconsistent");
  }
  if (!problem.P.allFinite() || !problem.q.allFinite()) {
    throw Error(ErrorCode::IllConditioned, "QP cost contains non-finite entries");
  }

  QpSolution sol;
  const int max_iterations = options_.max_iterations > 0
      ? options_.max_iterations
      : static_cast<int>(20 * (nv + ni + ne) + 100);

  Vector row_norm(ni);
  Vector ftol(ni);
  for (Index i = 0; i < ni; ++i) {
    row_norm(i) = problem.A_in.row(i).norm();
    ftol(i) = options_.feasibility_tol * (row_norm(i) + std::abs(problem.b_in(i)) + 1e-300);
  }
  auto feasible = [&](const Vector& z) {
    if (!z.allFinite() || z.size() != nv) {
      return false;
    }
    if (ne > 0 && inf_norm(problem.A_eq * z - problem.b_eq) > options_.feasibility_tol * (1.0 + inf_norm(problem.b_eq))) {
      return false;
    }
    for (Index i = 0; i < ni; ++i) {
      if (problem.A_in.row(i).dot(z) - problem.b_in(i) > ftol(i)) {
        return false;
      }
    }
    return true;
  };

  // starting point
  Vector z;
  if (warm != nullptr && warm->z && feasible(*warm->z)) {
    z = *warm->z;
  } else {
    LinearProgram lp{problem.A_in, problem.b_in, problem.A_eq, problem.b_eq, Vector::Zero(nv)};
    if (ni == 0) {
      lp.F = Matrix(0, nv);
    }
    if (ne == 0) {
      lp.E = Matrix(0, nv);
    }
    const LpResult start = solve_lp(lp);
    sol.phase_one = true;
    if (start.status == LpStatus::Infeasible) {
      sol.status = QpStatus::Infeasible;
      sol.farkas_in = start.farkas_ineq;
      sol.farkas_eq = start.farkas_eq;
      return sol;
    }
    if (start.status != LpStatus::Optimal) {
      sol.status = QpStatus::IterLimit;
      return sol;
    }
    z = start.w;
  }

  // working set: independent equalities, then active inequalities (hinted first)
  RowSpace space(nv);
  std::vector<Index> eq_rows;
  for (Index i = 0; i < ne; ++i) {
    if (space.try_add(problem.A_eq.row(i))) {
      eq_rows.push_back(i);
    }
  }
  std::vector<Index> active;
  std::vector<bool> in_set(static_cast<std::size_t>(ni), false);
  auto is_active = [&](Index i) {
    return std::abs(problem.A_in.row(i).dot(z) - problem.b_in(i)) <= ftol(i);
  };
  auto consider = [&](Index i) {
    if (i < 0 || i >= ni || in_set[static_cast<std::size_t>(i)] || !is_active(i)) {
      return;
    }
    if (space.try_add(problem.A_in.row(i))) {
      active.push_back(i);
      in_set[static_cast<std::size_t>(i)] = true;
    }
  };
  if (warm != nullptr) {
    for (const Index i : warm->active) {
      consider(i);
    }
  }
  for (Index i = 0; i < ni; ++i) {
    consider(i);
  }

  const Index n_eq = static_cast<Index>(eq_rows.size());
  int degenerate = 0;
  bool bland = false;
  Vector mult;

  for (int it = 0;; ++it) {
    if (it >= max_iterations) {
      sol.status = QpStatus::IterLimit;
      sol.z = z;
      sol.iterations = it;
      return sol;
    }
    const Index nw = n_eq + static_cast<Index>(active.size());
    working_.resize(nw, nv);
    for (Index k = 0; k < n_eq; ++k) {
      working_.row(k) = problem.A_eq.row(eq_rows[static_cast<std::size_t>(k)]);
    }
    for (std::size_t k = 0; k < active.size(); ++k) {
      working_.row(n_eq + static_cast<Index>(k)) = problem.A_in.row(active[k]);
    }

    const Vector grad = problem.P * z + problem.q;
    Eigen::HouseholderQR<Matrix> qr(working_.transpose());
    const Matrix Q = nw > 0 ? Matrix(qr.householderQ()) : Matrix::Identity(nv, nv);
    const Index nfree = nv - nw;

    Vector p = Vector::Zero(nv);
    bool ray = false;
    if (nfree > 0) {
      const Matrix Zb = Q.rightCols(nfree);
      const Matrix R = Zb.transpose() * problem.P * Zb;
      const Vector rg = Zb.transpose() * grad;
      Eigen::SelfAdjointEigenSolver<Matrix> es(R);
      if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::IllConditioned, "reduced Hessian eigen-decomposition failed");
      }
      const Vector& lam = es.eigenvalues();
      const Matrix& V = es.eigenvectors();
      const double lam_scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
      Vector newton = Vector::Zero(nfree);
      Vector flat = Vector::Zero(nfree);
      for (Index j = 0; j < nfree; ++j) {
        const double proj = V.col(j).dot(rg);
        if (lam(j) > 1e-10 * lam_scale) {
          newton -= V.col(j) * (proj / lam(j));
        } else {
          flat -= V.col(j) * proj;
        }
      }
      if (flat.norm() > options_.optimality_tol * (1.0 + inf_norm(grad))) {
        p = Zb * flat;
        ray = true;
      } else {
        p = Zb * newton;
      }
      if (!p.allFinite()) {
        throw Error(ErrorCode::IllConditioned, "active-set step is not finite");
      }
    }

    if (!ray && p.norm() <= 1e-11 * (1.0 + z.norm())) {
      // stationary on the working set: check multiplier signs
      mult = Vector::Zero(nw);
      if (nw > 0) {
        const Matrix Rtop = qr.matrixQR().topRows(nw).triangularView<Eigen::Upper>();
        const Vector rhs = -(Q.leftCols(nw).transpose() * grad);
        mult = Rtop.triangularView<Eigen::Upper>().solve(rhs);
      }
      const double mtol = options_.optimality_tol * (1.0 + inf_norm(grad) + inf_norm(mult));
      Index drop = -1;
      double most_negative = -mtol;
      for (std::size_t k = 0; k < active.size(); ++k) {
        const double mu = mult(n_eq + static_cast<Index>(k));
        if (mu < -mtol) {
          if (bland) {
            if (drop < 0 || active[k] < active[static_cast<std::size_t>(drop)]) {
              drop = static_cast<Index>(k);
            }
          } else if (mu < most_negative) {
            most_negative = mu;
            drop = static_cast<Index>(k);
          }
        }
      }
      if (drop < 0) {
        sol.status = QpStatus::Optimal;
        sol.iterations = it;
        break;
      }
      in_set[static_cast<std::size_t>(active[static_cast<std::size_t>(drop)])] = false;
      active.erase(active.begin() + drop);
      continue;
    }

    // ratio test
    double step = ray ? std::numeric_limits<double>::infinity() : 1.0;
    Index block = -1;
    const double pnorm = p.norm();
    for (Index i = 0; i < ni; ++i) {
      if (in_set[static_cast<std::size_t>(i)]) {
        continue;
      }
      const double ap = problem.A_in.row(i).dot(p);
      if (ap <= 1e-12 * row_norm(i) * pnorm) {
        continue;
      }
      const double slack = std::max(0.0, problem.b_in(i) - problem.A_in.row(i).dot(z));
      const double alpha = slack / ap;
      if (alpha < step) {
        step = alpha;
        block = i;
      }
    }
    if (block < 0 && ray) {
      sol.status = QpStatus::Unbounded;
      sol.z = z;
      sol.iterations = it;
      return sol;
    }
    z += step * p;
    if (block >= 0) {
      active.push_back(block);
      in_set[static_cast<std::size_t>(block)] = true;
    }
    if (step * pnorm <= 1e-14 * (1.0 + z.norm())) {
      if (++degenerate > options_.bland_after) {
        bland = true;
      }
    } else {
      degenerate = 0;
    }
  }

  sol.z = z;
  sol.dual_in = Vector::Zero(ni);
  sol.dual_eq = Vector::Zero(ne);
  for (Index k = 0; k < n_eq; ++k) {
    sol.dual_eq(eq_rows[static_cast<std::size_t>(k)]) = mult(k);
  }
  for (std::size_t k = 0; k < active.size(); ++k) {
    sol.dual_in(active[k]) = std::max(0.0, mult(n_eq + static_cast<Index>(k)));
  }
  sol.active = active;
  std::sort(sol.active.begin(), sol.active.end());
  sol.objective = problem.objective(z);
  sol.kkt_residual = kkt_residual(problem, z, sol.dual_in, sol.dual_eq);
  return sol;
}

void write_qp(std::ostream& os, const QpProblem& problem)
{
  char buf[64];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
  };
  auto put_matrix = [&](const char* name, const Matrix& M) {
    os << name << ' ' << M.rows() << ' ' << M.cols() << '\n';
    for (Index i = 0; i < M.rows(); ++i) {
      for (Index j = 0; j < M.cols(); ++j) {
        if (j > 0) {
          os << ' ';
        }
        put(M(i, j));
      }
      os << '\n';
    }
  };
  os << "# minimize 1/2 z'Pz + q'z  s.t.  A_in z <= b_in, A_eq z = b_eq\n";
  put_matrix("P", problem.P);
  put_matrix("q", problem.q.transpose());
  put_matrix("A_in", problem.A_in);
  put_matrix("b_in", problem.b_in.transpose());
  put_matrix("A_eq", problem.A_eq);
  put_matrix("b_eq", problem.b_eq.transpose());
}

} // namespace pssc
