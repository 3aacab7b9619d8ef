#include "pssc/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "pssc/error.hpp"

namespace pssc {

LtiModel::LtiModel(Matrix A, Matrix B, Matrix C) : A_(std::move(A)), B_(std::move(B)), C_(std::move(C))
{
  const Index n = A_.rows();
  std::ostringstream msg;
  if (A_.cols() != n || n == 0) {
    msg << "A must be square and nonempty, got " << A_.rows() << "x" << A_.cols();
  } else if (B_.rows() != n || B_.cols() < 1) {
    msg << "B must be " << n << "xm with m >= 1, got " << B_.rows() << "x" << B_.cols();
  } else if (C_.cols() != n) {
    msg << "C must have " << n << " columns, got " << C_.cols();
  } else if (C_.rows() != B_.cols()) {
    msg << "plant must be square: " << C_.rows() << " outputs vs " << B_.cols() << " inputs";
  } else if (n < B_.cols()) {
    msg << "need n >= m, got n=" << n << " m=" << B_.cols();
  } else if (!A_.allFinite() || !B_.allFinite() || !C_.allFinite()) {
    msg << "model matrices contain non-finite entries";
  }
  if (!msg.str().empty()) {
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

void validate_constraints(const LtiModel& model, const ConstraintSets& sets)
{
  auto check = [](const Polyhedron& P, Index dim, const char* name) {
    if (P.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, std::string(name) + " set has dimension "
                                                    + std::to_string(P.dim()) + ", expected "
                                                    + std::to_string(dim));
    }
    if (P.is_empty()) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " set is empty");
    }
    for (Index i = 0; i < P.rows(); ++i) {
      if (!(P.g()(i) > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(name) + " set must contain the origin in its interior");
      }
    }
    if (!P.bounding_box()) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " set must be bounded");
    }
  };
  check(sets.state, model.states(), "state");
  check(sets.input, model.inputs(), "input");
}

int relative_degree(const LtiModel& model, Index output, const RelativeDegreeOptions& options)
{
  if (output < 0 || output >= model.outputs()) {
    throw Error(ErrorCode::InvalidArgument, "output index " + std::to_string(output) + " out of range");
  }
  const Index n = model.states();
  const double a_norm = std::max(1.0, model.A().norm());
  const double scale0 = model.C().row(output).norm() * model.B().norm();
  Eigen::RowVectorXd row = model.C().row(output);
  double scale = scale0;
  for (Index j = 0; j <= n; ++j) {
    const double markov = (row * model.B()).norm();
    if (markov > options.tolerance * scale && markov > 0.0) {
      return static_cast<int>(j + 1);
    }
    row = row * model.A();
    scale *= a_norm;
  }
  throw Error(ErrorCode::NoRelativeDegree,
              "output " + std::to_string(output) + " is decoupled from every input");
}

std::vector<std::complex<double>> transmission_zeros(const LtiModel& model)
{
  const Index n = model.states();
  const Index m = model.inputs();
  Matrix M = Matrix::Zero(n + m, n + m);
  Matrix N = Matrix::Zero(n + m, n + m);
  M.topLeftCorner(n, n) = model.A();
  M.topRightCorner(n, m) = model.B();
  M.bottomLeftCorner(m, n) = model.C();
  N.topLeftCorner(n, n).setIdentity();

  Eigen::GeneralizedEigenSolver<Matrix> ges(M, N, false);
  std::vector<std::complex<double>> zeros;
  if (ges.info() != Eigen::Success) {
    return zeros;
  }
  const auto alphas = ges.alphas();
  const auto betas = ges.betas();
  for (Index i = 0; i < alphas.size(); ++i) {
    const double b = betas(i);
    if (std::abs(b) > 1e-10 * std::max(1.0, std::abs(alphas(i)))) {
      zeros.push_back(alphas(i) / b);
    }
  }
  std::sort(zeros.begin(), zeros.end(), [](auto a, auto b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : a.imag() > b.imag();
  });
  return zeros;
}

double spectral_radius(const Matrix& M)
{
  if (M.size() == 0) {
    return 0.0;
  }
  return M.eigenvalues().cwiseAbs().maxCoeff();
}

int SlidingDesign::lookahead() const
{
  int l = 0;
  for (const int d : relative_degree) {
    l = std::max(l, d - 1);
  }
  return l;
}

SlidingDesign build_sliding_design(const LtiModel& model, AlphaCoefficients alpha, const Matrix& beta,
                                   const SlidingDesignOptions& options)
{
  const Index n = model.states();
  const Index m = model.outputs();
  if (static_cast<Index>(alpha.size()) != m) {
    throw Error(ErrorCode::AlphaMismatch, "need one alpha list per output (" + std::to_string(m) + ")");
  }
  if (beta.rows() != m || beta.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "beta must be " + std::to_string(m) + "x" + std::to_string(m));
  }

  SlidingDesign design;
  design.alpha = std::move(alpha);
  design.beta = beta;
  design.G = Matrix::Zero(m, n);
  design.Htilde = Matrix::Zero(m, m);

  for (Index i = 0; i < m; ++i) {
    const int d = relative_degree(model, i, options.relative_degree);
    design.relative_degree.push_back(d);
    const auto& a = design.alpha[static_cast<std::size_t>(i)];
    if (static_cast<int>(a.size()) != d) {
      throw Error(ErrorCode::AlphaMismatch,
                  "output " + std::to_string(i) + " has relative degree " + std::to_string(d)
                      + " but " + std::to_string(a.size()) + " alpha coefficients");
    }
    if (a.back() == 0.0) {
      throw Error(ErrorCode::AlphaMismatch,
                  "leading alpha coefficient of output " + std::to_string(i) + " must be nonzero");
    }
    Eigen::RowVectorXd power = model.C().row(i);
    double sum = 0.0;
    for (const double coeff : a) {
      design.G.row(i) += coeff * power;
      power = power * model.A();
      sum += coeff;
    }
    design.Htilde(i, i) = sum;
  }

  if (spectral_radius(beta) >= 1.0) {
    throw Error(ErrorCode::UnstableBeta, "beta must have every eigenvalue strictly inside the unit circle");
  }

  const Matrix GB = design.G * model.B();
  Eigen::JacobiSVD<Matrix> svd(GB);
  const auto& sv = svd.singularValues();
  design.gb_condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                 : std::numeric_limits<double>::infinity();
  if (!(design.gb_condition <= options.max_gb_condition)) {
    std::ostringstream msg;
    msg << "G*B is singular or ill-conditioned (condition number " << design.gb_condition << ")";
    throw Error(ErrorCode::SingularGB, msg.str());
  }

  const auto lu = GB.fullPivLu();
  const Matrix I = Matrix::Identity(m, m);
  design.K = -lu.solve(design.G * model.A() + beta * design.G);
  design.L = lu.solve((I + beta) * design.Htilde);

  design.zeros = transmission_zeros(model);
  for (const auto z : design.zeros) {
    if (std::abs(z) >= 1.0) {
      std::ostringstream msg;
      msg << "transmission zero " << z << " lies on or outside the unit circle (non-minimum-phase)";
      design.warnings.push_back(msg.str());
    }
  }

  const double rho = spectral_radius(model.A() + model.B() * design.K);
  if (rho >= 1.0) {
    std::ostringstream msg;
    msg << "terminal law A+BK has spectral radius " << rho;
    throw Error(ErrorCode::UnstableTerminalLaw, msg.str());
  }
  return design;
}

Vector reference_window(const SlidingDesign& design, std::span<const Vector> trajectory, std::size_t k)
{
  const Index m = design.outputs();
  Vector H = Vector::Zero(m);
  for (Index i = 0; i < m; ++i) {
    const auto& a = design.alpha[static_cast<std::size_t>(i)];
    if (k + a.size() > trajectory.size()) {
      throw Error(ErrorCode::TrajectoryTooShort,
                  "reference window at step " + std::to_string(k) + " needs "
                      + std::to_string(a.size()) + " samples, trajectory has "
                      + std::to_string(trajectory.size()));
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Vector& y = trajectory[k + j];
      if (y.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "reference sample has wrong dimension");
      }
      H(i) += a[j] * y(i);
    }
  }
  return H;
}

} // namespace pssc
