#include "pssc/kalman.hpp"

#include "pssc/error.hpp"

namespace pssc {

namespace {

void require_square(const Matrix& M, Index n, const char* name)
{
  if (M.rows() != n || M.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must be " + std::to_string(n) + "x"
                                                  + std::to_string(n));
  }
}

} // namespace

KalmanFilter::KalmanFilter(const LtiModel& model, Matrix Q, Matrix R, Vector x0, Matrix P0)
    : A_(model.A()), B_(model.B()), C_(model.C()), Q_(std::move(Q)), R_(std::move(R)), x_(std::move(x0)),
      P_(std::move(P0))
{
  const Index n = model.states();
  require_square(Q_, n, "Q");
  require_square(R_, model.outputs(), "R");
  require_square(P_, n, "P0");
  if (x_.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "initial estimate has wrong dimension");
  }
}

void KalmanFilter::update(const Vector& y)
{
  if (y.size() != C_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement has wrong dimension");
  }
  const Matrix PCt = P_ * C_.transpose();
  const Matrix S = C_ * PCt + R_;
  const Eigen::LDLT<Matrix> ldlt(S);
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()
      || ldlt.vectorD().minCoeff() <= 1e-12 * scale) {
    throw Error(ErrorCode::SingularInnovation, "innovation covariance is singular");
  }
  gain_ = ldlt.solve(PCt.transpose()).transpose();
  x_ += gain_ * (y - C_ * x_);
  const Matrix IKC = Matrix::Identity(P_.rows(), P_.cols()) - gain_ * C_;
  P_ = IKC * P_ * IKC.transpose() + gain_ * R_ * gain_.transpose();
  P_ = 0.5 * (P_ + P_.transpose()).eval();
}

void KalmanFilter::predict(const Vector& u)
{
  if (u.size() != B_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "input has wrong dimension");
  }
  x_ = A_ * x_ + B_ * u;
  P_ = A_ * P_ * A_.transpose() + Q_;
  P_ = 0.5 * (P_ + P_.transpose()).eval();
}

} // namespace pssc
