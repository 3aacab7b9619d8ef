#pragma once

#include "pssc/model.hpp"

namespace pssc {

/// Linear Kalman filter for x+ = A x + B u + w, y = C x + v with
/// w ~ N(0, Q), v ~ N(0, R). Covariance updates use the Joseph form.
class KalmanFilter {
public:
  KalmanFilter(const LtiModel& model, Matrix Q, Matrix R, Vector x0, Matrix P0);

  /// Measurement update with y(k); throws SingularInnovation when C P C' + R
  /// cannot be inverted.
  void update(const Vector& y);
  /// Time update with the input actually applied at step k.
  void predict(const Vector& u);

  const Vector& state() const { return x_; }
  const Matrix& covariance() const { return P_; }
  /// Gain from the most recent update (empty before the first one).
  const Matrix& gain() const { return gain_; }

private:
  Matrix A_;
  Matrix B_;
  Matrix C_;
  Matrix Q_;
  Matrix R_;
  Vector x_;
  Matrix P_;
  Matrix gain_;
};

} // namespace pssc
