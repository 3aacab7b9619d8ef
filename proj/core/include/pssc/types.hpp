#pragma once

#include <Eigen/Dense>

namespace pssc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

} // namespace pssc
