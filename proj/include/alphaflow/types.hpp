#pragma once

#include <Eigen/Core>

namespace alphaflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

} // namespace alphaflow
