#pragma once

#include <Eigen/Dense>

namespace mcda {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXi = Eigen::VectorXi;
using MatrixXi = Eigen::MatrixXi;
using Index = Eigen::Index;

}  // namespace mcda
