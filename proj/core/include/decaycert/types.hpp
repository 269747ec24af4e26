#pragma once

#include <complex>

#include <Eigen/Dense>

namespace decaycert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr const char* kVersion = "0.3.0";

}  // namespace decaycert
