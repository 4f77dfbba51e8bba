#pragma once

#include <complex>

#include <Eigen/Dense>

namespace weil {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

}  // namespace weil
