#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace toeplitz {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix used by the oracle paths.
using DenseMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

} // namespace toeplitz
