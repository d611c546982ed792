#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tto {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Boundary geometry: the real line bounding the upper half-plane, or the unit circle.
enum class Domain { half_plane, disc };

const char* to_string(Domain d);

}  // namespace tto
