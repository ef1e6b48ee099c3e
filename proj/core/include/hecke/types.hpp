// SPDX-License-Identifier: MIT
// Scalar and small-matrix aliases shared by every module.
#pragma once

#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace hecke {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// Point-evaluable 2x2 matrix of functions, e.g. a theta-valued morphism.
using MatFn = std::function<Mat2(cplx)>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

inline cplx expi2pi(cplx z) { return std::exp(2.0 * kPi * kI * z); }

inline Mat2 mat2(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace hecke
