#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <gtest/gtest.h>

#include "maskobs/algebra.hpp"
#include "maskobs/error.hpp"

namespace maskobs::test {

inline const Complex kI{0.0, 1.0};
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix sx() { return mat2(0, 1, 1, 0); }
inline Matrix sy() { return mat2(0, -kI, kI, 0); }
inline Matrix sz() { return mat2(1, 0, 0, -1); }
inline Matrix hadamard() { return mat2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2); }

inline Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

inline Vector ket(std::initializer_list<Complex> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Complex z : values) v(i++) = z;
  return v;
}

inline RealVector rvec(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// Code of the maskobs::Error thrown by f.
inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no maskobs::Error thrown";
  return ErrorCode::NumericalFailure;
}

}  // namespace maskobs::test
