#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace slag {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range parameters, malformed data, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation that could not be completed to the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// C^3 is identified with R^6 as (Re z1, Re z2, Re z3, Im z1, Im z2, Im z3).
inline Vec6 to_real(const CVec3& z) {
  Vec6 out;
  out << z.real(), z.imag();
  return out;
}

inline CVec3 to_complex(const Vec6& v) {
  CVec3 z;
  for (int k = 0; k < 3; ++k) z(k) = Complex(v(k), v(k + 3));
  return z;
}

/// Multiplication by i.
inline CVec3 apply_J(const CVec3& z) { return Complex(0.0, 1.0) * z; }

/// Flat metric g0(v, w) = Re <v, w>.
inline double g0(const CVec3& v, const CVec3& w) { return v.dot(w).real(); }

/// Symplectic form omega0 = sum dx_k ^ dy_k, equal to Im <v, w>.
inline double omega0(const CVec3& v, const CVec3& w) { return v.dot(w).imag(); }

/// Holomorphic volume form dz1 ^ dz2 ^ dz3 evaluated on three vectors.
inline Complex upsilon0(const CVec3& a, const CVec3& b, const CVec3& c) {
  CMat3 m;
  m << a, b, c;
  return m.determinant();
}

}  // namespace slag
