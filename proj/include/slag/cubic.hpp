#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slag/core.hpp"

namespace slag {

// Thresholds for cubic classification. Inputs are expected to be normalized so
// that the tensor norm lies in [0, 10].
inline constexpr double kZeroNorm = 1e-9;      // absolute, below this h is the zero cubic
inline constexpr double kTraceTol = 1e-8;      // relative trace tolerance of HarmonicCubic
inline constexpr double kAxisTol = 1e-6;       // relative axis residual
inline constexpr double kFitTol = 1e-6;        // relative normal-form residual
inline constexpr double kBoundaryTol = 1e-6;   // default classification tolerance
inline constexpr double kRotationTol = 1e-9;   // orthogonality accepted by Rotation3
inline constexpr double kTriplePointTol = 1e-7;  // null contraction marking a triple point

/// Index of h_ijk (any order, indices 0..2) in the 10-entry lexicographic layout
/// 111,112,113,122,123,133,222,223,233,333.
int cubic_index(int i, int j, int k);

/// Number of index triples represented by each stored entry.
inline constexpr std::array<double, 10> kCubicMultiplicity{1, 3, 3, 3, 6, 3, 1, 3, 3, 1};

/// Fully symmetric rank-3 tensor on R^3, not necessarily traceless.
struct SymmetricCubic {
  std::array<double, 10> coeffs{};

  /// Build from polynomial coefficients of x^3, x^2y, x^2z, xy^2, xyz, xz^2,
  /// y^3, y^2z, yz^2, z^3.
  static SymmetricCubic from_monomials(const std::array<double, 10>& m);

  double at(int i, int j, int k) const { return coeffs[cubic_index(i, j, k)]; }
  Vec3 trace() const;  // v_k = sum_i h_iik
  double norm() const;
};

class HarmonicCubic;
HarmonicCubic project_traceless(const SymmetricCubic& t);

/// Traceless fully symmetric rank-3 tensor h_ijk, i.e. a harmonic cubic
/// polynomial h(x) = h_ijk x_i x_j x_k.
class HarmonicCubic {
 public:
  HarmonicCubic() = default;

  /// Throws ValidationError on non-finite entries or a trace above
  /// kTraceTol * norm (plus a 1e-14 absolute floor).
  explicit HarmonicCubic(const std::array<double, 10>& coeffs);

  static HarmonicCubic from_monomials(const std::array<double, 10>& m);

  const std::array<double, 10>& coeffs() const { return coeffs_; }
  double at(int i, int j, int k) const { return coeffs_[cubic_index(i, j, k)]; }
  double norm() const;
  double dot(const HarmonicCubic& other) const;
  double trace_residual() const;  // max_k |sum_i h_iik|

  HarmonicCubic& operator+=(const HarmonicCubic& o);
  HarmonicCubic& operator-=(const HarmonicCubic& o);
  HarmonicCubic& operator*=(double a);
  friend HarmonicCubic operator+(HarmonicCubic a, const HarmonicCubic& b) { return a += b; }
  friend HarmonicCubic operator-(HarmonicCubic a, const HarmonicCubic& b) { return a -= b; }
  friend HarmonicCubic operator*(double a, HarmonicCubic h) { return h *= a; }
  friend HarmonicCubic operator-(HarmonicCubic h) { return h *= -1.0; }

 private:
  friend HarmonicCubic project_traceless(const SymmetricCubic& t);
  std::array<double, 10> coeffs_{};
};

/// Named harmonic cubics used throughout.
namespace cubics {
HarmonicCubic zonal();        // z(2z^2 - 3x^2 - 3y^2)
HarmonicCubic xyz6();         // 6xyz
HarmonicCubic cubic3();       // x^3 - 3xy^2
HarmonicCubic normal_z2(double r, double s);  // r*zonal + 6s*xyz
HarmonicCubic normal_z3(double r, double s);  // r*zonal + s*(x^3 - 3xy^2)
}  // namespace cubics

/// Proper rotation of R^3.
class Rotation3 {
 public:
  Rotation3() : m_(Mat3::Identity()) {}
  /// Throws ValidationError when ||R^T R - I|| or |det R - 1| exceeds kRotationTol.
  explicit Rotation3(const Mat3& m);

  static Rotation3 about_axis(const Vec3& axis, double angle);
  /// Rotation sending e_z to the unit vector w (minimal geodesic rotation; for
  /// w in the lower hemisphere it is composed with a half turn about x).
  static Rotation3 transporting_z_to(const Vec3& w);
  /// Haar-random rotation driven by three uniforms in [0,1).
  static Rotation3 from_uniforms(double u1, double u2, double u3);

  const Mat3& matrix() const { return m_; }
  Rotation3 operator*(const Rotation3& o) const;
  Rotation3 inverse() const;

 private:
  Mat3 m_;
};

/// Nearest rotation to an arbitrary 3x3 matrix (polar factor, det forced +1).
Mat3 nearest_rotation(const Mat3& m);

/// Value h(x) and gradient 3 h_ijk x_j x_k.
std::pair<double, Vec3> evaluate_and_gradient(const HarmonicCubic& h, const Vec3& x);

/// Pullback h'(x) = h(R x).
HarmonicCubic rotate(const HarmonicCubic& h, const Rotation3& r);

struct CubicInvariants {
  double i2 = 0.0;  // ||h||^2
  double i4 = 0.0;  // trace(M^2), M_pq = sum_ij h_ijp h_ijq
};
CubicInvariants invariants(const HarmonicCubic& h);

/// Components of h in the irreducibles V_k^w of the rotations about w. Each
/// complex c_k = a - i b pairs the coefficients on an orthonormal (Re, Im)
/// basis so that rotating by alpha about w multiplies c_k by e^{i k alpha}.
struct AxisDecomposition {
  Vec3 axis = Vec3::UnitZ();
  double c0 = 0.0;
  Complex c1, c2, c3;
};
AxisDecomposition axis_decompose(const HarmonicCubic& h, const Vec3& w);

enum class StabilizerType { Full, Circle, A4, S3, Z3, Z2, Trivial };
std::string_view to_string(StabilizerType t);
StabilizerType stabilizer_from_string(std::string_view s);

struct AxisHit {
  Vec3 axis;
  double residual = 0.0;  // relative to ||h||
};

struct SymmetryAxes {
  std::vector<AxisHit> order2;
  std::vector<AxisHit> order3;
  std::vector<AxisHit> circle;
  int failed_basins = 0;  // refinements that did not converge
};

/// Axes w for which a rotation of order 2, order 3, or every angle about w
/// fixes h. Residuals are sqrt(|c1|^2+|c3|^2), sqrt(|c1|^2+|c2|^2) and
/// sqrt(|c1|^2+|c2|^2+|c3|^2) divided by ||h||.
SymmetryAxes find_symmetry_axes(const HarmonicCubic& h, double tol = kAxisTol);

struct NormalFormResult {
  StabilizerType type = StabilizerType::Trivial;
  Rotation3 rotation;  // rotate(h, rotation) is the normal form
  double r = 0.0;
  double s = 0.0;
  double residual = 0.0;
  std::optional<double> dist_s_minus_r;        // |s - r|, Z2 branch
  std::optional<double> dist_s_minus_r_sqrt2;  // |s - r sqrt 2|, Z3 branch
};

/// Axis census matching no row of the stabilizer table.
class CensusError : public NumericalError {
 public:
  CensusError(int order2, int order3, int circle);
  int order2, order3, circle;
};

/// The normal-form polynomial for a stabilizer type and parameters.
HarmonicCubic normal_form(StabilizerType type, double r, double s);

NormalFormResult classify(const HarmonicCubic& h, double tol = kBoundaryTol);

/// Unit directions w with grad h(w) = 0 (real singular points of the curve h = 0).
std::vector<Vec3> singular_directions(const HarmonicCubic& h, double tol = kBoundaryTol);

/// Newton refinement of a singular direction near `seed`; returns the refined
/// unit vector and the gradient residual relative to ||h||.
std::pair<Vec3, double> refine_singular_direction(const HarmonicCubic& h, const Vec3& seed);

struct Reducibility {
  bool reducible = false;
  std::optional<Vec3> factor;  // linear form l(x) = factor . x
  double remainder = 0.0;      // relative remainder of dividing h by l
};
Reducibility is_reducible(const HarmonicCubic& h, double tol = kBoundaryTol);

/// Fibonacci lattice of n unit vectors.
std::vector<Vec3> fibonacci_sphere(int n);

}  // namespace slag
