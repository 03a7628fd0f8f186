#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slag/geometry.hpp"

namespace slag {

/// Direction u (unit) and moment v with Re <u, v> = 0.
struct OrientedLine {
  CVec3 u = CVec3::Unit(0);
  CVec3 v = CVec3::Zero();
};

inline constexpr double kLineTol = 1e-12;

OrientedLine make_line(const CVec3& u, const CVec3& v);
/// Same, with u and v given in R^6 coordinates.
OrientedLine make_line_real(const Vec6& u, const Vec6& v);

struct LineSample {
  CVec3 u, v;      // the line at s
  CVec3 du, dv;    // first derivatives in s
  CVec3 ddu, ddv;  // second derivatives in s
};

struct LineCurve {
  std::string name;
  Interval range;
  std::function<LineSample(double)> at;

  /// Sample at s with range and line invariants checked.
  LineSample sample(double s) const;
};

/// theta = Ju . u', tau = Ju . v' (real inner product).
std::pair<double, double> theta_tau(const LineCurve& c, double s);

/// Gamma(s, t) = v(s) + t u(s).
struct RuledSurface {
  std::string name;
  LineCurve curve;
  Interval t_range;

  CVec3 eval(double s, double t) const;
  /// (dGamma/ds, dGamma/dt).
  std::array<CVec3, 2> jac(double s, double t) const;
  /// (d2/ds2, d2/dsdt, d2/dt2).
  std::array<CVec3, 3> hess(double s, double t) const;
  /// False on the locus (v' + t u') ^ u = 0.
  bool immersive(double s, double t, double tol = 1e-9) const;
};

RuledSurface generate_ruled(const LineCurve& c, Interval t_range);

/// |omega0(Gamma_s, Gamma_t)| divided by the area element; NaN off the immersive locus.
double omega_pullback(const RuledSurface& g, double s, double t);

struct PullbackScan {
  double max_residual = 0.0;
  int immersive = 0;
  int total = 0;
};
/// Cell-centre scan of omega_pullback over the immersive nodes.
PullbackScan omega_pullback_scan(const RuledSurface& g, int ns = 16, int nt = 16);

struct RuledPoint {
  bool ruled = false;
  bool planar = false;               // cubic vanishes: every direction is a ruling
  std::vector<Vec3> frame_directions;  // singular directions in the adapted frame
  std::vector<CVec3> directions;      // the same directions as ambient tangent vectors
  std::vector<Vec3> parameter_directions;
};

inline constexpr double kPlanarTol = 1e-6;

RuledPoint is_ruled_point(const ImmersionPatch& p, const Vec3& u, double tol = kBoundaryTol);

struct Ruling {
  OrientedLine line;
  double straightness = 0.0;  // max distance from the chord divided by arc length
  std::vector<CVec3> trace;
};

/// Traces the singular-direction field from u0 over `arclen` by RK4.
Ruling extract_ruling(const ImmersionPatch& p, const Vec3& u0, double arclen, int steps = 20);

}  // namespace slag
