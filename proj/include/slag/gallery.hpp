#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slag/geometry.hpp"

namespace slag {

struct GalleryEntry {
  ImmersionPatch patch;
  StabilizerType expected_type = StabilizerType::Trivial;
  std::string notes;
  std::array<int, 3> default_grid{5, 8, 8};
  std::optional<double> loop_residual;  // twisted cones only
};

using SurfaceJacobian = Eigen::Matrix<Complex, 3, 2>;
using SurfaceHessian = std::array<std::array<CVec3, 2>, 2>;

/// Surface x(th1, th2) in the unit sphere of C^3.
struct LegendrianSurface {
  std::string name;
  std::array<Interval, 2> domain{};
  std::function<CVec3(const Vec2&)> eval;
  std::function<SurfaceJacobian(const Vec2&)> jac;
  std::function<SurfaceHessian(const Vec2&)> hess;

  Eigen::Matrix2d metric(const Vec2& th) const;
};

namespace surfaces {
/// (e^{i th1}, e^{i th2}, e^{-i(th1+th2)}) / sqrt 3.
LegendrianSurface clifford();
/// Unit sphere of R^3 in polar coordinates (th1 polar angle).
LegendrianSurface great_sphere();
/// (e^{i th1}, e^{i th2}, 0) / sqrt 2; not Legendrian.
LegendrianSurface flat_torus();
}  // namespace surfaces

struct LegendrianResidual {
  double theta_res = 0.0;  // max |<Jx, dx(v)>| over unit coordinate directions
  double psi_res = 0.0;    // max |Im Upsilon0(x, x_1, x_2)| / (|x_1| |x_2|)
};
LegendrianResidual legendrian_residual(const LegendrianSurface& s, int grid = 16);

/// Holomorphic data (U, V) for a product with a complex curve, with two derivatives each.
struct HolomorphicPair {
  std::string name;
  std::function<std::array<Complex, 3>(Complex)> u;  // U, U', U''
  std::function<std::array<Complex, 3>(Complex)> v;  // V, V', V''
};

namespace holomorphic {
/// U = w, V = f(w).
HolomorphicPair graph(std::string name, std::function<std::array<Complex, 3>(Complex)> f);
HolomorphicPair square();    // f(w) = w^2
HolomorphicPair zero();      // f = 0
HolomorphicPair hyperbolic(double c);  // U = c cosh w, V = c sinh w
}  // namespace holomorphic

GalleryEntry plane();
GalleryEntry harvey_lawson_so3(double c);
GalleryEntry product_curve(const HolomorphicPair& kind);
GalleryEntry product_curve(const HolomorphicPair& kind, const Box& domain);
GalleryEntry hl_cone();
GalleryEntry cone_over(const LegendrianSurface& s, Interval radius = {0.5, 1.5});
GalleryEntry l_lambda(double l1, double l2, double l3);
GalleryEntry twisted_cone(const LegendrianSurface& s, const Vec6& a);
GalleryEntry z3_family(const LegendrianSurface& s, double c);
GalleryEntry z3_family(const LegendrianSurface& s, double c, Interval gamma);

/// The radial profile rho e^{i gamma} of the curve Im((rho e^{i gamma})^3) = -k on
/// gamma in (-pi/3, 0) (k > 0) or (0, pi/3) (k < 0); returns f, f', f''.
std::array<Complex, 3> cubic_curve_profile(double k, double gamma);

/// Gallery entry by name: plane, harvey_lawson_so3, product_w2, product_zero,
/// product_hyperbolic, hl_cone, l_lambda, twisted_cone, z3_family.
GalleryEntry gallery_entry(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> gallery_names();

}  // namespace slag
