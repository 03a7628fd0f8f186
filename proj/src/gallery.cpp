#include "slag/gallery.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace slag {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Interval with_margin(double lo, double hi, double frac = 0.05) {
  const double m = frac * (hi - lo);
  return {lo + m, hi - m};
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// Product of the real line with a complex curve: (x1, a, b) -> (x1, Re U + i Re V, -Im U + i Im V).
CVec3 product_point(double x1, Complex u, Complex v) {
  return CVec3(Complex(x1, 0.0), Complex(u.real(), v.real()), Complex(-u.imag(), v.imag()));
}

CVec3 product_vector(Complex du, Complex dv) {
  return CVec3(0.0, Complex(du.real(), dv.real()), Complex(-du.imag(), dv.imag()));
}

// Hodge star on a surface: (*a)_1 = -sqrt g a_k g^{k2}, (*a)_2 = sqrt g a_k g^{k1}.
template <class T>
std::array<T, 2> hodge(const std::array<T, 2>& a, const Eigen::Matrix2d& ginv, double sg) {
  return {T(-sg * (a[0] * ginv(0, 1) + a[1] * ginv(1, 1))),
          T(sg * (a[0] * ginv(0, 0) + a[1] * ginv(1, 0)))};
}

// Derivative along a coordinate of the Hodge star of a, given da, d(g^-1) and d(sqrt g).
template <class T>
std::array<T, 2> hodge_derivative(const std::array<T, 2>& a, const std::array<T, 2>& da,
                                  const Eigen::Matrix2d& ginv, const Eigen::Matrix2d& dginv,
                                  double sg, double dsg) {
  const auto p1 = hodge(a, ginv, dsg);
  const auto p2 = hodge(da, ginv, sg);
  const auto p3 = hodge(a, dginv, sg);
  return {T(p1[0] + p2[0] + p3[0]), T(p1[1] + p2[1] + p3[1])};
}

struct TwistData {
  CVec3 x;
  std::array<CVec3, 2> dx;
  std::array<CVec3, 2> beta;
  std::array<std::array<CVec3, 2>, 2> dbeta;  // dbeta[c][a] = d_c beta_a
  SurfaceHessian ddx;
};

TwistData twist_data(const LegendrianSurface& s, const CVec3& a, const Vec2& th, bool derivs) {
  TwistData d;
  d.x = s.eval(th);
  const SurfaceJacobian j = s.jac(th);
  d.dx = {j.col(0), j.col(1)};
  Eigen::Matrix2d g;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) g(p, q) = g0(d.dx[p], d.dx[q]);
  const Eigen::Matrix2d ginv = g.inverse();
  const double sg = std::sqrt(g.determinant());
  const double b = g0(a, d.x);
  const std::array<double, 2> db{g0(a, d.dx[0]), g0(a, d.dx[1])};
  const auto sdb = hodge(db, ginv, sg);
  const auto sdx = hodge(d.dx, ginv, sg);
  for (int k = 0; k < 2; ++k) d.beta[k] = d.x * sdb[k] - b * sdx[k];
  if (!derivs) return d;
  d.ddx = s.hess(th);
  for (int c = 0; c < 2; ++c) {
    Eigen::Matrix2d dg;
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) dg(p, q) = g0(d.ddx[c][p], d.dx[q]) + g0(d.dx[p], d.ddx[c][q]);
    const Eigen::Matrix2d dginv = -ginv * dg * ginv;
    const double dsg = 0.5 * sg * (ginv * dg).trace();
    const std::array<double, 2> ddb{g0(a, d.ddx[c][0]), g0(a, d.ddx[c][1])};
    const std::array<CVec3, 2> dd{d.ddx[c][0], d.ddx[c][1]};
    const auto d_sdb = hodge_derivative(db, ddb, ginv, dginv, sg, dsg);
    const auto d_sdx = hodge_derivative(d.dx, dd, ginv, dginv, sg, dsg);
    for (int k = 0; k < 2; ++k)
      d.dbeta[c][k] = d.dx[c] * sdb[k] + d.x * d_sdb[k] - db[c] * sdx[k] - b * d_sdx[k];
  }
  return d;
}

template <class F>
CVec3 simpson(F&& f, double lo, double hi, int n = 200) {
  if (hi == lo) return CVec3::Zero();
  const double h = (hi - lo) / n;
  CVec3 acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  return acc * (h / 3.0);
}

// Cone-like patch F(p, th) = f(p) x(th) with a scalar profile f.
ImmersionPatch scaled_surface(const std::string& name, const LegendrianSurface& s, Interval first,
                              std::function<std::array<Complex, 3>(double)> profile) {
  ImmersionPatch p;
  p.name = name;
  p.domain = {first, s.domain[0], s.domain[1]};
  p.eval = [s, profile](const Vec3& u) -> CVec3 {
    return profile(u(0))[0] * s.eval(Vec2(u(1), u(2)));
  };
  p.jac = [s, profile](const Vec3& u) {
    const auto f = profile(u(0));
    const Vec2 th(u(1), u(2));
    const SurfaceJacobian j = s.jac(th);
    PatchJacobian out;
    out.col(0) = f[1] * s.eval(th);
    out.col(1) = f[0] * j.col(0);
    out.col(2) = f[0] * j.col(1);
    return out;
  };
  p.hess = [s, profile](const Vec3& u) {
    const auto f = profile(u(0));
    const Vec2 th(u(1), u(2));
    const SurfaceJacobian j = s.jac(th);
    const SurfaceHessian h = s.hess(th);
    PatchHessian out;
    out[0][0] = f[2] * s.eval(th);
    for (int a = 0; a < 2; ++a) {
      out[0][a + 1] = f[1] * j.col(a);
      out[a + 1][0] = out[0][a + 1];
      for (int b = 0; b < 2; ++b) out[a + 1][b + 1] = f[0] * h[a][b];
    }
    return out;
  };
  return p;
}

}  // namespace

Eigen::Matrix2d LegendrianSurface::metric(const Vec2& th) const {
  const SurfaceJacobian j = jac(th);
  Eigen::Matrix2d g;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) g(p, q) = g0(j.col(p), j.col(q));
  return g;
}

namespace surfaces {

LegendrianSurface clifford() {
  LegendrianSurface s;
  s.name = "clifford";
  s.domain = {Interval{0.0, 2.0 * kPi}, Interval{0.0, 2.0 * kPi}};
  const double k = 1.0 / std::sqrt(3.0);
  const auto phases = [](const Vec2& t) {
    return std::array<Complex, 3>{std::polar(1.0, t(0)), std::polar(1.0, t(1)),
                                  std::polar(1.0, -t(0) - t(1))};
  };
  s.eval = [=](const Vec2& t) {
    const auto e = phases(t);
    return CVec3(k * e[0], k * e[1], k * e[2]);
  };
  s.jac = [=](const Vec2& t) {
    const auto e = phases(t);
    SurfaceJacobian j;
    j.col(0) = CVec3(kI * k * e[0], 0.0, -kI * k * e[2]);
    j.col(1) = CVec3(0.0, kI * k * e[1], -kI * k * e[2]);
    return j;
  };
  s.hess = [=](const Vec2& t) {
    const auto e = phases(t);
    SurfaceHessian h;
    h[0][0] = CVec3(-k * e[0], 0.0, -k * e[2]);
    h[0][1] = CVec3(0.0, 0.0, -k * e[2]);
    h[1][0] = h[0][1];
    h[1][1] = CVec3(0.0, -k * e[1], -k * e[2]);
    return h;
  };
  return s;
}

LegendrianSurface great_sphere() {
  LegendrianSurface s;
  s.name = "great_sphere";
  s.domain = {with_margin(0.0, kPi), Interval{0.0, 2.0 * kPi}};
  s.eval = [](const Vec2& t) {
    return CVec3(std::sin(t(0)) * std::cos(t(1)), std::sin(t(0)) * std::sin(t(1)), std::cos(t(0)));
  };
  s.jac = [](const Vec2& t) {
    const double s0 = std::sin(t(0)), c0 = std::cos(t(0)), s1 = std::sin(t(1)), c1 = std::cos(t(1));
    SurfaceJacobian j;
    j.col(0) = CVec3(c0 * c1, c0 * s1, -s0);
    j.col(1) = CVec3(-s0 * s1, s0 * c1, 0.0);
    return j;
  };
  s.hess = [](const Vec2& t) {
    const double s0 = std::sin(t(0)), c0 = std::cos(t(0)), s1 = std::sin(t(1)), c1 = std::cos(t(1));
    SurfaceHessian h;
    h[0][0] = CVec3(-s0 * c1, -s0 * s1, -c0);
    h[0][1] = CVec3(-c0 * s1, c0 * c1, 0.0);
    h[1][0] = h[0][1];
    h[1][1] = CVec3(-s0 * c1, -s0 * s1, 0.0);
    return h;
  };
  return s;
}

LegendrianSurface flat_torus() {
  LegendrianSurface s;
  s.name = "flat_torus";
  s.domain = {Interval{0.0, 2.0 * kPi}, Interval{0.0, 2.0 * kPi}};
  const double k = 1.0 / std::sqrt(2.0);
  s.eval = [=](const Vec2& t) {
    return CVec3(k * std::polar(1.0, t(0)), k * std::polar(1.0, t(1)), 0.0);
  };
  s.jac = [=](const Vec2& t) {
    SurfaceJacobian j;
    j.col(0) = CVec3(kI * k * std::polar(1.0, t(0)), 0.0, 0.0);
    j.col(1) = CVec3(0.0, kI * k * std::polar(1.0, t(1)), 0.0);
    return j;
  };
  s.hess = [=](const Vec2& t) {
    SurfaceHessian h;
    h[0][0] = CVec3(-k * std::polar(1.0, t(0)), 0.0, 0.0);
    h[0][1] = CVec3::Zero();
    h[1][0] = CVec3::Zero();
    h[1][1] = CVec3(0.0, -k * std::polar(1.0, t(1)), 0.0);
    return h;
  };
  return s;
}

}  // namespace surfaces

LegendrianResidual legendrian_residual(const LegendrianSurface& s, int grid) {
  LegendrianResidual out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Vec2 th(grid_node(s.domain[0], i, grid), grid_node(s.domain[1], j, grid));
      const CVec3 x = s.eval(th);
      const SurfaceJacobian d = s.jac(th);
      for (int a = 0; a < 2; ++a)
        out.theta_res = std::max(out.theta_res, std::abs(g0(apply_J(x), d.col(a))) / d.col(a).norm());
      const double psi = upsilon0(x, d.col(0), d.col(1)).imag() / (d.col(0).norm() * d.col(1).norm());
      out.psi_res = std::max(out.psi_res, std::abs(psi));
    }
  return out;
}

namespace holomorphic {

HolomorphicPair graph(std::string name, std::function<std::array<Complex, 3>(Complex)> f) {
  return {std::move(name), [](Complex w) { return std::array<Complex, 3>{w, 1.0, 0.0}; },
          std::move(f)};
}

HolomorphicPair square() {
  return graph("w2", [](Complex w) { return std::array<Complex, 3>{w * w, 2.0 * w, 2.0}; });
}

HolomorphicPair zero() {
  return graph("zero", [](Complex) { return std::array<Complex, 3>{0.0, 0.0, 0.0}; });
}

HolomorphicPair hyperbolic(double c) {
  if (!(c > 0.0)) throw ValidationError("hyperbolic product needs c > 0");
  return {"hyperbolic",
          [c](Complex w) {
            return std::array<Complex, 3>{c * std::cosh(w), c * std::sinh(w), c * std::cosh(w)};
          },
          [c](Complex w) {
            return std::array<Complex, 3>{c * std::sinh(w), c * std::cosh(w), c * std::sinh(w)};
          }};
}

}  // namespace holomorphic

std::array<Complex, 3> cubic_curve_profile(double k, double gamma) {
  if (k == 0.0) throw ValidationError("curve constant must be nonzero");
  const double s3 = std::sin(3.0 * gamma);
  const bool inside = k > 0.0 ? (gamma > -kPi / 3.0 && gamma < 0.0) : (gamma > 0.0 && gamma < kPi / 3.0);
  if (!inside || s3 == 0.0) throw ValidationError("angle outside the curve branch");
  const double rho = std::cbrt(k / -s3);
  const double cot = std::cos(3.0 * gamma) / s3;
  const double d1 = -rho * cot;
  const double d2 = rho * (cot * cot + 3.0 / (s3 * s3));
  const Complex e = std::polar(1.0, gamma);
  return {rho * e, Complex(d1, rho) * e, Complex(d2 - rho, 2.0 * d1) * e};
}

GalleryEntry plane() {
  GalleryEntry g;
  g.patch.name = "plane";
  g.patch.domain = {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}};
  g.patch.eval = [](const Vec3& u) -> CVec3 { return u.cast<Complex>(); };
  g.patch.jac = [](const Vec3&) -> PatchJacobian { return PatchJacobian::Identity(); };
  g.patch.hess = [](const Vec3&) {
    PatchHessian h;
    for (auto& row : h)
      for (auto& v : row) v = CVec3::Zero();
    return h;
  };
  g.expected_type = StabilizerType::Full;
  g.notes = "real 3-plane";
  g.default_grid = {3, 3, 3};
  return g;
}

GalleryEntry harvey_lawson_so3(double c) {
  if (!(c > 0.0)) throw ValidationError("harvey_lawson_so3 needs c > 0");
  const double k = c * c * c;
  GalleryEntry g;
  g.patch = scaled_surface("harvey_lawson_so3", surfaces::great_sphere(), with_margin(-kPi / 3.0, 0.0),
                           [k](double gamma) { return cubic_curve_profile(k, gamma); });
  g.patch.params = {{"c", c}};
  g.expected_type = StabilizerType::Circle;
  g.notes = "coordinates (gamma, phi, psi); branch gamma in (-pi/3, 0)";
  return g;
}

GalleryEntry product_curve(const HolomorphicPair& kind, const Box& domain) {
  GalleryEntry g;
  g.patch.name = "product_" + kind.name;
  g.patch.domain = domain;
  const auto U = kind.u, V = kind.v;
  g.patch.eval = [U, V](const Vec3& p) {
    const Complex w(p(1), p(2));
    return product_point(p(0), U(w)[0], V(w)[0]);
  };
  g.patch.jac = [U, V](const Vec3& p) {
    const Complex w(p(1), p(2));
    const auto u = U(w), v = V(w);
    PatchJacobian j;
    j.col(0) = CVec3(1.0, 0.0, 0.0);
    j.col(1) = product_vector(u[1], v[1]);
    j.col(2) = product_vector(kI * u[1], kI * v[1]);
    return j;
  };
  g.patch.hess = [U, V](const Vec3& p) {
    const Complex w(p(1), p(2));
    const auto u = U(w), v = V(w);
    PatchHessian h;
    for (auto& row : h)
      for (auto& e : row) e = CVec3::Zero();
    h[1][1] = product_vector(u[2], v[2]);
    h[1][2] = product_vector(kI * u[2], kI * v[2]);
    h[2][1] = h[1][2];
    h[2][2] = product_vector(-u[2], -v[2]);
    return h;
  };
  g.expected_type = kind.name == "zero" ? StabilizerType::Full : StabilizerType::S3;
  g.notes = "coordinates (x1, Re w, Im w)";
  return g;
}

GalleryEntry product_curve(const HolomorphicPair& kind) {
  if (kind.name == "hyperbolic")
    return product_curve(kind, {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}});
  return product_curve(kind, {Interval{-1, 1}, Interval{0.2, 1.2}, Interval{-0.5, 0.5}});
}

GalleryEntry cone_over(const LegendrianSurface& s, Interval radius) {
  if (!(radius.lo > 0.0)) throw ValidationError("cone radius must stay positive");
  GalleryEntry g;
  g.patch = scaled_surface("cone_" + s.name, s, radius, [](double r) {
    return std::array<Complex, 3>{r, 1.0, 0.0};
  });
  g.expected_type = StabilizerType::S3;
  g.notes = "coordinates (rho, th1, th2)";
  return g;
}

GalleryEntry hl_cone() {
  GalleryEntry g = cone_over(surfaces::clifford());
  g.patch.name = "hl_cone";
  return g;
}

GalleryEntry l_lambda(double l1, double l2, double l3) {
  if (std::abs(l1 + l2 + l3) > 1e-12) throw ValidationError("l_lambda needs l1 + l2 + l3 = 0");
  if (!(l1 >= l2 && l2 > 0.0 && l3 < 0.0)) throw ValidationError("l_lambda needs l1 >= l2 > 0 > l3");
  const std::array<double, 3> lam{l1, l2, l3};
  const double k1 = l1 / -l3, k2 = l2 / -l3;
  GalleryEntry g;
  g.patch.name = "l_lambda";
  g.patch.params = {{"l1", l1}, {"l2", l2}, {"l3", l3}};
  g.patch.domain = {Interval{-1, 1}, Interval{0.5, 1.5}, Interval{0.5, 1.5}};

  struct Radii {
    std::array<double, 3> r;
    std::array<Vec2, 3> dr;                 // d/d(r1, r2)
    std::array<Eigen::Matrix2d, 3> ddr;
  };
  const auto radii = [k1, k2](const Vec3& p) {
    Radii out;
    const double r1 = p(1), r2 = p(2);
    if (r1 == 0.0 && r2 == 0.0) throw ValidationError("l_lambda needs (r1, r2) != 0");
    const double r3 = std::sqrt(k1 * r1 * r1 + k2 * r2 * r2);
    out.r = {r1, r2, r3};
    out.dr = {Vec2(1, 0), Vec2(0, 1), Vec2(k1 * r1 / r3, k2 * r2 / r3)};
    out.ddr = {Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()};
    const Vec2 d3 = out.dr[2];
    out.ddr[2] << (k1 - d3(0) * d3(0)) / r3, -d3(0) * d3(1) / r3, -d3(0) * d3(1) / r3,
        (k2 - d3(1) * d3(1)) / r3;
    return out;
  };
  const auto phase = [lam](int k, double t) { return std::polar(1.0, kPi / 6.0 + lam[k] * t); };
  g.patch.eval = [=](const Vec3& p) {
    const Radii r = radii(p);
    CVec3 z;
    for (int k = 0; k < 3; ++k) z(k) = r.r[k] * phase(k, p(0));
    return z;
  };
  g.patch.jac = [=](const Vec3& p) {
    const Radii r = radii(p);
    PatchJacobian j;
    for (int k = 0; k < 3; ++k) {
      const Complex e = phase(k, p(0));
      j(k, 0) = kI * lam[k] * r.r[k] * e;
      j(k, 1) = r.dr[k](0) * e;
      j(k, 2) = r.dr[k](1) * e;
    }
    return j;
  };
  g.patch.hess = [=](const Vec3& p) {
    const Radii r = radii(p);
    PatchHessian h;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) h[a][b] = CVec3::Zero();
    for (int k = 0; k < 3; ++k) {
      const Complex e = phase(k, p(0));
      h[0][0](k) = -lam[k] * lam[k] * r.r[k] * e;
      for (int a = 0; a < 2; ++a) {
        h[0][a + 1](k) = kI * lam[k] * r.dr[k](a) * e;
        h[a + 1][0](k) = h[0][a + 1](k);
        for (int b = 0; b < 2; ++b) h[a + 1][b + 1](k) = r.ddr[k](a, b) * e;
      }
    }
    return h;
  };
  g.expected_type = StabilizerType::S3;
  g.notes = "coordinates (t, r1, r2); r3 solves the quadric constraint";
  return g;
}

GalleryEntry twisted_cone(const LegendrianSurface& s, const Vec6& a_real) {
  const LegendrianResidual lr = legendrian_residual(s);
  if (lr.theta_res > 1e-8 || lr.psi_res > 1e-8)
    throw ValidationError("twisted cone needs a Legendrian link");
  const CVec3 a = to_complex(a_real);
  GalleryEntry g;
  g.patch.name = "twisted_cone";
  for (int k = 0; k < 6; ++k) g.patch.params["a" + std::to_string(k + 1)] = a_real(k);
  const Interval d1 = s.name == "clifford" ? Interval{0.2, 1.2} : s.domain[0];
  const Interval d2 = s.name == "clifford" ? Interval{0.2, 1.2} : s.domain[1];
  g.patch.domain = {Interval{0.5, 1.5}, d1, d2};
  const double lo1 = d1.lo, lo2 = d2.lo;

  const auto beta = [s, a](int k, double t1, double t2) {
    return twist_data(s, a, Vec2(t1, t2), false).beta[k];
  };
  // integral of beta from the domain corner along axis-aligned segments
  const auto bvec = [beta, lo1, lo2](const Vec2& th) {
    return CVec3(simpson([&](double t) { return beta(0, t, lo2); }, lo1, th(0)) +
                 simpson([&](double t) { return beta(1, th(0), t); }, lo2, th(1)));
  };
  const CVec3 loop = simpson([&](double t) { return beta(0, t, d2.lo); }, d1.lo, d1.hi) +
                     simpson([&](double t) { return beta(1, d1.hi, t); }, d2.lo, d2.hi) -
                     simpson([&](double t) { return beta(0, t, d2.hi); }, d1.lo, d1.hi) -
                     simpson([&](double t) { return beta(1, d1.lo, t); }, d2.lo, d2.hi);
  g.loop_residual = loop.norm();
  if (*g.loop_residual > 1e-6) {
    std::ostringstream os;
    os << "twisted cone 1-form is not closed: loop residual " << *g.loop_residual;
    throw NumericalError(os.str());
  }

  const auto check = [s, a](const Vec3& p) {
    if (p(0) == 0.0 && g0(a, s.eval(Vec2(p(1), p(2)))) == 0.0)
      throw ValidationError("twisted cone is not immersive where t = b = 0");
  };
  g.patch.eval = [s, bvec, check](const Vec3& p) {
    check(p);
    const Vec2 th(p(1), p(2));
    return CVec3(bvec(th) + p(0) * s.eval(th));
  };
  g.patch.jac = [s, a, check](const Vec3& p) {
    check(p);
    const TwistData d = twist_data(s, a, Vec2(p(1), p(2)), false);
    PatchJacobian j;
    j.col(0) = d.x;
    for (int k = 0; k < 2; ++k) j.col(k + 1) = d.beta[k] + p(0) * d.dx[k];
    return j;
  };
  g.patch.hess = [s, a](const Vec3& p) {
    const TwistData d = twist_data(s, a, Vec2(p(1), p(2)), true);
    PatchHessian h;
    h[0][0] = CVec3::Zero();
    for (int k = 0; k < 2; ++k) {
      h[0][k + 1] = d.dx[k];
      h[k + 1][0] = d.dx[k];
    }
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k)
        h[c + 1][k + 1] = 0.5 * (d.dbeta[c][k] + d.dbeta[k][c]) + p(0) * d.ddx[c][k];
    return h;
  };
  g.expected_type = StabilizerType::S3;
  g.notes = "coordinates (t, th1, th2); translation part integrated from the domain corner";
  return g;
}

GalleryEntry z3_family(const LegendrianSurface& s, double c, Interval gamma) {
  if (c == 0.0) throw ValidationError("z3_family needs c != 0");
  const LegendrianResidual lr = legendrian_residual(s);
  if (lr.theta_res > 1e-8 || lr.psi_res > 1e-8)
    throw ValidationError("z3_family needs a Legendrian link");
  GalleryEntry g;
  g.patch = scaled_surface("z3_family", s, gamma,
                           [c](double gm) { return cubic_curve_profile(c, gm); });
  g.patch.params = {{"c", c}};
  g.expected_type = StabilizerType::Z3;
  g.notes = "coordinates (gamma, th1, th2)";
  return g;
}

GalleryEntry z3_family(const LegendrianSurface& s, double c) {
  return z3_family(s, c, c > 0.0 ? with_margin(-kPi / 3.0, 0.0) : with_margin(0.0, kPi / 3.0));
}

std::vector<std::string> gallery_names() {
  return {"plane",  "harvey_lawson_so3", "product_w2",   "product_zero", "product_hyperbolic",
          "hl_cone", "l_lambda",          "twisted_cone", "z3_family"};
}

GalleryEntry gallery_entry(const std::string& name, const std::map<std::string, double>& p) {
  if (name == "plane") return plane();
  if (name == "harvey_lawson_so3") return harvey_lawson_so3(param(p, "c", 1.0));
  if (name == "product_w2") return product_curve(holomorphic::square());
  if (name == "product_zero") return product_curve(holomorphic::zero());
  if (name == "product_hyperbolic") return product_curve(holomorphic::hyperbolic(param(p, "c", 1.0)));
  if (name == "hl_cone") return hl_cone();
  if (name == "l_lambda")
    return l_lambda(param(p, "l1", 1.0), param(p, "l2", 1.0), param(p, "l3", -2.0));
  if (name == "twisted_cone") {
    Vec6 a;
    for (int k = 0; k < 6; ++k) a(k) = param(p, "a" + std::to_string(k + 1), k == 0 ? 1.0 : 0.0);
    return twisted_cone(surfaces::clifford(), a);
  }
  if (name == "z3_family") return z3_family(surfaces::clifford(), param(p, "c", 1.0));
  throw ValidationError("unknown example: " + name);
}

}  // namespace slag
