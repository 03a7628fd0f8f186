#include "slag/ruled.hpp"

#include <cmath>
#include <limits>

namespace slag {

OrientedLine make_line(const CVec3& u, const CVec3& v) {
  const double n = u.norm();
  if (!(n > 0.0) || !u.allFinite() || !v.allFinite()) throw ValidationError("make_line: zero or non-finite direction");
  OrientedLine l;
  l.u = u / n;
  l.v = v - g0(l.u, v) * l.u;
  return l;
}

OrientedLine make_line_real(const Vec6& u, const Vec6& v) { return make_line(to_complex(u), to_complex(v)); }

LineSample LineCurve::sample(double s) const {
  if (!at) throw ValidationError("line curve without an oracle");
  if (!(s >= range.lo && s <= range.hi)) throw ValidationError("line curve parameter out of range");
  const LineSample x = at(s);
  const bool finite = x.u.allFinite() && x.v.allFinite() && x.du.allFinite() && x.dv.allFinite() &&
                      x.ddu.allFinite() && x.ddv.allFinite();
  if (!finite) throw NumericalError("line curve oracle returned non-finite values");
  if (std::abs(x.u.norm() - 1.0) > kLineTol) throw ValidationError("line curve direction is not unit");
  if (std::abs(g0(x.u, x.v)) > kLineTol * (1.0 + x.v.norm())) throw ValidationError("line curve moment not orthogonal");
  return x;
}

std::pair<double, double> theta_tau(const LineCurve& c, double s) {
  const LineSample x = c.sample(s);
  const CVec3 ju = apply_J(x.u);
  return {g0(ju, x.du), g0(ju, x.dv)};
}

CVec3 RuledSurface::eval(double s, double t) const {
  const LineSample x = curve.sample(s);
  return x.v + t * x.u;
}

std::array<CVec3, 2> RuledSurface::jac(double s, double t) const {
  const LineSample x = curve.sample(s);
  return {x.dv + t * x.du, x.u};
}

std::array<CVec3, 3> RuledSurface::hess(double s, double t) const {
  const LineSample x = curve.sample(s);
  return {x.ddv + t * x.ddu, x.du, CVec3::Zero()};
}

bool RuledSurface::immersive(double s, double t, double tol) const {
  const auto j = jac(s, t);
  const CVec3 perp = j[0] - g0(j[1], j[0]) * j[1];
  return perp.norm() > tol * (1.0 + j[0].norm());
}

RuledSurface generate_ruled(const LineCurve& c, Interval t_range) {
  if (!(t_range.hi >= t_range.lo)) throw ValidationError("generate_ruled: empty t range");
  return {"ruled_" + c.name, c, t_range};
}

double omega_pullback(const RuledSurface& g, double s, double t) {
  if (!g.immersive(s, t)) return std::numeric_limits<double>::quiet_NaN();
  const auto j = g.jac(s, t);
  const double a = j[0].squaredNorm(), b = j[1].squaredNorm(), c = g0(j[0], j[1]);
  return std::abs(omega0(j[0], j[1])) / std::sqrt(std::max(a * b - c * c, 0.0));
}

PullbackScan omega_pullback_scan(const RuledSurface& g, int ns, int nt) {
  if (ns < 1 || nt < 1) throw ValidationError("omega_pullback_scan: grid counts must be positive");
  PullbackScan out;
  for (int i = 0; i < ns; ++i)
    for (int k = 0; k < nt; ++k) {
      const double s = grid_node(g.curve.range, i, ns), t = grid_node(g.t_range, k, nt);
      ++out.total;
      const double w = omega_pullback(g, s, t);
      if (std::isnan(w)) continue;
      ++out.immersive;
      out.max_residual = std::max(out.max_residual, w);
    }
  return out;
}

RuledPoint is_ruled_point(const ImmersionPatch& p, const Vec3& u, double tol) {
  const CubicAtPoint c = fundamental_cubic_full(p, u);
  RuledPoint out;
  if (c.cubic.norm() <= kPlanarTol) {
    out.ruled = out.planar = true;
    return out;
  }
  out.frame_directions = singular_directions(c.cubic, tol);
  out.ruled = !out.frame_directions.empty();
  for (const Vec3& w : out.frame_directions) {
    CVec3 amb = CVec3::Zero();
    for (int i = 0; i < 3; ++i) amb += w(i) * c.frame.e[i];
    out.directions.push_back(amb);
    out.parameter_directions.push_back(c.frame.preimage * w);
  }
  return out;
}

namespace {

bool inside(const Box& b, const Vec3& u) {
  for (int a = 0; a < 3; ++a) {
    const double pad = 1e-12 * (1.0 + std::abs(b[a].hi - b[a].lo));
    if (u(a) < b[a].lo - pad || u(a) > b[a].hi + pad) return false;
  }
  return true;
}

}  // namespace

Ruling extract_ruling(const ImmersionPatch& p, const Vec3& u0, double arclen, int steps) {
  if (!(arclen > 0.0) || steps < 1) throw ValidationError("extract_ruling: arclen and steps must be positive");
  const RuledPoint start = is_ruled_point(p, u0);
  if (start.planar) throw ValidationError("extract_ruling: planar point, direction field not isolated");
  if (!start.ruled) throw ValidationError("extract_ruling: no singular direction at the start point");

  CVec3 prev = start.directions.front();
  // Unit-speed parameter velocity along the singular direction closest to prev.
  auto field = [&](const Vec3& u) -> Vec3 {
    if (!inside(p.domain, u)) throw ValidationError("extract_ruling: tracing left the domain");
    const CubicAtPoint c = fundamental_cubic_full(p, u);
    Vec3 seed;
    for (int i = 0; i < 3; ++i) seed(i) = g0(c.frame.e[i], prev);
    auto [w, res] = refine_singular_direction(c.cubic, seed);
    if (res > kBoundaryTol) throw NumericalError("extract_ruling: singular direction lost while tracing");
    CVec3 amb = CVec3::Zero();
    for (int i = 0; i < 3; ++i) amb += w(i) * c.frame.e[i];
    if (g0(amb, prev) < 0.0) {
      w = -w;
      amb = -amb;
    }
    prev = amb;
    return c.frame.preimage * w;
  };

  Ruling out;
  const double h = arclen / steps;
  Vec3 u = u0;
  out.trace.push_back(p.eval(u));
  for (int n = 0; n < steps; ++n) {
    const Vec3 k1 = field(u);
    const Vec3 k2 = field(u + h / 2 * k1);
    const Vec3 k3 = field(u + h / 2 * k2);
    const Vec3 k4 = field(u + h * k3);
    u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!inside(p.domain, u)) throw ValidationError("extract_ruling: tracing left the domain");
    out.trace.push_back(p.eval(u));
  }
  const CVec3 chord = out.trace.back() - out.trace.front();
  out.line = make_line(chord, out.trace.front());
  for (const CVec3& x : out.trace) {
    const CVec3 d = x - out.trace.front();
    out.straightness = std::max(out.straightness, (d - g0(out.line.u, d) * out.line.u).norm() / arclen);
  }
  return out;
}

}  // namespace slag
