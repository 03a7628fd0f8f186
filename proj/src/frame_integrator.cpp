#include "slag/frame_integrator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace slag {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

// ---- SO(2) ---------------------------------------------------------------------

double SO2Profile::conserved() const { return std::pow(r, 1.5) + t * t / std::sqrt(r); }

SO2Profile so2_profile(double c, double theta) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("so2_profile: c must be positive");
  if (!(std::abs(theta) < kPi / 6.0)) throw ValidationError("so2_profile: |theta| must be below pi/6");
  const double cs = std::cos(3.0 * theta);
  const double cr = std::cbrt(cs);
  return {c, theta, cr * cr * cr * cr / c, std::sin(3.0 * theta) * cr / c};
}

Vec2 so2_rhs(double c, double theta, const Vec2& rt) {
  const double cs = std::cos(3.0 * theta);
  if (!(cs > 0.0)) throw ValidationError("so2_rhs: theta outside (-pi/6, pi/6)");
  const double w = c / std::pow(cs, 4.0 / 3.0);
  const double r = rt(0), t = rt(1);
  return Vec2(-4.0 * r * t * w, (3.0 * r * r - t * t) * w);
}

Vec2 so2_integrate(double c, double theta0, const Vec2& rt0, double theta1, int steps) {
  if (steps < 1) throw ValidationError("so2_integrate: steps must be positive");
  const double h = (theta1 - theta0) / steps;
  Vec2 y = rt0;
  for (int n = 0; n < steps; ++n) {
    const double th = theta0 + n * h;
    const Vec2 k1 = so2_rhs(c, th, y);
    const Vec2 k2 = so2_rhs(c, th + h / 2, y + h / 2 * k1);
    const Vec2 k3 = so2_rhs(c, th + h / 2, y + h / 2 * k2);
    const Vec2 k4 = so2_rhs(c, th + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

// ---- Z2 system -------------------------------------------------------------------

namespace {

// Packed layout: x (6), e1 e2 e3 (6 each), r s t1 t2 t3 u1, then optional w columns (3 each).
constexpr int kCore = 30;
constexpr int kScal = 24;

using VecX = Eigen::VectorXd;

struct Coeffs {
  double a[3][3][3];  // a[i][j][k] = alpha_ij(E_k)
  double h[3][3][3];  // h[i][j][k] = beta_ij(E_k)
  double ds[6][3];    // derivatives of r s t1 t2 t3 u1 along E_k
};

double u2_of(double r, double s, double t1, double t2, double t3, double u1, Z2Law law) {
  const double su1 = law == Z2Law::FlippedU2 ? -s * u1 : s * u1;
  return 0.5 * (-2 * r * t1 * t1 + r * t2 * t2 - 3 * s * t2 * t3 + r * t3 * t3) - r - su1;
}

double u3_of(double r, double s, double t1, double t2, double t3, double u1) {
  return 0.5 * (2 * s * t1 * t1 - s * t2 * t2 + 3 * r * t2 * t3 - s * t3 * t3) + s + r * u1;
}

Coeffs coefficients(const double* q, Z2Law law) {
  const double r = q[0], s = q[1], t1 = q[2], t2 = q[3], t3 = q[4], u1 = q[5];
  Coeffs c{};
  const double a23[3] = {0.0, 0.5 * (s * t2 - r * t3), 0.5 * (s * t3 - r * t2)};
  const double a31[3] = {-s * t2, s * t1, -r * t1};
  const double a12[3] = {-s * t3, r * t1, -s * t1};
  for (int k = 0; k < 3; ++k) {
    c.a[1][2][k] = a23[k];
    c.a[2][1][k] = -a23[k];
    c.a[2][0][k] = a31[k];
    c.a[0][2][k] = -a31[k];
    c.a[0][1][k] = a12[k];
    c.a[1][0][k] = -a12[k];
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int idx = cubic_index(i, j, k);
        // h111 = 2r, h122 = h133 = -r, h123 = s
        c.h[i][j][k] = idx == 0 ? 2 * r : (idx == 3 || idx == 5) ? -r : idx == 4 ? s : 0.0;
      }
  const double u2 = u2_of(r, s, t1, t2, t3, u1, law);
  const double u3 = u3_of(r, s, t1, t2, t3, u1);
  const double p = 1 + t1 * t1;
  const double rows[6][3] = {
      {2 * (s * s + 2 * r * r) * t1, 2 * r * s * t3 + s * s * t2, -(2 * r * s * t2 + s * s * t3)},
      {6 * r * s * t1, s * (2 * s * t3 + r * t2), -s * (2 * s * t2 + r * t3)},
      {s * u1 - 3 * r - 3 * r * t1 * t1, 0.0, 0.0},
      {-3 * t1 * (r * t2 - s * t3), u2 - 1.5 * r * t2 * t2, u3 + 1.5 * s * t2 * t2},
      {-3 * t1 * (r * t3 - s * t2), -(u3 + 1.5 * s * t3 * t3), -(u2 - 1.5 * r * t3 * t3)},
      {-2 * t1 * (3 * r * u1 + s * (-t1 * t1 + 2 * t2 * t2 + 2 * t3 * t3 - 1)),
       3 * (r * t3 + s * t2) * p - u1 * (r * t2 + s * t3),
       u1 * (s * t2 + r * t3) - 3 * (r * t2 + s * t3) * p}};
  for (int m = 0; m < 6; ++m)
    for (int k = 0; k < 3; ++k) c.ds[m][k] = rows[m][k];
  return c;
}

CVec3 frame_vec(const VecX& y, int j) {
  CVec3 z;
  for (int k = 0; k < 3; ++k) z(k) = Complex(y(6 + 6 * j + k), y(6 + 6 * j + 3 + k));
  return z;
}

void set_vec(VecX& y, int offset, const CVec3& z) { y.segment<6>(offset) = to_real(z); }

// Derivative along sum_k sigma_k E_k; w columns follow the flow of `axis` (sigma = unit).
VecX rhs(const VecX& y, const Vec3& sigma, Z2Law law, int axis) {
  const Coeffs c = coefficients(y.data() + kScal, law);
  VecX dy = VecX::Zero(y.size());
  std::array<CVec3, 3> e{frame_vec(y, 0), frame_vec(y, 1), frame_vec(y, 2)};
  CVec3 dx = CVec3::Zero();
  for (int k = 0; k < 3; ++k) dx += sigma(k) * e[k];
  set_vec(dy, 0, dx);
  for (int j = 0; j < 3; ++j) {
    CVec3 de = CVec3::Zero();
    for (int k = 0; k < 3; ++k) {
      if (sigma(k) == 0.0) continue;
      for (int m = 0; m < 3; ++m)
        de += sigma(k) * (c.a[m][j][k] * e[m] + c.h[m][j][k] * apply_J(e[m]));
    }
    set_vec(dy, 6 + 6 * j, de);
  }
  for (int m = 0; m < 6; ++m)
    for (int k = 0; k < 3; ++k) dy(kScal + m) += sigma(k) * c.ds[m][k];
  const int nw = (static_cast<int>(y.size()) - kCore) / 3;
  if (nw > 0) {
    // w_i' = sum_m (alpha_{i,axis}(E_m) - alpha_{i,m}(E_axis)) w_m
    Mat3 mk;
    for (int i = 0; i < 3; ++i)
      for (int m = 0; m < 3; ++m) mk(i, m) = c.a[i][axis][m] - c.a[i][m][axis];
    for (int w = 0; w < nw; ++w) dy.segment<3>(kCore + 3 * w) = mk * y.segment<3>(kCore + 3 * w);
  }
  return dy;
}

void check_scalars(const VecX& y, double sign0) {
  const double r = y(kScal), s = y(kScal + 1);
  for (int m = 0; m < 6; ++m)
    if (!std::isfinite(y(kScal + m))) throw NumericalError("z2: state blow-up (non-finite)");
  if (!(r >= kZ2Min && r <= kZ2Max && s >= kZ2Min && s <= kZ2Max))
    throw NumericalError("z2: r or s left [1e-6, 1e6] (r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
  if (std::abs(r - s) < kZ2Gap || (r - s) * sign0 < 0.0) throw NumericalError("z2: r - s crossed zero");
}

// Polar projection of the frame onto U(3); returns |E^H E - I|.
double reorthonormalize(VecX& y) {
  CMat3 e;
  for (int j = 0; j < 3; ++j) e.col(j) = frame_vec(y, j);
  const double drift = (e.adjoint() * e - CMat3::Identity()).norm();
  Eigen::JacobiSVD<CMat3> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMat3 p = svd.matrixU() * svd.matrixV().adjoint();
  for (int j = 0; j < 3; ++j) set_vec(y, 6 + 6 * j, p.col(j));
  return drift;
}

// Integrator with the re-orthonormalization schedule and abort checks.
struct Stepper {
  Z2Law law;
  double sign0;
  int count = 0;
  double arc = 0.0;
  double max_drift = 0.0;

  void step(VecX& y, const Vec3& sigma, double h, int axis) {
    const VecX k1 = rhs(y, sigma, law, axis);
    const VecX k2 = rhs(y + h / 2 * k1, sigma, law, axis);
    const VecX k3 = rhs(y + h / 2 * k2, sigma, law, axis);
    const VecX k4 = rhs(y + h * k3, sigma, law, axis);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    check_scalars(y, sign0);
    arc += std::abs(h) * sigma.norm();
    if (++count % kReorthEvery == 0) {
      const double d = reorthonormalize(y);
      if (arc > 0.0) max_drift = std::max(max_drift, d / arc);
      arc = 0.0;
    }
  }

  void flow(VecX& y, const Vec3& sigma, double time, int substeps, int axis = 0) {
    for (int n = 0; n < substeps; ++n) step(y, sigma, time / substeps, axis);
  }
};

VecX origin_state(const Z2Init& in) {
  VecX y = VecX::Zero(kCore);
  for (int j = 0; j < 3; ++j) y(6 + 6 * j + j) = 1.0;
  const double q[6] = {in.r, in.s, in.t1, in.t2, in.t3, in.u1};
  for (int m = 0; m < 6; ++m) y(kScal + m) = q[m];
  return y;
}

StructureStateZ2 unpack(const VecX& y) {
  StructureStateZ2 st;
  st.x = to_complex(y.segment<6>(0));
  for (int j = 0; j < 3; ++j) st.e[j] = frame_vec(y, j);
  st.r = y(kScal);
  st.s = y(kScal + 1);
  st.t1 = y(kScal + 2);
  st.t2 = y(kScal + 3);
  st.t3 = y(kScal + 4);
  st.u1 = y(kScal + 5);
  return st;
}

VecX pack(const StructureStateZ2& st) {
  VecX y(kCore);
  set_vec(y, 0, st.x);
  for (int j = 0; j < 3; ++j) set_vec(y, 6 + 6 * j, st.e[j]);
  const double q[6] = {st.r, st.s, st.t1, st.t2, st.t3, st.u1};
  for (int m = 0; m < 6; ++m) y(kScal + m) = q[m];
  return y;
}

int substeps_for(const Z2Field& f, int axis, double u) {
  const int half = f.cells[axis] / 2;
  if (half > 0 && std::abs(u) / half <= 1.5 * f.step) return half;
  return std::max(1, static_cast<int>(std::ceil(std::abs(u) / f.step)));
}

// Canonical path to u; with_jac integrates the pushforwards of d/du1 and d/du2.
std::pair<VecX, PatchJacobian> trace_path(const Z2Field& f, const Vec3& u, bool with_jac) {
  Stepper st{f.law, f.init.r > f.init.s ? 1.0 : -1.0};
  VecX y = origin_state(f.init);
  st.flow(y, Vec3::Unit(0), u(0), substeps_for(f, 0, u(0)), 0);
  if (with_jac) {
    y.conservativeResize(kCore + 3);
    y.segment<3>(kCore) = Vec3::Unit(0);
  }
  st.flow(y, Vec3::Unit(1), u(1), substeps_for(f, 1, u(1)), 1);
  if (with_jac) {
    y.conservativeResize(kCore + 6);
    y.segment<3>(kCore + 3) = Vec3::Unit(1);
  }
  st.flow(y, Vec3::Unit(2), u(2), substeps_for(f, 2, u(2)), 2);
  PatchJacobian jac = PatchJacobian::Zero();
  if (with_jac) {
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 3; ++i) jac.col(c) += y(kCore + 3 * c + i) * frame_vec(y, i);
    jac.col(2) = frame_vec(y, 2);
  }
  return {y.head(kCore), jac};
}

}  // namespace

double StructureStateZ2::u2() const { return u2_of(r, s, t1, t2, t3, u1, Z2Law::Standard); }
double StructureStateZ2::u3() const { return u3_of(r, s, t1, t2, t3, u1); }

int Z2Field::index(int i, int j, int k) const {
  return (i * (cells[1] + 1) + j) * (cells[2] + 1) + k;
}

const StructureStateZ2& Z2Field::at(int i, int j, int k) const { return nodes.at(index(i, j, k)); }

Vec3 Z2Field::coords(int i, int j, int k) const {
  return Vec3((i - cells[0] / 2) * spacing(0), (j - cells[1] / 2) * spacing(1), (k - cells[2] / 2) * spacing(2));
}

Z2Field z2_field(const Z2Init& init, const Vec3& extents, double step, Z2Law law) {
  if (!(init.r > 0.0 && init.s > 0.0)) throw ValidationError("z2: r and s must be positive");
  if (std::abs(init.r - init.s) < kZ2Gap) throw ValidationError("z2: r and s must differ");
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("z2: step must be positive");
  if ((extents.array() < 0.0).any() || !extents.allFinite()) throw ValidationError("z2: extents must be non-negative");
  const double vals[6] = {init.t1, init.t2, init.t3, init.u1, init.r, init.s};
  for (double v : vals)
    if (!std::isfinite(v)) throw ValidationError("z2: non-finite initial value");

  Z2Field f;
  f.init = init;
  f.extents = extents;
  f.step = step;
  f.law = law;
  for (int a = 0; a < 3; ++a) {
    f.cells[a] = 2 * static_cast<int>(std::ceil(extents(a) / (2.0 * step) - 1e-12));
    f.spacing(a) = f.cells[a] > 0 ? extents(a) / f.cells[a] : 0.0;
  }
  const int n0 = f.cells[0] + 1, n1 = f.cells[1] + 1, n2 = f.cells[2] + 1;
  const double sign0 = init.r > init.s ? 1.0 : -1.0;
  std::vector<VecX> ys(static_cast<size_t>(n0) * n1 * n2);
  std::vector<Stepper> aux(ys.size(), Stepper{law, sign0});
  const std::array<int, 3> c{f.cells[0] / 2, f.cells[1] / 2, f.cells[2] / 2};

  // Each node is one step from its predecessor on the canonical path.
  auto grow = [&](int from, int to, int axis, double dir) {
    ys[to] = ys[from];
    aux[to] = aux[from];
    aux[to].step(ys[to], Vec3::Unit(axis), dir * f.spacing(axis), axis);
  };
  const int origin = f.index(c[0], c[1], c[2]);
  ys[origin] = origin_state(init);
  for (int i = c[0] + 1; i < n0; ++i) grow(f.index(i - 1, c[1], c[2]), f.index(i, c[1], c[2]), 0, 1.0);
  for (int i = c[0] - 1; i >= 0; --i) grow(f.index(i + 1, c[1], c[2]), f.index(i, c[1], c[2]), 0, -1.0);
  for (int i = 0; i < n0; ++i) {
    for (int j = c[1] + 1; j < n1; ++j) grow(f.index(i, j - 1, c[2]), f.index(i, j, c[2]), 1, 1.0);
    for (int j = c[1] - 1; j >= 0; --j) grow(f.index(i, j + 1, c[2]), f.index(i, j, c[2]), 1, -1.0);
    for (int j = 0; j < n1; ++j) {
      for (int k = c[2] + 1; k < n2; ++k) grow(f.index(i, j, k - 1), f.index(i, j, k), 2, 1.0);
      for (int k = c[2] - 1; k >= 0; --k) grow(f.index(i, j, k + 1), f.index(i, j, k), 2, -1.0);
    }
  }
  f.nodes.reserve(ys.size());
  for (size_t n = 0; n < ys.size(); ++n) {
    f.nodes.push_back(unpack(ys[n]));
    f.frame_drift = std::max(f.frame_drift, aux[n].max_drift);
  }
  return f;
}

StructureStateZ2 z2_state_at(const Z2Field& f, const Vec3& u) { return unpack(trace_path(f, u, false).first); }

double path_independence(const Z2Field& f, int coarse_cells) {
  if (coarse_cells < 1) throw ValidationError("path_independence: coarse_cells must be positive");
  std::vector<int> axes;
  for (int a = 0; a < 3; ++a)
    if (f.cells[a] > 0) axes.push_back(a);
  if (axes.size() < 2) return 0.0;

  std::array<std::vector<int>, 3> marks;
  for (int a = 0; a < 3; ++a) {
    const int m = std::min(coarse_cells, std::max(f.cells[a], 1));
    for (int q = 0; q <= m; ++q) marks[a].push_back(static_cast<int>(std::lround(double(q) * f.cells[a] / m)));
    if (f.cells[a] == 0) marks[a] = {0};
  }
  const double sign0 = f.init.r > f.init.s ? 1.0 : -1.0;
  auto flow = [&](VecX y, int axis, double t) {
    Stepper st{f.law, sign0};
    st.flow(y, Vec3::Unit(axis), t, std::max(1, static_cast<int>(std::ceil(std::abs(t) / f.step - 1e-12))), axis);
    return y;
  };

  double worst = 0.0;
  for (size_t pa = 0; pa < axes.size(); ++pa)
    for (size_t pb = pa + 1; pb < axes.size(); ++pb) {
      const int p = axes[pa], q = axes[pb];
      std::array<size_t, 3> lim{marks[0].size(), marks[1].size(), marks[2].size()};
      lim[p] -= 1;
      lim[q] -= 1;
      for (size_t i = 0; i < lim[0]; ++i)
        for (size_t j = 0; j < lim[1]; ++j)
          for (size_t k = 0; k < lim[2]; ++k) {
            const std::array<size_t, 3> id{i, j, k};
            const VecX y0 = pack(f.at(marks[0][i], marks[1][j], marks[2][k]));
            const double hp = (marks[p][id[p] + 1] - marks[p][id[p]]) * f.spacing(p);
            const double hq = (marks[q][id[q] + 1] - marks[q][id[q]]) * f.spacing(q);
            const VecX y1 = flow(flow(y0, p, hp), q, hq);
            VecX y2 = flow(flow(y0, q, hq), p, hp);
            // Gauss-Newton on sigma so that exp(sigma . E) moves y2 onto the point of y1.
            Vec3 sigma = Vec3::Zero();
            VecX yc = y2;
            for (int it = 0; it < 8; ++it) {
              const CVec3 dx = to_complex(y1.segment<6>(0) - yc.segment<6>(0));
              Vec3 d;
              for (int a = 0; a < 3; ++a) d(a) = g0(frame_vec(yc, a), dx);
              sigma += d;
              Stepper st{f.law, sign0};
              yc = y2;
              const int n = std::max(1, static_cast<int>(std::ceil(sigma.norm() / f.step)));
              st.flow(yc, sigma, 1.0, n);
              if (d.norm() < 1e-15) break;
            }
            worst = std::max(worst, (y1 - yc).norm() / (hp * hq));
          }
    }
  return worst;
}

ImmersionPatch z2_patch(const Z2Field& f) {
  ImmersionPatch p;
  p.name = "z2_reconstruction";
  p.params = {{"r", f.init.r}, {"s", f.init.s}, {"t1", f.init.t1}, {"t2", f.init.t2},
              {"t3", f.init.t3}, {"u1", f.init.u1}, {"step", f.step}};
  for (int a = 0; a < 3; ++a) p.domain[a] = {-f.extents(a) / 2, f.extents(a) / 2};
  p.eval = [f](const Vec3& u) { return to_complex(trace_path(f, u, false).first.segment<6>(0)); };
  p.jac = [f](const Vec3& u) { return trace_path(f, u, true).second; };
  return p;
}

Z2Integration z2_integrate(const Z2Init& init, const Vec3& extents, double step, const Z2Options& opts) {
  Z2Integration out;
  out.field = z2_field(init, extents, step, opts.law);
  out.report.frame_drift = out.field.frame_drift;
  out.report.loop_residual = path_independence(out.field);
  if (!(out.report.loop_residual <= opts.loop_tol))
    throw NumericalError("z2: loop residual " + std::to_string(out.report.loop_residual) + " above threshold");
  out.patch = z2_patch(out.field);
  std::array<int, 3> grid = opts.census_grid;
  for (int a = 0; a < 3; ++a)
    if (out.field.cells[a] == 0) grid[a] = 1;
  for (const auto& rep : sweep(out.patch, grid)) {
    if (rep.error) continue;
    out.report.slag_res = std::max({out.report.slag_res, rep.lag_res, rep.im_res});
    const double n = rep.cubic.norm();
    if (n > 0.0) out.report.trace_res = std::max(out.report.trace_res, rep.trace_res / n);
    ++out.report.type_census[rep.nf.type];
  }
  return out;
}

FoliationCheck z2_foliation_check(const Z2Field& f) {
  if (f.cells[1] == 0 || f.cells[2] == 0) throw ValidationError("z2_foliation_check: leaves need extents along axes 2 and 3");
  using Mat63 = Eigen::Matrix<double, 6, 3>;
  auto plane = [](const StructureStateZ2& st) {
    Mat63 m;
    m.col(0) = to_real(st.e[1]);
    m.col(1) = to_real(st.e[2]);
    m.col(2) = to_real(apply_J(st.e[0]) - st.t1 * st.e[0]);
    Eigen::HouseholderQR<Mat63> qr(m);
    return Mat63(qr.householderQ() * Mat63::Identity());
  };
  FoliationCheck out;
  const int c1 = f.cells[1] / 2, c2 = f.cells[2] / 2;
  for (int i = 0; i <= f.cells[0]; ++i) {
    const StructureStateZ2& base = f.at(i, c1, c2);
    const Mat63 q0 = plane(base);
    const Eigen::Matrix<double, 6, 6> proj = Eigen::Matrix<double, 6, 6>::Identity() - q0 * q0.transpose();
    const Vec6 x0 = to_real(base.x);
    std::vector<Vec6> pts;
    for (int j = 0; j <= f.cells[1]; ++j)
      for (int k = 0; k <= f.cells[2]; ++k) {
        const StructureStateZ2& st = f.at(i, j, k);
        const Eigen::Matrix3d sv = plane(st).transpose() * proj.transpose() * proj * plane(st);
        const double sin_max = std::sqrt(std::max(0.0, sv.eigenvalues().real().maxCoeff()));
        out.plane_variation = std::max(out.plane_variation, std::asin(std::min(1.0, sin_max)));
        pts.push_back(to_real(st.x) - x0);
      }
    double diam = 0.0;
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = a + 1; b < pts.size(); ++b) diam = std::max(diam, (pts[a] - pts[b]).norm());
    if (diam <= 0.0) continue;
    Eigen::MatrixXd design(pts.size(), 10);
    std::vector<Vec3> ys;
    for (size_t n = 0; n < pts.size(); ++n) {
      out.quadric_residual = std::max(out.quadric_residual, (proj * pts[n]).norm() / diam);
      const Vec3 y = q0.transpose() * pts[n] / diam;
      ys.push_back(y);
      design.row(n) << 1, y(0), y(1), y(2), y(0) * y(0), y(1) * y(1), y(2) * y(2), y(0) * y(1), y(0) * y(2),
          y(1) * y(2);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinV);
    const Eigen::VectorXd c = svd.matrixV().col(9);
    for (const Vec3& y : ys) {
      const double val = design.row(&y - ys.data()).dot(c);
      const Vec3 grad(c(1) + 2 * c(4) * y(0) + c(7) * y(1) + c(8) * y(2),
                      c(2) + 2 * c(5) * y(1) + c(7) * y(0) + c(9) * y(2),
                      c(3) + 2 * c(6) * y(2) + c(8) * y(0) + c(9) * y(1));
      const double g = grad.norm();
      out.quadric_residual = std::max(out.quadric_residual, g > 0.0 ? std::abs(val) / g : std::abs(val));
    }
  }
  return out;
}

}  // namespace slag
