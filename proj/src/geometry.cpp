#include "slag/geometry.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace slag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Mat63 = Eigen::Matrix<double, 6, 3>;

Mat63 real_columns(const PatchJacobian& j) {
  Mat63 m;
  for (int a = 0; a < 3; ++a) m.col(a) = to_real(CVec3(j.col(a)));
  return m;
}

void require_immersive(const PatchJacobian& j) {
  const Eigen::JacobiSVD<Mat63> svd(real_columns(j));
  const auto& sv = svd.singularValues();
  if (!sv.allFinite() || !(sv(2) >= 1e-8 * sv(0)) || sv(0) == 0.0)
    throw ValidationError("degenerate Jacobian: patch is not immersive here");
}

CVec3 hessian_apply(const PatchHessian& h, const Vec3& v, const Vec3& w) {
  CVec3 out = CVec3::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out += v(a) * w(b) * h[a][b];
  return out;
}

Mat3 metric(const PatchJacobian& j) {
  Mat3 g;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) g(a, b) = g0(j.col(a), j.col(b));
  return g;
}

using Christoffel = std::array<Mat3, 3>;  // gamma[a](b, c) = Gamma^a_bc

Christoffel christoffel(const ImmersionPatch& p, const Vec3& u) {
  const PatchJacobian j = patch_jacobian(p, u);
  const PatchHessian h = patch_hessian(p, u);
  const Mat3 g = metric(j);
  const Mat3 ginv = g.inverse();
  // dg[c](a, b) = d_c g_ab
  std::array<Mat3, 3> dg;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        dg[c](a, b) = g0(h[c][a], j.col(b)) + g0(j.col(a), h[c][b]);
  Christoffel gam;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d)
          s += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        gam[a](b, c) = 0.5 * s;
      }
  return gam;
}

inline int idx4(int i, int j, int k, int l) { return ((i * 3 + j) * 3 + k) * 3 + l; }

double codazzi_once(const ImmersionPatch& p, const Vec3& u, double step) {
  const CubicAtPoint base = fundamental_cubic_full(p, u);
  const AdaptedFrame& f0 = base.frame;
  // d[a] = derivative of the aligned cubic along parameter axis a
  std::array<std::array<double, 10>, 3> d{};
  for (int a = 0; a < 3; ++a) {
    std::array<HarmonicCubic, 2> side;
    for (int sgn = 0; sgn < 2; ++sgn) {
      const Vec3 un = u + (sgn == 0 ? step : -step) * Vec3::Unit(a);
      const CubicAtPoint nb = fundamental_cubic_full(p, un);
      Mat3 m;
      for (int i = 0; i < 3; ++i)
        for (int jj = 0; jj < 3; ++jj) m(i, jj) = g0(nb.frame.e[i], f0.e[jj]);
      side[sgn] = rotate(nb.cubic, Rotation3(nearest_rotation(m)));
    }
    for (int n = 0; n < 10; ++n)
      d[a][n] = (side[0].coeffs()[n] - side[1].coeffs()[n]) / (2.0 * step);
  }
  // t[l][ijk]: derivative along the frame vector e_l
  std::array<double, 81> t{};
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double v = 0.0;
          const int n = cubic_index(i, j, k);
          for (int a = 0; a < 3; ++a) v += f0.preimage(a, l) * d[a][n];
          t[idx4(l, i, j, k)] = v;
        }
  // t is symmetric in its last three slots; compare with the full symmetrization
  double acc = 0.0;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double sym = (t[idx4(l, i, j, k)] + t[idx4(i, l, j, k)] + t[idx4(j, i, l, k)] +
                              t[idx4(k, i, j, l)]) /
                             4.0;
          const double diff = t[idx4(l, i, j, k)] - sym;
          acc += diff * diff;
        }
  return std::sqrt(acc);
}

double gauss_once(const ImmersionPatch& p, const Vec3& u, double step, GaussSign sign) {
  const CubicAtPoint base = fundamental_cubic_full(p, u);
  const Mat3 g = metric(patch_jacobian(p, u));
  const Christoffel gam = christoffel(p, u);
  // dgam[c][a](b, e) = d_c Gamma^a_be
  std::array<Christoffel, 3> dgam;
  for (int c = 0; c < 3; ++c) {
    const Christoffel plus = christoffel(p, u + step * Vec3::Unit(c));
    const Christoffel minus = christoffel(p, u - step * Vec3::Unit(c));
    for (int a = 0; a < 3; ++a) dgam[c][a] = (plus[a] - minus[a]) / (2.0 * step);
  }
  // R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb
  std::array<double, 81> up{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double v = dgam[c][a](d, b) - dgam[d][a](c, b);
          for (int e = 0; e < 3; ++e) v += gam[a](c, e) * gam[e](d, b) - gam[a](d, e) * gam[e](c, b);
          up[idx4(a, b, c, d)] = v;
        }
  std::array<double, 81> low{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double v = 0.0;
          for (int e = 0; e < 3; ++e) v += g(a, e) * up[idx4(e, b, c, d)];
          low[idx4(a, b, c, d)] = v;
        }
  const Mat3& A = base.frame.preimage;
  const HarmonicCubic& h = base.cubic;
  const double sg = sign == GaussSign::Standard ? 1.0 : -1.0;
  // push to the frame in four single-index contractions
  std::array<double, 81> cur = low, nxt{};
  for (int slot = 0; slot < 4; ++slot) {
    for (int i0 = 0; i0 < 3; ++i0)
      for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
          for (int i3 = 0; i3 < 3; ++i3) {
            std::array<int, 4> ix{i0, i1, i2, i3};
            double v = 0.0;
            for (int a = 0; a < 3; ++a) {
              std::array<int, 4> src = ix;
              src[slot] = a;
              v += A(a, ix[slot]) * cur[idx4(src[0], src[1], src[2], src[3])];
            }
            nxt[idx4(i0, i1, i2, i3)] = v;
          }
    cur = nxt;
  }
  double acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double q = 0.0;
          for (int m = 0; m < 3; ++m) q += h.at(m, i, k) * h.at(m, j, l) - h.at(m, i, l) * h.at(m, j, k);
          const double diff = cur[idx4(i, j, k, l)] - sg * q;
          acc += diff * diff;
        }
  return std::sqrt(acc);
}

}  // namespace

PatchJacobian patch_jacobian(const ImmersionPatch& p, const Vec3& u) {
  if (p.jac) return p.jac(u);
  if (!p.eval) throw ValidationError("patch has no evaluator");
  const double h = std::cbrt(kEps) * (1.0 + u.norm());
  PatchJacobian j;
  for (int a = 0; a < 3; ++a) {
    const Vec3 d = h * Vec3::Unit(a);
    j.col(a) = (p.eval(u + d) - p.eval(u - d)) / (2.0 * h);
  }
  return j;
}

PatchHessian patch_hessian(const ImmersionPatch& p, const Vec3& u) {
  if (p.hess) return p.hess(u);
  PatchHessian out;
  if (p.jac) {
    const double h = std::cbrt(kEps) * (1.0 + u.norm());
    for (int a = 0; a < 3; ++a) {
      const Vec3 d = h * Vec3::Unit(a);
      const PatchJacobian diff = (p.jac(u + d) - p.jac(u - d)) / (2.0 * h);
      for (int b = 0; b < 3; ++b) out[a][b] = diff.col(b);
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const CVec3 avg = 0.5 * (out[a][b] + out[b][a]);
        out[a][b] = avg;
        out[b][a] = avg;
      }
    return out;
  }
  const double h = std::pow(kEps, 0.25) * (1.0 + u.norm());
  const CVec3 f0 = p.eval(u);
  for (int a = 0; a < 3; ++a) {
    const Vec3 da = h * Vec3::Unit(a);
    out[a][a] = (p.eval(u + da) - 2.0 * f0 + p.eval(u - da)) / (h * h);
    for (int b = a + 1; b < 3; ++b) {
      const Vec3 db = h * Vec3::Unit(b);
      const CVec3 v = (p.eval(u + da + db) - p.eval(u + da - db) - p.eval(u - da + db) +
                       p.eval(u - da - db)) /
                      (4.0 * h * h);
      out[a][b] = v;
      out[b][a] = v;
    }
  }
  return out;
}

double jacobian_consistency(const ImmersionPatch& p, int count, unsigned seed) {
  if (!p.jac) return 0.0;
  ImmersionPatch fd = p;
  fd.jac = nullptr;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  double worst = 0.0;
  for (int n = 0; n < count; ++n) {
    Vec3 u;
    for (int a = 0; a < 3; ++a) u(a) = p.domain[a].lo + unif(rng) * (p.domain[a].hi - p.domain[a].lo);
    const PatchJacobian ja = p.jac(u);
    const PatchJacobian jf = patch_jacobian(fd, u);
    worst = std::max(worst, (ja - jf).norm() / std::max(ja.norm(), 1e-300));
  }
  return worst;
}

ImmersionPatch transform_patch(const ImmersionPatch& p, const CMat3& unitary, const CVec3& shift) {
  ImmersionPatch out = p;
  const auto eval = p.eval;
  out.eval = [eval, unitary, shift](const Vec3& u) -> CVec3 { return unitary * eval(u) + shift; };
  if (p.jac) {
    const auto jac = p.jac;
    out.jac = [jac, unitary](const Vec3& u) -> PatchJacobian { return unitary * jac(u); };
  }
  if (p.hess) {
    const auto hess = p.hess;
    out.hess = [hess, unitary](const Vec3& u) {
      PatchHessian h = hess(u);
      for (auto& row : h)
        for (auto& v : row) v = unitary * v;
      return h;
    };
  }
  return out;
}

double lagrangian_residual(const ImmersionPatch& p, const Vec3& u) {
  const PatchJacobian j = patch_jacobian(p, u);
  require_immersive(j);
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      worst = std::max(worst, std::abs(omega0(j.col(a), j.col(b))) / (j.col(a).norm() * j.col(b).norm()));
  return worst;
}

SpecialResidual special_residual(const ImmersionPatch& p, const Vec3& u) {
  const PatchJacobian j = patch_jacobian(p, u);
  require_immersive(j);
  const Complex ups = upsilon0(j.col(0), j.col(1), j.col(2));
  const double vol = std::sqrt(std::max(metric(j).determinant(), 0.0));
  return {std::abs(ups.imag()) / vol, ups.real() >= 0.0 ? 1 : -1};
}

AdaptedFrame adapted_frame_ordered(const ImmersionPatch& p, const Vec3& u,
                                   const std::array<int, 3>& order, double frame_tol) {
  const double lag = lagrangian_residual(p, u);
  if (lag > frame_tol) {
    std::ostringstream os;
    os << "point is not Lagrangian within tolerance: residual " << lag;
    throw ValidationError(os.str());
  }
  const PatchJacobian j = patch_jacobian(p, u);
  // Gram-Schmidt in the given column order; track coefficients so e = T A
  AdaptedFrame f;
  f.position = p.eval(u);
  Mat3 a = Mat3::Zero();
  for (int n = 0; n < 3; ++n) {
    CVec3 v = j.col(order[n]);
    Vec3 coef = Vec3::Zero();
    coef(order[n]) = 1.0;
    for (int m = 0; m < n; ++m) {
      const double proj = g0(f.e[m], v);
      v -= proj * f.e[m];
      coef -= proj * a.col(m);
    }
    const double len = v.norm();
    f.e[n] = v / len;
    a.col(n) = coef / len;
  }
  if (upsilon0(f.e[0], f.e[1], f.e[2]).real() < 0.0) {
    std::swap(f.e[1], f.e[2]);
    a.col(1).swap(a.col(2));
  }
  f.preimage = a;
  return f;
}

AdaptedFrame adapted_frame(const ImmersionPatch& p, const Vec3& u, double frame_tol) {
  return adapted_frame_ordered(p, u, {0, 1, 2}, frame_tol);
}

CubicAtPoint cubic_in_frame(const ImmersionPatch& p, const Vec3& u, const AdaptedFrame& frame) {
  const PatchHessian h = patch_hessian(p, u);
  double raw[3][3][3];
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const CVec3 d2 = hessian_apply(h, frame.preimage.col(j), frame.preimage.col(k));
      for (int i = 0; i < 3; ++i) raw[i][j][k] = g0(d2, apply_J(frame.e[i]));
    }
  SymmetricCubic sym;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k)
        sym.coeffs[cubic_index(i, j, k)] = (raw[i][j][k] + raw[i][k][j] + raw[j][i][k] +
                                            raw[j][k][i] + raw[k][i][j] + raw[k][j][i]) /
                                           6.0;
  CubicAtPoint out{frame, project_traceless(sym), sym.trace().cwiseAbs().maxCoeff()};
  if (out.trace_res > kTraceRejectRel * sym.norm() + kTraceFloor) {
    std::ostringstream os;
    os << "fundamental cubic is not traceless: trace residual " << out.trace_res << " for norm "
       << sym.norm();
    throw NumericalError(os.str());
  }
  return out;
}

CubicAtPoint fundamental_cubic_full(const ImmersionPatch& p, const Vec3& u) {
  return cubic_in_frame(p, u, adapted_frame(p, u));
}

HarmonicCubic fundamental_cubic(const ImmersionPatch& p, const Vec3& u) {
  return fundamental_cubic_full(p, u).cubic;
}

double grid_node(const Interval& iv, int i, int n) {
  return iv.lo + (i + 0.5) * (iv.hi - iv.lo) / n;
}

PointReport point_report(const ImmersionPatch& p, const Vec3& u, double tol) {
  PointReport rep;
  rep.u = u;
  try {
    rep.position = p.eval(u);
    rep.lag_res = lagrangian_residual(p, u);
    rep.im_res = special_residual(p, u).im_res;
    const CubicAtPoint c = fundamental_cubic_full(p, u);
    rep.cubic = c.cubic;
    rep.trace_res = c.trace_res;
    rep.nf = classify(c.cubic, tol);
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

std::vector<PointReport> sweep(const ImmersionPatch& p, const std::array<int, 3>& grid, double tol) {
  for (int n : grid)
    if (n < 1) throw ValidationError("grid counts must be at least 1");
  for (const auto& iv : p.domain)
    if (!(iv.hi > iv.lo)) throw ValidationError("patch domain is empty");
  std::vector<PointReport> out;
  out.reserve(static_cast<size_t>(grid[0]) * grid[1] * grid[2]);
  for (int i = 0; i < grid[0]; ++i)
    for (int j = 0; j < grid[1]; ++j)
      for (int k = 0; k < grid[2]; ++k) {
        const Vec3 u(grid_node(p.domain[0], i, grid[0]), grid_node(p.domain[1], j, grid[1]),
                     grid_node(p.domain[2], k, grid[2]));
        out.push_back(point_report(p, u, tol));
      }
  return out;
}

GaussCodazzi codazzi_gauss_residual_once(const ImmersionPatch& p, const Vec3& u, double step,
                                         GaussSign sign) {
  if (!(step > 0.0)) throw ValidationError("step must be positive");
  return {codazzi_once(p, u, step), gauss_once(p, u, step, sign)};
}

GaussCodazzi codazzi_gauss_residual(const ImmersionPatch& p, const Vec3& u, double step) {
  const GaussCodazzi full = codazzi_gauss_residual_once(p, u, step);
  const GaussCodazzi half = codazzi_gauss_residual_once(p, u, 0.5 * step);
  constexpr double kFloor = 1e-9;
  const auto grew = [](double a, double b) { return b > kFloor && b > 1.5 * a; };
  if (grew(full.codazzi, half.codazzi) || grew(full.gauss, half.gauss)) {
    std::ostringstream os;
    os << "finite-difference step too small: residuals (" << full.codazzi << ", " << full.gauss
       << ") grew to (" << half.codazzi << ", " << half.gauss << ") under halving";
    throw NumericalError(os.str());
  }
  return full;
}

}  // namespace slag
