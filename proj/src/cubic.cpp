#include "slag/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slag {

namespace {

using Mat10 = Eigen::Matrix<double, 10, 10>;
using Vec10 = Eigen::Matrix<double, 10, 1>;
using Full = std::array<double, 27>;

constexpr double kPi = std::numbers::pi;

inline int flat(int i, int j, int k) { return 9 * i + 3 * j + k; }

constexpr std::array<std::array<int, 3>, 10> kTriples{{{0, 0, 0},
                                                        {0, 0, 1},
                                                        {0, 0, 2},
                                                        {0, 1, 1},
                                                        {0, 1, 2},
                                                        {0, 2, 2},
                                                        {1, 1, 1},
                                                        {1, 1, 2},
                                                        {1, 2, 2},
                                                        {2, 2, 2}}};

Full expand(const std::array<double, 10>& c) {
  Full f{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) f[flat(i, j, k)] = c[cubic_index(i, j, k)];
  return f;
}

std::array<double, 10> compress(const Full& f) {
  std::array<double, 10> c{};
  for (int n = 0; n < 10; ++n) {
    const auto& t = kTriples[n];
    c[n] = f[flat(t[0], t[1], t[2])];
  }
  return c;
}

double weighted_norm(const std::array<double, 10>& c) {
  double s = 0.0;
  for (int n = 0; n < 10; ++n) s += kCubicMultiplicity[n] * c[n] * c[n];
  return std::sqrt(s);
}

// Euclidean coordinates: entries scaled by sqrt(multiplicity), so the tensor
// inner product becomes the standard dot product.
Vec10 to_euclid(const std::array<double, 10>& c) {
  Vec10 e;
  for (int n = 0; n < 10; ++n) e(n) = std::sqrt(kCubicMultiplicity[n]) * c[n];
  return e;
}

std::array<double, 10> from_euclid(const Vec10& e) {
  std::array<double, 10> c{};
  for (int n = 0; n < 10; ++n) c[n] = e(n) / std::sqrt(kCubicMultiplicity[n]);
  return c;
}

Mat3 skew(const Vec3& w) {
  Mat3 m;
  m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return m;
}

// Infinitesimal rotation generators acting on cubics in Euclidean coordinates.
const std::array<Mat10, 3>& generators() {
  static const std::array<Mat10, 3> gens = [] {
    std::array<Mat10, 3> out;
    for (int ax = 0; ax < 3; ++ax) {
      const Mat3 e = skew(Vec3::Unit(ax));
      for (int col = 0; col < 10; ++col) {
        Vec10 unit = Vec10::Zero();
        unit(col) = 1.0;
        const Full h = expand(from_euclid(unit));
        Full lh{};
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
              double v = 0.0;
              for (int m = 0; m < 3; ++m)
                v += h[flat(m, b, c)] * e(m, a) + h[flat(a, m, c)] * e(m, b) +
                     h[flat(a, b, m)] * e(m, c);
              lh[flat(a, b, c)] = v;
            }
        out[ax].col(col) = to_euclid(compress(lh));
      }
    }
    return out;
  }();
  return gens;
}

Mat10 generator(const Vec3& w) {
  const auto& g = generators();
  return w.x() * g[0] + w.y() * g[1] + w.z() * g[2];
}

enum class AxisKind { Order2, Order3, Circle };

double kind_shift(AxisKind k) { return k == AxisKind::Order2 ? 4.0 : 9.0; }

// (L^2 + k^2) L e for order-k axes, L e for a circle axis.
Vec10 axis_residual_vector(const Vec10& e, const Vec3& w, AxisKind kind) {
  const Mat10 L = generator(w);
  const Vec10 le = L * e;
  if (kind == AxisKind::Circle) return le;
  return L * (L * le) + kind_shift(kind) * le;
}

Eigen::Matrix<double, 10, 3> axis_residual_jacobian(const Vec10& e, const Vec3& w, AxisKind kind) {
  const Mat10 L = generator(w);
  const auto& g = generators();
  Eigen::Matrix<double, 10, 3> jac;
  const Vec10 le = L * e;
  const Vec10 lle = L * le;
  for (int i = 0; i < 3; ++i) {
    const Vec10 gi_e = g[i] * e;
    if (kind == AxisKind::Circle) {
      jac.col(i) = gi_e;
    } else {
      jac.col(i) = g[i] * lle + L * (g[i] * le) + L * (L * gi_e) + kind_shift(kind) * gi_e;
    }
  }
  return jac;
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& w) {
  Vec3 a = std::abs(w.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 t1 = (a - a.dot(w) * w).normalized();
  Vec3 t2 = w.cross(t1);
  return {t1, t2};
}

struct Refined {
  Vec3 w;
  bool converged = false;
};

// Levenberg-Marquardt on the sphere for a residual r(w) with Jacobian dr/dw.
template <class Res, class Jac>
Refined refine_on_sphere(const Vec3& seed, Res&& res, Jac&& jac, int max_iter = 200) {
  Vec3 w = seed.normalized();
  auto r = res(w);
  double cost = r.squaredNorm();
  double lambda = -1.0;
  for (int it = 0; it < max_iter; ++it) {
    const auto [t1, t2] = tangent_basis(w);
    Eigen::Matrix<double, 3, 2> T;
    T << t1, t2;
    const Eigen::MatrixXd jt = jac(w) * T;
    const Eigen::Matrix2d jtj = jt.transpose() * jt;
    const Eigen::Vector2d grad = jt.transpose() * r;
    if (lambda < 0.0) lambda = 1e-6 * std::max(jtj.trace(), 1e-300);
    if (cost == 0.0) return {w, true};
    bool accepted = false;
    for (int tries = 0; tries < 40; ++tries) {
      const Eigen::Vector2d step =
          (jtj + lambda * Eigen::Matrix2d::Identity()).ldlt().solve(-grad);
      const Vec3 cand = (w + T * step).normalized();
      const auto rc = res(cand);
      const double cc = rc.squaredNorm();
      if (cc <= cost) {
        const double moved = (cand - w).norm();
        w = cand;
        r = rc;
        const double old = cost;
        cost = cc;
        lambda = std::max(lambda / 3.0, 1e-300);
        accepted = true;
        if (moved < 1e-15 || old - cc <= 1e-30 * old) return {w, true};
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) return {w, true};  // no descent possible: stationary to machine precision
  }
  return {w, false};
}

double angle_projective(const Vec3& a, const Vec3& b) {
  return std::acos(std::min(1.0, std::abs(a.dot(b))));
}

Vec3 canonical_sign(const Vec3& w) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(w(i)) > 1e-8) return w(i) < 0 ? Vec3(-w) : w;
  }
  return w;
}

bool lex_greater(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(a(i) - b(i)) > 1e-8) return a(i) > b(i);
  }
  return false;
}

// Indices of the best `count` lattice points under `score`, kept at least
// `sep` radians apart projectively.
std::vector<Vec3> pick_seeds(const std::vector<Vec3>& pts, const std::vector<double>& score,
                             int count, double sep) {
  std::vector<int> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return score[a] < score[b]; });
  std::vector<Vec3> seeds;
  for (int idx : order) {
    if (static_cast<int>(seeds.size()) >= count) break;
    bool far = true;
    for (const auto& s : seeds) {
      if (angle_projective(s, pts[idx]) < sep) {
        far = false;
        break;
      }
    }
    if (far) seeds.push_back(pts[idx]);
  }
  return seeds;
}

void dedupe_hits(std::vector<AxisHit>& hits) {
  std::vector<AxisHit> out;
  std::sort(hits.begin(), hits.end(),
            [](const AxisHit& a, const AxisHit& b) { return a.residual < b.residual; });
  for (auto& h : hits) {
    h.axis = canonical_sign(h.axis.normalized());
    bool dup = false;
    for (const auto& o : out) {
      if (angle_projective(o.axis, h.axis) < 1e-4) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(h);
  }
  std::sort(out.begin(), out.end(),
            [](const AxisHit& a, const AxisHit& b) { return lex_greater(a.axis, b.axis); });
  hits = std::move(out);
}

const std::vector<Vec3>& lattice2000() {
  static const std::vector<Vec3> pts = fibonacci_sphere(2000);
  return pts;
}

double kind_residual(const AxisDecomposition& d, AxisKind kind) {
  const double c1 = std::norm(d.c1), c2 = std::norm(d.c2), c3 = std::norm(d.c3);
  switch (kind) {
    case AxisKind::Order2:
      return std::sqrt(c1 + c3);
    case AxisKind::Order3:
      return std::sqrt(c1 + c2);
    case AxisKind::Circle:
      return std::sqrt(c1 + c2 + c3);
  }
  return 0.0;
}

Vec3 refine_axis(const Vec10& e, const Vec3& seed, AxisKind kind, bool* converged = nullptr) {
  const auto res = [&](const Vec3& w) { return axis_residual_vector(e, w, kind); };
  const auto jac = [&](const Vec3& w) { return axis_residual_jacobian(e, w, kind); };
  const Refined out = refine_on_sphere(seed, res, jac);
  if (converged) *converged = out.converged;
  return out.w;
}

std::vector<AxisHit> search_axes(const HarmonicCubic& h, AxisKind kind, double tol, int& failed) {
  const Vec10 e = to_euclid(h.coeffs());
  const auto& pts = lattice2000();
  std::vector<double> score(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    score[i] = axis_residual_vector(e, pts[i], kind).squaredNorm();
  const auto seeds = pick_seeds(pts, score, 40, 0.2);
  const double hn = h.norm();
  std::vector<AxisHit> hits;
  for (const auto& s : seeds) {
    bool ok = false;
    const Vec3 w = refine_axis(e, s, kind, &ok);
    if (!ok) ++failed;
    const double rel = kind_residual(axis_decompose(h, w), kind) / hn;
    if (rel <= tol) hits.push_back({w, rel});
  }
  dedupe_hits(hits);
  return hits;
}

HarmonicCubic unchecked(const std::array<double, 10>& c);

// Orthonormal V_k bases about the z axis, as tensors.
struct ZBases {
  HarmonicCubic v0, v1re, v1im, v2re, v2im, v3re, v3im;
};

HarmonicCubic normalized(const HarmonicCubic& h) { return (1.0 / h.norm()) * h; }

const ZBases& z_bases() {
  static const ZBases b = [] {
    // monomial order: x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3
    ZBases out;
    out.v0 = normalized(HarmonicCubic::from_monomials({0, 0, -3, 0, 0, 0, 0, -3, 0, 2}));
    out.v1re = normalized(HarmonicCubic::from_monomials({-1, 0, 0, -1, 0, 4, 0, 0, 0, 0}));
    out.v1im = normalized(HarmonicCubic::from_monomials({0, -1, 0, 0, 0, 0, -1, 0, 4, 0}));
    out.v2re = normalized(HarmonicCubic::from_monomials({0, 0, 1, 0, 0, 0, 0, -1, 0, 0}));
    out.v2im = normalized(HarmonicCubic::from_monomials({0, 0, 0, 0, 1, 0, 0, 0, 0, 0}));
    out.v3re = normalized(HarmonicCubic::from_monomials({1, 0, 0, -3, 0, 0, 0, 0, 0, 0}));
    out.v3im = normalized(HarmonicCubic::from_monomials({0, 3, 0, 0, 0, 0, -1, 0, 0, 0}));
    return out;
  }();
  return b;
}

AxisDecomposition decompose_z(const HarmonicCubic& g) {
  const auto& b = z_bases();
  AxisDecomposition d;
  d.c0 = g.dot(b.v0);
  d.c1 = Complex(g.dot(b.v1re), -g.dot(b.v1im));
  d.c2 = Complex(g.dot(b.v2re), -g.dot(b.v2im));
  d.c3 = Complex(g.dot(b.v3re), -g.dot(b.v3im));
  return d;
}

Mat3 rodrigues(const Vec3& from, const Vec3& to) {
  const Vec3 axis = from.cross(to);
  const double s = axis.norm();
  const double c = from.dot(to);
  if (s < 1e-300) return Mat3::Identity();
  const Mat3 k = skew(axis / s);
  return Mat3::Identity() + s * k + (1.0 - c) * k * k;
}

Rotation3 rot_x_pi() { return Rotation3::about_axis(Vec3::UnitX(), kPi); }
Rotation3 rot_z(double a) { return Rotation3::about_axis(Vec3::UnitZ(), a); }

double zonal_coef(const HarmonicCubic& g) { return g.dot(cubics::zonal()) / 10.0; }
double xyz_coef(const HarmonicCubic& g) { return g.dot(cubics::xyz6()) / 6.0; }
double cubic3_coef(const HarmonicCubic& g) { return g.dot(cubics::cubic3()) / 4.0; }

struct Fit {
  Rotation3 rot;
  double r = 0.0, s = 0.0;
};

Fit fit_order3_axis(const HarmonicCubic& h, const Vec3& w) {
  Rotation3 q = Rotation3::transporting_z_to(w);
  const AxisDecomposition d = decompose_z(rotate(h, q));
  const double beta = -std::arg(d.c3) / 3.0;
  q = q * rot_z(beta);
  HarmonicCubic g = rotate(h, q);
  double r = zonal_coef(g);
  if (r < 0.0) {
    q = q * rot_x_pi();
    g = rotate(h, q);
    r = zonal_coef(g);
  }
  return {q, r, cubic3_coef(g)};
}

Fit fit_order2_axis(const HarmonicCubic& h, const Vec3& w) {
  Rotation3 q = Rotation3::transporting_z_to(w);
  const AxisDecomposition d = decompose_z(rotate(h, q));
  const double beta = (-kPi / 2.0 - std::arg(d.c2)) / 2.0;
  q = q * rot_z(beta);
  HarmonicCubic g = rotate(h, q);
  double r = zonal_coef(g);
  if (r < 0.0) {
    q = q * rot_x_pi();
    g = rotate(h, q);
    r = zonal_coef(g);
  }
  return {q, r, xyz_coef(g)};
}

Fit fit_a4(const HarmonicCubic& h, const std::array<Vec3, 3>& axes) {
  Mat3 m;
  m << axes[0], axes[1], axes[2];
  if (m.determinant() < 0.0) m.col(2) *= -1.0;
  Rotation3 q(nearest_rotation(m));
  if (xyz_coef(rotate(h, q)) < 0.0) q = q * rot_z(kPi / 2.0);
  return {q, 0.0, std::abs(xyz_coef(rotate(h, q)))};
}

}  // namespace

int cubic_index(int i, int j, int k) {
  if (i < 0 || i > 2 || j < 0 || j > 2 || k < 0 || k > 2)
    throw ValidationError("cubic index out of range");
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  static constexpr int table[3][3][3] = {
      {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}},
      {{1, 3, 4}, {3, 6, 7}, {4, 7, 8}},
      {{2, 4, 5}, {4, 7, 8}, {5, 8, 9}}};
  return table[i][j][k];
}

SymmetricCubic SymmetricCubic::from_monomials(const std::array<double, 10>& m) {
  SymmetricCubic t;
  for (int n = 0; n < 10; ++n) t.coeffs[n] = m[n] / kCubicMultiplicity[n];
  return t;
}

Vec3 SymmetricCubic::trace() const {
  Vec3 v = Vec3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) v(k) += at(i, i, k);
  return v;
}

double SymmetricCubic::norm() const { return weighted_norm(coeffs); }

HarmonicCubic project_traceless(const SymmetricCubic& t) {
  for (double c : t.coeffs)
    if (!std::isfinite(c)) throw ValidationError("non-finite cubic coefficient");
  const Vec3 v = t.trace();
  std::array<double, 10> out = t.coeffs;
  for (int n = 0; n < 10; ++n) {
    const auto& [i, j, k] = kTriples[n];
    const double corr = ((i == j) ? v(k) : 0.0) + ((j == k) ? v(i) : 0.0) + ((k == i) ? v(j) : 0.0);
    out[n] -= corr / 5.0;
  }
  HarmonicCubic h;
  h.coeffs_ = out;
  return h;
}

namespace {
HarmonicCubic unchecked(const std::array<double, 10>& c) {
  SymmetricCubic t;
  t.coeffs = c;
  return project_traceless(t);
}
}  // namespace

HarmonicCubic::HarmonicCubic(const std::array<double, 10>& coeffs) : coeffs_(coeffs) {
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw ValidationError("non-finite cubic coefficient");
  const double tr = trace_residual();
  if (tr > kTraceTol * norm() + 1e-14) {
    std::ostringstream os;
    os << "cubic is not traceless: trace residual " << tr << " for norm " << norm();
    throw ValidationError(os.str());
  }
}

HarmonicCubic HarmonicCubic::from_monomials(const std::array<double, 10>& m) {
  return HarmonicCubic(SymmetricCubic::from_monomials(m).coeffs);
}

double HarmonicCubic::norm() const { return weighted_norm(coeffs_); }

double HarmonicCubic::dot(const HarmonicCubic& other) const {
  double s = 0.0;
  for (int n = 0; n < 10; ++n) s += kCubicMultiplicity[n] * coeffs_[n] * other.coeffs_[n];
  return s;
}

double HarmonicCubic::trace_residual() const {
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v += at(i, i, k);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

HarmonicCubic& HarmonicCubic::operator+=(const HarmonicCubic& o) {
  for (int n = 0; n < 10; ++n) coeffs_[n] += o.coeffs_[n];
  return *this;
}

HarmonicCubic& HarmonicCubic::operator-=(const HarmonicCubic& o) {
  for (int n = 0; n < 10; ++n) coeffs_[n] -= o.coeffs_[n];
  return *this;
}

HarmonicCubic& HarmonicCubic::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

namespace cubics {
HarmonicCubic zonal() { return HarmonicCubic({0, 0, -1, 0, 0, 0, 0, -1, 0, 2}); }
HarmonicCubic xyz6() { return HarmonicCubic({0, 0, 0, 0, 1, 0, 0, 0, 0, 0}); }
HarmonicCubic cubic3() { return HarmonicCubic({1, 0, 0, -1, 0, 0, 0, 0, 0, 0}); }
HarmonicCubic normal_z2(double r, double s) { return r * zonal() + s * xyz6(); }
HarmonicCubic normal_z3(double r, double s) { return r * zonal() + s * cubic3(); }
}  // namespace cubics

Rotation3::Rotation3(const Mat3& m) : m_(m) {
  if (!m.allFinite()) throw ValidationError("rotation has non-finite entries");
  const double orth = (m.transpose() * m - Mat3::Identity()).norm();
  const double det = m.determinant();
  if (orth > kRotationTol || std::abs(det - 1.0) > kRotationTol) {
    std::ostringstream os;
    os << "invalid rotation: orthogonality residual " << orth << ", determinant " << det;
    throw ValidationError(os.str());
  }
}

Rotation3 Rotation3::about_axis(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ValidationError("rotation axis has zero length");
  return Rotation3(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
}

Rotation3 Rotation3::transporting_z_to(const Vec3& w) {
  const double n = w.norm();
  if (!(n > 0.0)) throw ValidationError("axis has zero length");
  const Vec3 u = w / n;
  const Vec3 z = Vec3::UnitZ();
  if (u.z() >= 0.0) return Rotation3(rodrigues(z, u));
  return Rotation3(rodrigues(-z, u)) * rot_x_pi();
}

Rotation3 Rotation3::from_uniforms(double u1, double u2, double u3) {
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double t1 = 2.0 * kPi * u2, t2 = 2.0 * kPi * u3;
  const Eigen::Quaterniond q(b * std::cos(t2), a * std::sin(t1), a * std::cos(t1),
                             b * std::sin(t2));
  return Rotation3(q.normalized().toRotationMatrix());
}

Rotation3 Rotation3::operator*(const Rotation3& o) const {
  Rotation3 out;
  out.m_ = m_ * o.m_;
  return out;
}

Rotation3 Rotation3::inverse() const {
  Rotation3 out;
  out.m_ = m_.transpose();
  return out;
}

Mat3 nearest_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(2, 2) = -1.0;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

std::pair<double, Vec3> evaluate_and_gradient(const HarmonicCubic& h, const Vec3& x) {
  Vec3 grad = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) grad(i) += 3.0 * h.at(i, j, k) * x(j) * x(k);
  return {grad.dot(x) / 3.0, grad};
}

HarmonicCubic rotate(const HarmonicCubic& h, const Rotation3& rot) {
  const Mat3& r = rot.matrix();
  const Full f = expand(h.coeffs());
  // contract one index at a time
  Full a{}, b{}, c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int z = 0; z < 3; ++z) {
        double v = 0.0;
        for (int k = 0; k < 3; ++k) v += f[flat(i, j, k)] * r(k, z);
        a[flat(i, j, z)] = v;
      }
  for (int i = 0; i < 3; ++i)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        double v = 0.0;
        for (int j = 0; j < 3; ++j) v += a[flat(i, j, z)] * r(j, y);
        b[flat(i, y, z)] = v;
      }
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        double v = 0.0;
        for (int i = 0; i < 3; ++i) v += b[flat(i, y, z)] * r(i, x);
        c[flat(x, y, z)] = v;
      }
  return unchecked(compress(c));
}

CubicInvariants invariants(const HarmonicCubic& h) {
  Mat3 m = Mat3::Zero();
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(p, q) += h.at(i, j, p) * h.at(i, j, q);
  return {m.trace(), (m * m).trace()};
}

AxisDecomposition axis_decompose(const HarmonicCubic& h, const Vec3& w) {
  const double n = w.norm();
  if (!(n > 0.0)) throw ValidationError("axis has zero length");
  if (std::abs(n - 1.0) > 1e-9) throw ValidationError("axis is not a unit vector");
  AxisDecomposition d = decompose_z(rotate(h, Rotation3::transporting_z_to(w)));
  d.axis = w / n;
  return d;
}

std::string_view to_string(StabilizerType t) {
  switch (t) {
    case StabilizerType::Full: return "Full";
    case StabilizerType::Circle: return "Circle";
    case StabilizerType::A4: return "A4";
    case StabilizerType::S3: return "S3";
    case StabilizerType::Z3: return "Z3";
    case StabilizerType::Z2: return "Z2";
    case StabilizerType::Trivial: return "Trivial";
  }
  return "Trivial";
}

StabilizerType stabilizer_from_string(std::string_view s) {
  for (auto t : {StabilizerType::Full, StabilizerType::Circle, StabilizerType::A4,
                 StabilizerType::S3, StabilizerType::Z3, StabilizerType::Z2,
                 StabilizerType::Trivial})
    if (to_string(t) == s) return t;
  throw ValidationError("unknown stabilizer type: " + std::string(s));
}

std::vector<Vec3> fibonacci_sphere(int n) {
  if (n <= 0) throw ValidationError("lattice size must be positive");
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

SymmetryAxes find_symmetry_axes(const HarmonicCubic& h, double tol) {
  if (h.norm() <= kZeroNorm) throw ValidationError("symmetry axes of the zero cubic are undefined");
  SymmetryAxes out;
  out.order2 = search_axes(h, AxisKind::Order2, tol, out.failed_basins);
  out.order3 = search_axes(h, AxisKind::Order3, tol, out.failed_basins);
  out.circle = search_axes(h, AxisKind::Circle, tol, out.failed_basins);
  return out;
}

CensusError::CensusError(int o2, int o3, int c)
    : NumericalError("inconsistent symmetry-axis census: order2=" + std::to_string(o2) +
                     " order3=" + std::to_string(o3) + " circle=" + std::to_string(c)),
      order2(o2),
      order3(o3),
      circle(c) {}

HarmonicCubic normal_form(StabilizerType type, double r, double s) {
  switch (type) {
    case StabilizerType::Full: return HarmonicCubic();
    case StabilizerType::Circle: return r * cubics::zonal();
    case StabilizerType::A4: return s * cubics::xyz6();
    case StabilizerType::S3: return s * cubics::cubic3();
    case StabilizerType::Z2: return cubics::normal_z2(r, s);
    case StabilizerType::Z3: return cubics::normal_z3(r, s);
    case StabilizerType::Trivial: break;
  }
  throw ValidationError("the trivial stabilizer has no normal form");
}

NormalFormResult classify(const HarmonicCubic& h, double tol) {
  NormalFormResult res;
  const double hn = h.norm();
  if (hn <= kZeroNorm) {
    res.type = StabilizerType::Full;
    res.residual = hn;
    return res;
  }
  const SymmetryAxes axes = find_symmetry_axes(h, kAxisTol);
  const Vec10 e = to_euclid(h.coeffs());

  const auto finish = [&](StabilizerType t, const Fit& f) {
    res.type = t;
    res.rotation = f.rot;
    res.r = (t == StabilizerType::A4 || t == StabilizerType::S3) ? 0.0 : f.r;
    res.s = (t == StabilizerType::Circle) ? 0.0 : f.s;
    res.residual = (rotate(h, f.rot) - normal_form(t, res.r, res.s)).norm();
    return res;
  };

  if (!axes.circle.empty()) {
    Rotation3 q = Rotation3::transporting_z_to(axes.circle.front().axis);
    double r = zonal_coef(rotate(h, q));
    if (r < 0.0) {
      q = q * rot_x_pi();
      r = -r;
    }
    return finish(StabilizerType::Circle, {q, r, 0.0});
  }

  const int n2 = static_cast<int>(axes.order2.size());
  const int n3 = static_cast<int>(axes.order3.size());

  if (n2 == 3 && n3 == 4) {
    return finish(StabilizerType::A4,
                  fit_a4(h, {axes.order2[0].axis, axes.order2[1].axis, axes.order2[2].axis}));
  }
  if (n2 == 3 && n3 == 1) {
    return finish(StabilizerType::S3, fit_order3_axis(h, axes.order3.front().axis));
  }
  if (n2 == 0 && n3 == 1) {
    const Fit f = fit_order3_axis(h, axes.order3.front().axis);
    const double dist = std::abs(f.s - f.r * std::numbers::sqrt2);
    if (dist <= tol * hn) {
      const Mat3& q = f.rot.matrix();
      const std::array<Vec3, 3> seeds{q * Vec3(std::sqrt(2.0), 0.0, 1.0) / std::sqrt(3.0),
                                      q * Vec3(1.0, std::sqrt(3.0), -std::sqrt(2.0)) / std::sqrt(6.0),
                                      q * Vec3(1.0, -std::sqrt(3.0), -std::sqrt(2.0)) / std::sqrt(6.0)};
      std::array<Vec3, 3> a4axes;
      for (int i = 0; i < 3; ++i) a4axes[i] = refine_axis(e, seeds[i], AxisKind::Order2);
      finish(StabilizerType::A4, fit_a4(h, a4axes));
    } else {
      finish(StabilizerType::Z3, f);
    }
    res.dist_s_minus_r_sqrt2 = dist;
    return res;
  }
  if (n2 == 1 && n3 == 0) {
    const Fit f = fit_order2_axis(h, axes.order2.front().axis);
    const double dist = std::abs(f.s - f.r);
    if (dist <= tol * hn) {
      const Mat3& q = f.rot.matrix();
      Fit best;
      double best_res = std::numeric_limits<double>::infinity();
      for (const Vec3& seed : {Vec3(q * Vec3(1.0, 1.0, 0.0).normalized()),
                               Vec3(q * Vec3(1.0, -1.0, 0.0).normalized())}) {
        const Vec3 w = refine_axis(e, seed, AxisKind::Order3);
        const double rr = kind_residual(axis_decompose(h, w), AxisKind::Order3);
        if (rr < best_res) {
          best_res = rr;
          best = fit_order3_axis(h, w);
        }
      }
      finish(StabilizerType::S3, best);
    } else {
      finish(StabilizerType::Z2, f);
    }
    res.dist_s_minus_r = dist;
    return res;
  }
  if (n2 == 0 && n3 == 0) {
    res.type = StabilizerType::Trivial;
    res.residual = 0.0;
    return res;
  }
  throw CensusError(n2, n3, static_cast<int>(axes.circle.size()));
}

std::pair<Vec3, double> refine_singular_direction(const HarmonicCubic& h, const Vec3& seed) {
  const auto res = [&](const Vec3& w) { return evaluate_and_gradient(h, w).second; };
  const auto jac = [&](const Vec3& w) {
    Mat3 m = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m(i, j) += 6.0 * h.at(i, j, k) * w(k);
    return m;
  };
  Refined out = refine_on_sphere(seed, res, jac, 400);
  const double hn = h.norm();
  // Triple points (h independent of w) are degenerate for Newton; there w spans
  // the null space of the 9x3 matrix h_(ij),k and is recovered linearly.
  Eigen::Matrix<double, 9, 3> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) a(3 * i + j, k) = h.at(i, j, k);
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(a.transpose() * a);
  Vec3 v = eig.eigenvectors().col(0);
  if (v.dot(out.w) < 0.0) v = -v;
  const double sigma = std::sqrt(std::max(eig.eigenvalues()(0), 0.0));
  if (sigma <= kTriplePointTol * hn && (v - out.w).norm() < 1e-3) out.w = v;
  return {out.w, res(out.w).norm() / (hn > 0.0 ? hn : 1.0)};
}

std::vector<Vec3> singular_directions(const HarmonicCubic& h, double tol) {
  if (h.norm() <= kZeroNorm) throw ValidationError("singular directions of the zero cubic are undefined");
  const auto& pts = lattice2000();
  std::vector<double> score(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    score[i] = evaluate_and_gradient(h, pts[i]).second.squaredNorm();
  std::vector<AxisHit> hits;
  for (const auto& s : pick_seeds(pts, score, 30, 0.2)) {
    const auto [w, rel] = refine_singular_direction(h, s);
    if (rel <= tol) hits.push_back({w, rel});
  }
  dedupe_hits(hits);
  if (hits.size() > 3) {
    std::sort(hits.begin(), hits.end(),
              [](const AxisHit& a, const AxisHit& b) { return a.residual < b.residual; });
    hits.resize(3);
    std::sort(hits.begin(), hits.end(),
              [](const AxisHit& a, const AxisHit& b) { return lex_greater(a.axis, b.axis); });
  }
  std::vector<Vec3> out;
  for (const auto& hit : hits) out.push_back(hit.axis);
  return out;
}

Reducibility is_reducible(const HarmonicCubic& h, double tol) {
  const double hn = h.norm();
  if (hn <= kZeroNorm) throw ValidationError("reducibility of the zero cubic is undefined");
  const SymmetryAxes axes = find_symmetry_axes(h, kAxisTol);
  Reducibility out;
  std::optional<Vec3> l;
  if (!axes.circle.empty()) l = axes.circle.front().axis;
  else if (!axes.order2.empty()) l = axes.order2.front().axis;
  if (!l) return out;
  // after moving l to z, h is divisible by z iff its z-free part vanishes
  const HarmonicCubic g = rotate(h, Rotation3::transporting_z_to(*l));
  const double rem = std::sqrt(g.at(0, 0, 0) * g.at(0, 0, 0) + 3.0 * g.at(0, 0, 1) * g.at(0, 0, 1) +
                               3.0 * g.at(0, 1, 1) * g.at(0, 1, 1) + g.at(1, 1, 1) * g.at(1, 1, 1));
  out.remainder = rem / hn;
  out.factor = l;
  out.reducible = out.remainder <= tol;
  return out;
}

}  // namespace slag
