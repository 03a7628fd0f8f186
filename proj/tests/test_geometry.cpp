#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slag/gallery.hpp"
#include "slag/geometry.hpp"
#include "support.hpp"

using namespace slag;

namespace {

constexpr double kPi = std::numbers::pi;

ImmersionPatch non_lagrangian() {
  ImmersionPatch p;
  p.name = "skew_graph";
  p.domain = {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}};
  p.eval = [](const Vec3& u) { return CVec3(Complex(u(0), u(1)), u(1), u(2)); };
  return p;
}

ImmersionPatch rotated_plane(double phi) {
  ImmersionPatch p;
  p.name = "phase_plane";
  p.domain = {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}};
  p.eval = [phi](const Vec3& u) -> CVec3 { return std::polar(1.0, phi) * u.cast<Complex>(); };
  return p;
}

Vec3 interior_point(const ImmersionPatch& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  Vec3 u;
  for (int a = 0; a < 3; ++a) u(a) = p.domain[a].lo + unif(rng) * (p.domain[a].hi - p.domain[a].lo);
  return u;
}

CMat3 random_su3(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<CMat3> qr(m);
  CMat3 q = qr.householderQ();
  const Complex det = q.determinant();
  return q * std::pow(det, -1.0 / 3.0);
}

std::vector<GalleryEntry> special_gallery() {
  return {plane(),
          harvey_lawson_so3(1.0),
          product_curve(holomorphic::square()),
          product_curve(holomorphic::hyperbolic(1.0)),
          hl_cone(),
          l_lambda(1, 1, -2),
          twisted_cone(surfaces::clifford(), (Vec6() << 1, 0, 0, 0, 0, 0).finished()),
          z3_family(surfaces::clifford(), 1.0)};
}

}  // namespace

TEST(AmbientForms, Identities) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    CVec3 v, w;
    for (int k = 0; k < 3; ++k) {
      v(k) = Complex(n(rng), n(rng));
      w(k) = Complex(n(rng), n(rng));
    }
    EXPECT_NEAR(omega0(apply_J(v), apply_J(w)), omega0(v, w), 1e-12);
    EXPECT_NEAR(omega0(v, w), g0(apply_J(v), w), 1e-12);
  }
  const Complex one = upsilon0(CVec3(1, 0, 0), CVec3(0, 1, 0), CVec3(0, 0, 1));
  EXPECT_EQ(one, Complex(1.0, 0.0));
}

TEST(Lagrangian, Examples) {
  EXPECT_LE(lagrangian_residual(plane().patch, Vec3(0.1, 0.2, 0.3)), 1e-14);
  const auto cone = hl_cone().patch;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) EXPECT_LE(lagrangian_residual(cone, interior_point(cone, rng)), 1e-10);
  // omega0(dF_1, dF_2) = 1 with |dF_1| |dF_2| = sqrt 2
  EXPECT_GE(lagrangian_residual(non_lagrangian(), Vec3(0.2, 0.1, 0.3)), 0.5);
  EXPECT_NEAR(lagrangian_residual(non_lagrangian(), Vec3(0.2, 0.1, 0.3)), 1.0 / std::sqrt(2.0), 1e-8);
}

TEST(Lagrangian, DegenerateJacobianRejected) {
  ImmersionPatch p;
  p.domain = {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}};
  p.eval = [](const Vec3& u) { return CVec3(u(0), u(0), u(2)); };
  EXPECT_THROW(lagrangian_residual(p, Vec3::Zero()), ValidationError);
  EXPECT_THROW(special_residual(p, Vec3::Zero()), ValidationError);
}

TEST(Special, Examples) {
  const auto flat = special_residual(plane().patch, Vec3(0.3, 0.1, -0.2));
  EXPECT_EQ(flat.im_res, 0.0);
  EXPECT_EQ(flat.re_sign, 1);
  // Im Upsilon0 on e^{i phi} R^3 is sin 3 phi
  EXPECT_NEAR(special_residual(rotated_plane(kPi / 6), Vec3(0.1, 0.2, 0.3)).im_res, 1.0, 1e-9);
  EXPECT_NEAR(special_residual(rotated_plane(0.1), Vec3(0.1, 0.2, 0.3)).im_res, std::sin(0.3), 1e-9);
  const auto hl = harvey_lawson_so3(1.0).patch;
  for (const auto& rep : sweep(hl, {4, 5, 5})) {
    ASSERT_FALSE(rep.error) << *rep.error;
    EXPECT_LE(rep.im_res, 1e-8);
  }
}

TEST(AdaptedFrame, Plane) {
  const AdaptedFrame f = adapted_frame(plane().patch, Vec3(0.4, -0.2, 0.9));
  for (int a = 0; a < 3; ++a) EXPECT_LE((f.e[a] - CVec3(Vec3::Unit(a).cast<Complex>())).norm(), 1e-15);
  EXPECT_LE((f.preimage - Mat3::Identity()).norm(), 1e-15);
}

TEST(AdaptedFrame, ConeOrthonormalAndOriented) {
  const auto cone = hl_cone().patch;
  const AdaptedFrame f = adapted_frame(cone, Vec3(1.0, 0.0, 0.0));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(g0(f.e[a], f.e[b]), a == b ? 1.0 : 0.0, 1e-12);
  EXPECT_GT(upsilon0(f.e[0], f.e[1], f.e[2]).real(), 0.0);
  // the preimages map to the frame under the Jacobian
  const PatchJacobian j = patch_jacobian(cone, Vec3(1.0, 0.0, 0.0));
  for (int a = 0; a < 3; ++a)
    EXPECT_LE((j * f.preimage.col(a).cast<Complex>() - f.e[a]).norm(), 1e-12);
}

TEST(AdaptedFrame, NonLagrangianRejected) {
  EXPECT_THROW(adapted_frame(non_lagrangian(), Vec3(0.1, 0.1, 0.1)), ValidationError);
}

TEST(FundamentalCubic, Plane) {
  EXPECT_EQ(fundamental_cubic(plane().patch, Vec3(0.3, 0.3, 0.3)).norm(), 0.0);
}

TEST(FundamentalCubic, HarveyLawsonWaist) {
  for (double c : {0.5, 1.0, 2.0}) {
    const auto hl = harvey_lawson_so3(c).patch;
    const auto nf = classify(fundamental_cubic(hl, Vec3(-kPi / 6, 1.1, 0.4)));
    EXPECT_EQ(nf.type, StabilizerType::Circle);
    EXPECT_NEAR(nf.r, 1.0 / c, 1e-8);
  }
}

TEST(FundamentalCubic, ConeIsS3) {
  const auto nf = classify(fundamental_cubic(hl_cone().patch, Vec3(1.2, 0.5, 2.0)));
  EXPECT_EQ(nf.type, StabilizerType::S3);
}

TEST(FundamentalCubic, FiniteDifferenceFallbackAgrees) {
  const auto cone = hl_cone().patch;
  ImmersionPatch fd = cone;
  fd.hess = nullptr;
  const Vec3 u(1.1, 0.7, 1.9);
  const auto a = fundamental_cubic(cone, u);
  const auto b = fundamental_cubic(fd, u);
  EXPECT_LE((a - b).norm(), 1e-6 * a.norm());
  fd.jac = nullptr;
  EXPECT_LE((fundamental_cubic(fd, u) - a).norm(), 1e-4 * a.norm());
}

TEST(FundamentalCubic, TraceResidualOnSpecialPatches) {
  for (const auto& e : special_gallery()) {
    for (const auto& rep : sweep(e.patch, {3, 4, 4})) {
      ASSERT_FALSE(rep.error) << e.patch.name << ": " << *rep.error;
      EXPECT_LE(rep.trace_res, 1e-5 * rep.cubic.norm() + 1e-12) << e.patch.name;
    }
  }
}

TEST(Sweep, Plane) {
  const auto reps = sweep(plane().patch, {3, 3, 3});
  ASSERT_EQ(reps.size(), 27u);
  for (const auto& r : reps) {
    ASSERT_FALSE(r.error);
    EXPECT_EQ(r.nf.type, StabilizerType::Full);
  }
  EXPECT_NEAR(reps[1].u(2), 0.0, 1e-15);
  EXPECT_NEAR(reps[0].u(2), -2.0 / 3.0, 1e-15);
}

TEST(Sweep, ConeMostlyS3) {
  const auto reps = sweep(hl_cone().patch, {5, 8, 8});
  ASSERT_EQ(reps.size(), 320u);
  int s3 = 0;
  for (const auto& r : reps) {
    ASSERT_FALSE(r.error);
    if (r.nf.type == StabilizerType::S3) ++s3;
    EXPECT_LE(r.lag_res, 1e-8);
    EXPECT_LE(r.im_res, 1e-8);
  }
  EXPECT_GE(s3, 0.95 * reps.size());
}

TEST(Sweep, FailedNodesCarryErrors) {
  const auto reps = sweep(non_lagrangian(), {2, 2, 2});
  ASSERT_EQ(reps.size(), 8u);
  for (const auto& r : reps) EXPECT_TRUE(r.error.has_value());
  EXPECT_THROW(sweep(plane().patch, {0, 1, 1}), ValidationError);
}

TEST(GaussCodazzi, Plane) {
  const auto gc = codazzi_gauss_residual(plane().patch, Vec3(0.1, 0.2, 0.3), 1e-3);
  EXPECT_EQ(gc.codazzi, 0.0);
  EXPECT_EQ(gc.gauss, 0.0);
}

TEST(GaussCodazzi, CurvedPatchesConverge) {
  const std::vector<std::pair<ImmersionPatch, Vec3>> cases{
      {harvey_lawson_so3(1.0).patch, Vec3(-0.7, 1.1, 0.8)},
      {hl_cone().patch, Vec3(1.0, 0.7, 2.1)},
      {l_lambda(1, 1, -2).patch, Vec3(0.2, 0.9, 1.1)}};
  for (const auto& [p, u] : cases) {
    const auto a = codazzi_gauss_residual(p, u, 1e-3);
    const auto b = codazzi_gauss_residual(p, u, 5e-4);
    EXPECT_LE(a.codazzi, 1e-3) << p.name;
    EXPECT_LE(a.gauss, 1e-3) << p.name;
    EXPECT_LT(b.codazzi, a.codazzi) << p.name;
    EXPECT_LT(b.gauss, a.gauss) << p.name;
    // second-order differences: halving divides by about 4
    EXPECT_NEAR(a.codazzi / b.codazzi, 4.0, 0.5) << p.name;
  }
}

TEST(GaussCodazzi, ContractionSignCalibration) {
  const auto hl = harvey_lawson_so3(1.0).patch;
  const Vec3 u(-0.7, 1.1, 0.8);
  const auto standard = codazzi_gauss_residual_once(hl, u, 1e-3, GaussSign::Standard);
  const auto flipped = codazzi_gauss_residual_once(hl, u, 1e-3, GaussSign::Flipped);
  EXPECT_LT(standard.gauss, 1e-3);
  EXPECT_GT(flipped.gauss, 1.0);
}

TEST(GaussCodazzi, TinyStepDetected) {
  ImmersionPatch p = hl_cone().patch;
  p.jac = nullptr;
  p.hess = nullptr;
  EXPECT_THROW(codazzi_gauss_residual(p, Vec3(1.0, 0.7, 2.1), 1e-6), NumericalError);
}

TEST(Properties, RigidMotionInvariance) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const auto& e : special_gallery()) {
    const CMat3 U = random_su3(rng);
    const CVec3 b(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
    const ImmersionPatch moved = transform_patch(e.patch, U, b);
    for (int t = 0; t < 4; ++t) {
      const Vec3 u = interior_point(e.patch, rng);
      const auto a = point_report(e.patch, u);
      const auto m = point_report(moved, u);
      ASSERT_FALSE(a.error || m.error) << e.patch.name;
      EXPECT_NEAR(a.lag_res, m.lag_res, 1e-9) << e.patch.name;
      EXPECT_NEAR(a.im_res, m.im_res, 1e-9) << e.patch.name;
      EXPECT_EQ(a.nf.type, m.nf.type) << e.patch.name;
      EXPECT_LE((m.position - (U * a.position + b)).norm(), 1e-12 * (1 + a.position.norm()));
      EXPECT_LE((a.cubic - m.cubic).norm(), 1e-9 * (1 + a.cubic.norm())) << e.patch.name;
    }
  }
}

TEST(Properties, DilationLaw) {
  std::mt19937_64 rng(7);
  for (const auto& e : special_gallery()) {
    for (double lambda : {0.5, 3.0}) {
      const ImmersionPatch scaled = transform_patch(e.patch, lambda * CMat3::Identity(), CVec3::Zero());
      const Vec3 u = interior_point(e.patch, rng);
      const HarmonicCubic h = fundamental_cubic(e.patch, u);
      const HarmonicCubic hs = fundamental_cubic(scaled, u);
      EXPECT_LE((lambda * hs - h).norm(), 1e-10 * (1 + h.norm())) << e.patch.name;
      EXPECT_EQ(classify(hs).type, classify(h).type) << e.patch.name;
    }
  }
  // lambda L_c = L_{lambda c}: the scaled waist cubic matches the waist cubic of the larger c
  const auto hl1 = harvey_lawson_so3(1.0).patch;
  const auto scaled = transform_patch(hl1, 2.0 * CMat3::Identity(), CVec3::Zero());
  const Vec3 waist(-kPi / 6, 0.9, 0.3);
  const auto a = classify(fundamental_cubic(scaled, waist));
  const auto b = classify(fundamental_cubic(harvey_lawson_so3(2.0).patch, waist));
  EXPECT_NEAR(a.r, b.r, 1e-10);
}

TEST(Properties, FrameGaugeIndependence) {
  std::mt19937_64 rng(11);
  const std::array<std::array<int, 3>, 3> orders{{{1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& e : special_gallery()) {
    const Vec3 u = interior_point(e.patch, rng);
    const auto base = fundamental_cubic_full(e.patch, u);
    const auto nf = classify(base.cubic);
    for (const auto& ord : orders) {
      const AdaptedFrame f = adapted_frame_ordered(e.patch, u, ord);
      const auto other = cubic_in_frame(e.patch, u, f);
      // frames differ by a rotation, which carries one cubic to the other
      Mat3 m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = g0(base.frame.e[i], f.e[j]);
      const HarmonicCubic carried = rotate(base.cubic, Rotation3(nearest_rotation(m)));
      EXPECT_LE((carried - other.cubic).norm(), 1e-10 * (1 + base.cubic.norm())) << e.patch.name;
      const auto nf2 = classify(other.cubic);
      EXPECT_EQ(nf2.type, nf.type) << e.patch.name;
      EXPECT_NEAR(nf2.r, nf.r, 1e-6 * (1 + nf.r));
      EXPECT_NEAR(nf2.s, nf.s, 1e-6 * (1 + nf.s));
    }
  }
}
