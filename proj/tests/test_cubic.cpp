#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "slag/cubic.hpp"
#include "support.hpp"

using namespace slag;
using slag::testing::classification_corpus;
using slag::testing::poly_value;
using slag::testing::random_cubic;
using slag::testing::random_rotation;

namespace {

double full_norm_sq(const HarmonicCubic& h) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s += h.at(i, j, k) * h.at(i, j, k);
  return s;
}

bool contains_axis(const std::vector<AxisHit>& hits, const Vec3& w, double tol = 1e-6) {
  for (const auto& h : hits)
    if (std::abs(std::abs(h.axis.dot(w.normalized())) - 1.0) < tol) return true;
  return false;
}

bool contains_dir(const std::vector<Vec3>& dirs, const Vec3& w, double tol = 1e-6) {
  for (const auto& d : dirs)
    if (std::abs(std::abs(d.dot(w.normalized())) - 1.0) < tol) return true;
  return false;
}

}  // namespace

TEST(ProjectTraceless, IdempotentOnHarmonic) {
  SymmetricCubic t;
  t.coeffs = cubics::xyz6().coeffs();
  EXPECT_EQ(project_traceless(t).coeffs(), cubics::xyz6().coeffs());
}

TEST(ProjectTraceless, KillsTraceOfXCubed) {
  SymmetricCubic t;
  t.coeffs[0] = 1.0;
  const HarmonicCubic h = project_traceless(t);
  EXPECT_NEAR(h.at(0, 0, 0) + h.at(1, 1, 0) + h.at(2, 2, 0), 0.0, 1e-15);
  EXPECT_LE(h.trace_residual(), 1e-15);
}

TEST(ProjectTraceless, ReprojectionIsStable) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 50; ++n) {
    const HarmonicCubic h = random_cubic(rng);
    SymmetricCubic t;
    t.coeffs = h.coeffs();
    const HarmonicCubic again = project_traceless(t);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(again.coeffs()[i], h.coeffs()[i], 1e-15);
  }
}

TEST(ProjectTraceless, RejectsNonFinite) {
  SymmetricCubic t;
  t.coeffs[3] = std::nan("");
  EXPECT_THROW(project_traceless(t), ValidationError);
}

TEST(HarmonicCubic, RejectsTrace) {
  EXPECT_THROW(HarmonicCubic({1, 0, 0, 0, 0, 0, 0, 0, 0, 0}), ValidationError);
  EXPECT_THROW(HarmonicCubic({0, 0, 0, 0, INFINITY, 0, 0, 0, 0, 0}), ValidationError);
}

TEST(HarmonicCubic, MonomialConstruction) {
  const auto h = HarmonicCubic::from_monomials({1, 0, 0, -3, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(h.coeffs(), cubics::cubic3().coeffs());
  const Vec3 x(0.3, -1.2, 0.7);
  EXPECT_NEAR(poly_value(cubics::zonal(), x),
              x.z() * (2 * x.z() * x.z() - 3 * x.x() * x.x() - 3 * x.y() * x.y()), 1e-14);
  EXPECT_NEAR(poly_value(cubics::xyz6(), x), 6 * x.x() * x.y() * x.z(), 1e-14);
}

TEST(Evaluate, XyzAtOnes) {
  const auto [v, g] = evaluate_and_gradient(cubics::xyz6(), Vec3(1, 1, 1));
  EXPECT_NEAR(v, 6.0, 1e-14);
  EXPECT_NEAR((g - Vec3(6, 6, 6)).norm(), 0.0, 1e-13);
}

TEST(Evaluate, ZeroPoint) {
  std::mt19937_64 rng(3);
  const auto [v, g] = evaluate_and_gradient(random_cubic(rng), Vec3::Zero());
  EXPECT_EQ(v, 0.0);
  EXPECT_EQ(g.norm(), 0.0);
}

TEST(Evaluate, Cubic3OnAxis) {
  const auto [v, g] = evaluate_and_gradient(cubics::cubic3(), Vec3::UnitZ());
  EXPECT_EQ(v, 0.0);
  EXPECT_EQ(g.norm(), 0.0);
}

TEST(Evaluate, EulerIdentityAndFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const HarmonicCubic h = random_cubic(rng);
    const Vec3 x(n(rng), n(rng), n(rng));
    const auto [v, g] = evaluate_and_gradient(h, x);
    EXPECT_NEAR(v, poly_value(h, x), 1e-12 * (1 + std::abs(v)));
    EXPECT_NEAR(g.dot(x), 3.0 * v, 1e-12 * (1 + g.norm() * x.norm()));
    for (int i = 0; i < 3; ++i) {
      const double eps = 1e-5;
      const Vec3 d = eps * Vec3::Unit(i);
      const double fd = (poly_value(h, x + d) - poly_value(h, x - d)) / (2 * eps);
      EXPECT_NEAR(g(i), fd, 1e-7 * (1 + std::abs(fd)));
    }
  }
}

TEST(Rotation, Validation) {
  Mat3 bad = Mat3::Identity();
  bad(0, 1) = 1e-6;
  EXPECT_THROW(Rotation3{bad}, ValidationError);
  EXPECT_THROW(Rotation3{Mat3(-Mat3::Identity())}, ValidationError);
  EXPECT_NO_THROW(Rotation3{Mat3::Identity()});
}

TEST(Rotation, TransportSendsZToW) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Vec3 w = Vec3(n(rng), n(rng), n(rng)).normalized();
    EXPECT_NEAR((Rotation3::transporting_z_to(w).matrix() * Vec3::UnitZ() - w).norm(), 0.0, 1e-14);
  }
  EXPECT_NEAR((Rotation3::transporting_z_to(-Vec3::UnitZ()).matrix() * Vec3::UnitZ() +
               Vec3::UnitZ()).norm(), 0.0, 1e-15);
}

TEST(Rotate, MatchesPullbackPointwise) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const HarmonicCubic h = random_cubic(rng);
    const Rotation3 r = random_rotation(rng);
    const HarmonicCubic g = rotate(h, r);
    for (int p = 0; p < 5; ++p) {
      const Vec3 x(n(rng), n(rng), n(rng));
      EXPECT_NEAR(poly_value(g, x), poly_value(h, r.matrix() * x), 1e-12);
    }
    EXPECT_NEAR(g.norm(), h.norm(), 1e-12 * h.norm());
  }
}

TEST(Rotate, IdentityAndComposition) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const HarmonicCubic h = random_cubic(rng);
    const Rotation3 r1 = random_rotation(rng), r2 = random_rotation(rng);
    const HarmonicCubic same = rotate(h, Rotation3());
    EXPECT_LE((same - h).norm(), 1e-15 * h.norm());
    EXPECT_LE((rotate(rotate(h, r1), r2) - rotate(h, r1 * r2)).norm(), 1e-12 * h.norm());
  }
}

TEST(Rotate, NamedExamples) {
  const HarmonicCubic flipped =
      rotate(cubics::zonal(), Rotation3::about_axis(Vec3::UnitX(), std::numbers::pi));
  EXPECT_LE((flipped + cubics::zonal()).norm(), 1e-14);
  const HarmonicCubic turned =
      rotate(cubics::xyz6(), Rotation3::about_axis(Vec3::UnitZ(), std::numbers::pi / 2));
  EXPECT_LE((turned + cubics::xyz6()).norm(), 1e-14);
}

TEST(Invariants, Values) {
  const auto zero = invariants(HarmonicCubic());
  EXPECT_EQ(zero.i2, 0.0);
  EXPECT_EQ(zero.i4, 0.0);
  // 6 index permutations of (1,2,3), each contributing 1
  EXPECT_NEAR(full_norm_sq(cubics::xyz6()), 6.0, 1e-15);
  EXPECT_NEAR(invariants(cubics::xyz6()).i2, 6.0, 1e-14);
}

TEST(Invariants, RotationInvariantAndBounded) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    const HarmonicCubic h = random_cubic(rng);
    const auto a = invariants(h);
    const auto b = invariants(rotate(h, random_rotation(rng)));
    EXPECT_NEAR(a.i2, full_norm_sq(h), 1e-12 * a.i2);
    EXPECT_NEAR(b.i2, a.i2, 1e-10 * a.i2);
    EXPECT_NEAR(b.i4, a.i4, 1e-10 * a.i4);
    EXPECT_GE(a.i4, 0.0);
    EXPECT_LE(a.i4, a.i2 * a.i2 * (1 + 1e-12));
  }
}

TEST(AxisDecompose, NamedExamples) {
  const auto d0 = axis_decompose(cubics::zonal(), Vec3::UnitZ());
  EXPECT_NEAR(std::abs(d0.c1) + std::abs(d0.c2) + std::abs(d0.c3), 0.0, 1e-14);
  EXPECT_NEAR(d0.c0, std::sqrt(10.0), 1e-14);
  const auto d2 = axis_decompose(cubics::xyz6(), Vec3::UnitZ());
  EXPECT_NEAR(std::abs(d2.c0) + std::abs(d2.c1) + std::abs(d2.c3), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d2.c2), std::sqrt(6.0), 1e-14);
  const auto d3 = axis_decompose(cubics::cubic3(), Vec3::UnitZ());
  EXPECT_NEAR(std::abs(d3.c0) + std::abs(d3.c1) + std::abs(d3.c2), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d3.c3), 2.0, 1e-14);
}

TEST(AxisDecompose, ParsevalAndPhase) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const HarmonicCubic h = random_cubic(rng);
    const Vec3 w = Vec3(n(rng), n(rng), n(rng)).normalized();
    const auto d = axis_decompose(h, w);
    const double parseval = d.c0 * d.c0 + std::norm(d.c1) + std::norm(d.c2) + std::norm(d.c3);
    EXPECT_NEAR(parseval, h.norm() * h.norm(), 1e-10 * parseval);
    for (double alpha : {std::numbers::pi / 2, 0.37}) {
      const auto e = axis_decompose(rotate(h, Rotation3::about_axis(w, alpha)), w);
      const Complex ph(std::cos(alpha), std::sin(alpha));
      EXPECT_NEAR(e.c0, d.c0, 1e-12 * h.norm());
      EXPECT_NEAR(std::abs(e.c1 - ph * d.c1), 0.0, 1e-12 * h.norm());
      EXPECT_NEAR(std::abs(e.c2 - ph * ph * d.c2), 0.0, 1e-12 * h.norm());
      EXPECT_NEAR(std::abs(e.c3 - ph * ph * ph * d.c3), 0.0, 1e-12 * h.norm());
    }
  }
}

TEST(AxisDecompose, RejectsBadAxis) {
  EXPECT_THROW(axis_decompose(cubics::xyz6(), Vec3::Zero()), ValidationError);
  EXPECT_THROW(axis_decompose(cubics::xyz6(), Vec3(1, 1, 0)), ValidationError);
}

TEST(SymmetryAxes, Xyz) {
  const auto axes = find_symmetry_axes(cubics::xyz6());
  ASSERT_EQ(axes.order2.size(), 3u);
  ASSERT_EQ(axes.order3.size(), 4u);
  EXPECT_TRUE(axes.circle.empty());
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(contains_axis(axes.order2, Vec3::Unit(i)));
  for (const Vec3& d : {Vec3(1, 1, 1), Vec3(1, -1, 1), Vec3(-1, 1, 1), Vec3(-1, -1, 1)})
    EXPECT_TRUE(contains_axis(axes.order3, d));
  for (const auto& a : axes.order2) EXPECT_LE(a.residual, kAxisTol);
  EXPECT_NEAR(axes.order2[0].axis.x(), 1.0, 1e-9);
  EXPECT_NEAR(axes.order2[2].axis.z(), 1.0, 1e-9);
}

TEST(SymmetryAxes, Cubic3) {
  const auto axes = find_symmetry_axes(cubics::cubic3());
  ASSERT_EQ(axes.order2.size(), 3u);
  ASSERT_EQ(axes.order3.size(), 1u);
  EXPECT_TRUE(axes.circle.empty());
  const double c = std::cos(2 * std::numbers::pi / 3), s = std::sin(2 * std::numbers::pi / 3);
  EXPECT_TRUE(contains_axis(axes.order2, Vec3::UnitX()));
  EXPECT_TRUE(contains_axis(axes.order2, Vec3(c, s, 0)));
  EXPECT_TRUE(contains_axis(axes.order2, Vec3(c, -s, 0)));
  EXPECT_TRUE(contains_axis(axes.order3, Vec3::UnitZ()));
  EXPECT_NEAR(axes.order2[0].axis.x(), 1.0, 1e-9);
}

TEST(SymmetryAxes, Zonal) {
  const auto axes = find_symmetry_axes(cubics::zonal());
  ASSERT_EQ(axes.circle.size(), 1u);
  EXPECT_TRUE(contains_axis(axes.circle, Vec3::UnitZ()));
}

TEST(SymmetryAxes, RotatedCorpusResiduals) {
  std::mt19937_64 rng(29);
  for (const auto& e : classification_corpus()) {
    if (e.type == StabilizerType::Full) continue;
    const Rotation3 r = random_rotation(rng);
    const HarmonicCubic h = rotate(e.h, r);
    const auto axes = find_symmetry_axes(h);
    for (const auto* list : {&axes.order2, &axes.order3, &axes.circle})
      for (const auto& a : *list) {
        EXPECT_LE(a.residual, kAxisTol) << e.name;
        EXPECT_NEAR(a.axis.norm(), 1.0, 1e-12);
      }
  }
  EXPECT_THROW(find_symmetry_axes(HarmonicCubic()), ValidationError);
}

TEST(Classify, SpecExamples) {
  EXPECT_EQ(classify(HarmonicCubic()).type, StabilizerType::Full);

  const auto s3 = classify(cubics::zonal() + cubics::xyz6());
  EXPECT_EQ(s3.type, StabilizerType::S3);
  EXPECT_NEAR(s3.s, 2.0, 1e-8);

  const auto a4 = classify(cubics::zonal() + std::sqrt(2.0) * cubics::cubic3());
  EXPECT_EQ(a4.type, StabilizerType::A4);
  EXPECT_NEAR(a4.s, std::sqrt(3.0), 1e-8);

  const auto z2 = classify(cubics::zonal() + 2.0 * cubics::xyz6());
  EXPECT_EQ(z2.type, StabilizerType::Z2);
  EXPECT_NEAR(z2.r, 1.0, 1e-8);
  EXPECT_NEAR(z2.s, 2.0, 1e-8);
  ASSERT_TRUE(z2.dist_s_minus_r.has_value());
  EXPECT_NEAR(*z2.dist_s_minus_r, 1.0, 1e-8);

  const auto z3 = classify(cubics::zonal() + 3.0 * cubics::cubic3());
  EXPECT_EQ(z3.type, StabilizerType::Z3);
  EXPECT_NEAR(z3.r, 1.0, 1e-8);
  EXPECT_NEAR(z3.s, 3.0, 1e-8);
  ASSERT_TRUE(z3.dist_s_minus_r_sqrt2.has_value());
  EXPECT_NEAR(*z3.dist_s_minus_r_sqrt2, 3.0 - std::sqrt(2.0), 1e-8);
}

TEST(Classify, CorpusUnderRandomRotations) {
  std::mt19937_64 rng(31);
  for (const auto& e : classification_corpus()) {
    const auto base = classify(e.h);
    ASSERT_EQ(base.type, e.type) << e.name;
    if (e.type != StabilizerType::Trivial) {
      EXPECT_NEAR(base.r, e.r, 1e-6 * (1 + e.r)) << e.name;
      EXPECT_NEAR(base.s, e.s, 1e-6 * (1 + e.s)) << e.name;
      EXPECT_LE(base.residual, kFitTol * std::max(1.0, e.h.norm())) << e.name;
    }
    for (int t = 0; t < 200; ++t) {
      const auto res = classify(rotate(e.h, random_rotation(rng)));
      ASSERT_EQ(res.type, e.type) << e.name << " rotation " << t;
      EXPECT_NEAR(res.r, base.r, 1e-6 * (1 + base.r)) << e.name;
      EXPECT_NEAR(res.s, base.s, 1e-6 * (1 + base.s)) << e.name;
      if (e.type != StabilizerType::Trivial && e.type != StabilizerType::Full)
        EXPECT_LE(res.residual, kFitTol * e.h.norm()) << e.name;
    }
  }
}

TEST(Classify, RotationCarriesToNormalForm) {
  std::mt19937_64 rng(37);
  for (const auto& e : classification_corpus()) {
    if (e.type == StabilizerType::Trivial || e.type == StabilizerType::Full) continue;
    const HarmonicCubic h = rotate(e.h, random_rotation(rng));
    const auto res = classify(h);
    const HarmonicCubic nf = normal_form(res.type, res.r, res.s);
    EXPECT_NEAR((rotate(h, res.rotation) - nf).norm(), res.residual, 1e-14);
    EXPECT_GE(res.r, 0.0);
    EXPECT_GE(res.s, 0.0);
  }
}

TEST(Classify, SignAndScale) {
  std::mt19937_64 rng(41);
  for (const auto& e : classification_corpus()) {
    const HarmonicCubic h = rotate(e.h, random_rotation(rng));
    const auto base = classify(h);
    EXPECT_EQ(classify(-h).type, base.type) << e.name;
    for (double lambda : {0.25, 3.0}) {
      const auto scaled = classify(lambda * h);
      EXPECT_EQ(scaled.type, base.type) << e.name;
      EXPECT_NEAR(scaled.r, lambda * base.r, 1e-6 * (1 + lambda * base.r));
      EXPECT_NEAR(scaled.s, lambda * base.s, 1e-6 * (1 + lambda * base.s));
    }
  }
}

TEST(Classify, RandomCubicsAreTrivial) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) EXPECT_EQ(classify(random_cubic(rng)).type, StabilizerType::Trivial);
}

TEST(Classify, NearBoundaryCollapse) {
  // within tolerance of the special values, the fit collapses to the larger group
  const double eps = 1e-8;
  const auto s3 = classify(cubics::normal_z2(1.0, 1.0 + eps), 1e-6);
  EXPECT_EQ(s3.type, StabilizerType::S3);
  EXPECT_NEAR(s3.s, 2.0, 1e-6);
  const auto a4 = classify(cubics::normal_z3(1.0, std::sqrt(2.0) + eps), 1e-6);
  EXPECT_EQ(a4.type, StabilizerType::A4);
  EXPECT_NEAR(a4.s, std::sqrt(3.0), 1e-6);
  // outside tolerance the lower type stands
  EXPECT_EQ(classify(cubics::normal_z2(1.0, 1.01)).type, StabilizerType::Z2);
  EXPECT_EQ(classify(cubics::normal_z3(1.0, std::sqrt(2.0) + 0.01)).type, StabilizerType::Z3);
}

TEST(SingularDirections, NamedExamples) {
  const auto xyz = singular_directions(cubics::xyz6());
  ASSERT_EQ(xyz.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(contains_dir(xyz, Vec3::Unit(i)));
  const auto c3 = singular_directions(cubics::cubic3());
  ASSERT_EQ(c3.size(), 1u);
  EXPECT_TRUE(contains_dir(c3, Vec3::UnitZ(), 1e-6));
  EXPECT_TRUE(singular_directions(cubics::zonal()).empty());
}

TEST(SingularDirections, ZonalScanOracle) {
  // dense scan: the gradient of the zonal cubic stays away from zero on the sphere
  const auto pts = fibonacci_sphere(100000);
  double lo = INFINITY;
  for (const auto& p : pts) lo = std::min(lo, evaluate_and_gradient(cubics::zonal(), p).second.norm());
  EXPECT_GT(lo, 1.0);
}

TEST(SingularDirections, CorpusCounts) {
  std::mt19937_64 rng(47);
  for (const auto& e : classification_corpus()) {
    if (e.type == StabilizerType::Full) continue;
    const HarmonicCubic h = rotate(e.h, random_rotation(rng));
    const auto dirs = singular_directions(h);
    EXPECT_LE(dirs.size(), 3u) << e.name;
    for (const auto& d : dirs)
      EXPECT_LE(evaluate_and_gradient(h, d).second.norm(), kBoundaryTol * h.norm()) << e.name;
    if (dirs.size() == 3)
      EXPECT_TRUE(e.type == StabilizerType::A4 || e.type == StabilizerType::S3) << e.name;
    if (e.type == StabilizerType::Circle) EXPECT_TRUE(dirs.empty()) << e.name;
    if (e.type == StabilizerType::Z3) EXPECT_TRUE(dirs.empty()) << e.name;
  }
}

TEST(Reducible, NamedExamples) {
  const auto c3 = is_reducible(cubics::cubic3());
  EXPECT_TRUE(c3.reducible);
  ASSERT_TRUE(c3.factor.has_value());
  EXPECT_NEAR(std::abs(c3.factor->x()), 1.0, 1e-9);

  const auto z2 = is_reducible(cubics::normal_z2(1, 2));
  EXPECT_TRUE(z2.reducible);
  ASSERT_TRUE(z2.factor.has_value());
  EXPECT_NEAR(std::abs(z2.factor->z()), 1.0, 1e-9);

  const auto z3 = is_reducible(cubics::normal_z3(1, 3));
  EXPECT_FALSE(z3.reducible);
  EXPECT_FALSE(z3.factor.has_value());
}

TEST(Reducible, MatchesAxesAndDivision) {
  std::mt19937_64 rng(53);
  for (const auto& e : classification_corpus()) {
    if (e.type == StabilizerType::Full) continue;
    const HarmonicCubic h = rotate(e.h, random_rotation(rng));
    const auto axes = find_symmetry_axes(h);
    const auto red = is_reducible(h);
    const bool expected = !axes.order2.empty() || !axes.circle.empty();
    EXPECT_EQ(red.reducible, expected) << e.name;
    if (red.reducible) {
      // independent division check: h vanishes on the plane l(x) = 0
      const Vec3 l = *red.factor;
      const auto [t1, t2] = [&] {
        const Vec3 a = std::abs(l.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
        const Vec3 u = (a - a.dot(l) * l).normalized();
        return std::pair{u, Vec3(l.cross(u))};
      }();
      for (int k = 0; k < 16; ++k) {
        const double th = 2 * std::numbers::pi * k / 16;
        EXPECT_NEAR(poly_value(h, std::cos(th) * t1 + std::sin(th) * t2), 0.0, 1e-6 * h.norm());
      }
    }
  }
}
