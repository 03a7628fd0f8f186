#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "slag/geometry.hpp"

namespace slag {

// ---- SO(2)-invariant profile ------------------------------------------------

struct SO2Profile {
  double c = 1.0;
  double theta = 0.0;
  double r = 1.0;
  double t = 0.0;

  /// r^{3/2} + r^{-1/2} t^2, equal to c^{-3/2}.
  double conserved() const;
};

/// Closed-form (r, t) at angle theta, |theta| < pi/6.
SO2Profile so2_profile(double c, double theta);

/// (dr/dtheta, dt/dtheta) from dr = -4rt w1, dt = (3r^2 - t^2) w1, w1 = c dtheta / cos(3 theta)^{4/3}.
Vec2 so2_rhs(double c, double theta, const Vec2& rt);

/// Classical RK4 for the (r, t) pair from theta0 to theta1 in `steps` equal steps.
Vec2 so2_integrate(double c, double theta0, const Vec2& rt0, double theta1, int steps);

// ---- Z2 structure system ------------------------------------------------------

struct Z2Init {
  double r = 1.0, s = 2.0, t1 = 0.0, t2 = 0.0, t3 = 0.0, u1 = 0.0;
};

struct StructureStateZ2 {
  CVec3 x = CVec3::Zero();
  std::array<CVec3, 3> e{CVec3::Unit(0), CVec3::Unit(1), CVec3::Unit(2)};
  double r = 1.0, s = 2.0, t1 = 0.0, t2 = 0.0, t3 = 0.0, u1 = 0.0;

  double u2() const;
  double u3() const;
};

/// Law variants; FlippedU2 flips the sign of the s*u1 term in u2 (negative control).
enum class Z2Law { Standard, FlippedU2 };

inline constexpr double kZ2Min = 1e-6;
inline constexpr double kZ2Max = 1e6;
inline constexpr double kZ2Gap = 1e-8;
inline constexpr int kReorthEvery = 10;

/// States on the centred grid of the second-kind chart
/// u -> exp(u3 E3) exp(u2 E2) exp(u1 E1)(origin state).
struct Z2Field {
  Z2Init init;
  Vec3 extents = Vec3::Zero();
  double step = 1e-2;
  Z2Law law = Z2Law::Standard;
  std::array<int, 3> cells{0, 0, 0};  // nodes per axis = cells + 1
  Vec3 spacing = Vec3::Zero();
  std::vector<StructureStateZ2> nodes;  // row-major, last axis fastest
  double frame_drift = 0.0;             // max |E^H E - I| per unit arc length before re-orthonormalization

  int index(int i, int j, int k) const;
  const StructureStateZ2& at(int i, int j, int k) const;
  Vec3 coords(int i, int j, int k) const;
};

/// Integrate the field; throws ValidationError on bad input and NumericalError on blow-up
/// or an r - s crossing.
Z2Field z2_field(const Z2Init& init, const Vec3& extents, double step, Z2Law law = Z2Law::Standard);

/// State at chart point u, integrated along the canonical path from the origin.
StructureStateZ2 z2_state_at(const Z2Field& f, const Vec3& u);

/// Commutator defect of the flows E_i, E_j around coarse cells, closed by a
/// Gauss-Newton correction and divided by the cell area. Zero for 1-D fields.
double path_independence(const Z2Field& f, int coarse_cells = 4);

struct IntegrationReport {
  double loop_residual = 0.0;
  double slag_res = 0.0;   // max of lag_res and im_res over the census nodes
  double trace_res = 0.0;  // max raw trace residual relative to |h|
  double frame_drift = 0.0;
  std::map<StabilizerType, int> type_census;
};

struct Z2Options {
  std::array<int, 3> census_grid{4, 4, 4};
  double loop_tol = 1e-2;
  Z2Law law = Z2Law::Standard;
};

struct Z2Integration {
  Z2Field field;
  ImmersionPatch patch;
  IntegrationReport report;
};

Z2Integration z2_integrate(const Z2Init& init, const Vec3& extents, double step,
                           const Z2Options& opts = {});

/// Immersion given by the chart of a field; the Jacobian is integrated alongside the state.
ImmersionPatch z2_patch(const Z2Field& f);

struct FoliationCheck {
  double plane_variation = 0.0;  // max principal angle to the slice's central 3-plane
  double quadric_residual = 0.0; // max quadric-fit distance relative to leaf diameter
  double max() const { return std::max(plane_variation, quadric_residual); }
};

/// Leaves of w1 = 0 are the u1 = const slices of the chart.
FoliationCheck z2_foliation_check(const Z2Field& f);

}  // namespace slag
