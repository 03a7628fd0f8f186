#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slag/core.hpp"
#include "slag/cubic.hpp"

namespace slag {

/// Columns are the partial derivatives dF/du_a.
using PatchJacobian = Eigen::Matrix3cd;
/// hess[a][b] = d^2 F / du_a du_b (symmetric in a, b).
using PatchHessian = std::array<std::array<CVec3, 3>, 3>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
using Box = std::array<Interval, 3>;

/// Parametrized map from a box in R^3 into C^3.
struct ImmersionPatch {
  std::string name;
  std::map<std::string, double> params;
  Box domain{};
  std::function<CVec3(const Vec3&)> eval;
  std::function<PatchJacobian(const Vec3&)> jac;   // optional
  std::function<PatchHessian(const Vec3&)> hess;   // optional
};

/// Jacobian from the analytic oracle, or central differences of eval.
PatchJacobian patch_jacobian(const ImmersionPatch& p, const Vec3& u);
/// Hessian from the analytic oracle, or central differences of the Jacobian.
PatchHessian patch_hessian(const ImmersionPatch& p, const Vec3& u);

/// Max relative deviation of the analytic Jacobian from central differences
/// of eval over `count` random interior points.
double jacobian_consistency(const ImmersionPatch& p, int count = 20, unsigned seed = 1);

/// Apply x -> U x + b to a patch, with U unitary.
ImmersionPatch transform_patch(const ImmersionPatch& p, const CMat3& unitary, const CVec3& shift);

/// Max |omega0(dF_a, dF_b)| / (|dF_a| |dF_b|) over a < b.
double lagrangian_residual(const ImmersionPatch& p, const Vec3& u);

struct SpecialResidual {
  double im_res = 0.0;
  int re_sign = 1;
};
/// |Im Upsilon0| on the Jacobian columns divided by the volume of their span.
SpecialResidual special_residual(const ImmersionPatch& p, const Vec3& u);

struct AdaptedFrame {
  std::array<CVec3, 3> e;
  CVec3 position;
  Mat3 preimage;  // column a: parameter vector v_a with dF(v_a) = e_a
};

inline constexpr double kFrameTol = 1e-6;

AdaptedFrame adapted_frame(const ImmersionPatch& p, const Vec3& u, double frame_tol = kFrameTol);
/// Same frame construction with the Gram-Schmidt order given by `order`.
AdaptedFrame adapted_frame_ordered(const ImmersionPatch& p, const Vec3& u,
                                   const std::array<int, 3>& order, double frame_tol = kFrameTol);

struct CubicAtPoint {
  AdaptedFrame frame;
  HarmonicCubic cubic;
  double trace_res = 0.0;  // max_k |sum_i h_iik| before projection
};

inline constexpr double kTraceRejectRel = 1e-3;
inline constexpr double kTraceFloor = 1e-9;

CubicAtPoint fundamental_cubic_full(const ImmersionPatch& p, const Vec3& u);
CubicAtPoint cubic_in_frame(const ImmersionPatch& p, const Vec3& u, const AdaptedFrame& frame);
HarmonicCubic fundamental_cubic(const ImmersionPatch& p, const Vec3& u);

struct PointReport {
  Vec3 u = Vec3::Zero();
  CVec3 position = CVec3::Zero();
  double lag_res = 0.0;
  double im_res = 0.0;
  double trace_res = 0.0;
  HarmonicCubic cubic;
  NormalFormResult nf;
  std::optional<std::string> error;  // set when the node could not be evaluated
};

/// Node i of n along an interval: the centre of cell i.
double grid_node(const Interval& iv, int i, int n);

PointReport point_report(const ImmersionPatch& p, const Vec3& u, double tol = kBoundaryTol);

/// Row-major sweep (last axis fastest) over cell centres of the domain.
std::vector<PointReport> sweep(const ImmersionPatch& p, const std::array<int, 3>& grid,
                               double tol = kBoundaryTol);

struct GaussCodazzi {
  double codazzi = 0.0;
  double gauss = 0.0;
};

/// Curvature sign convention of the Gauss contraction.
enum class GaussSign { Standard, Flipped };

GaussCodazzi codazzi_gauss_residual_once(const ImmersionPatch& p, const Vec3& u, double step,
                                         GaussSign sign = GaussSign::Standard);
/// Residuals at `step`; throws NumericalError when halving the step makes a
/// residual grow by more than half again (cancellation regime).
GaussCodazzi codazzi_gauss_residual(const ImmersionPatch& p, const Vec3& u, double step);

}  // namespace slag
