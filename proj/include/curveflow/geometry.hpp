#pragma once

#include <cstddef>
#include <vector>

#include "curveflow/grid.hpp"

namespace curveflow {

/// Strict-convexity floor on S_thetatheta + S. Below this, curvature is
/// treated as degenerate instead of returning huge values.
inline constexpr double kTolConvex = 1e-10;

/// Support function samples S(theta_j): the signed distance from the origin
/// to the tangent line whose outward normal has angle theta.
struct SupportField {
  Field field;

  SupportField() = default;
  explicit SupportField(Field f) : field(std::move(f)) {}

  const ThetaGrid& grid() const { return field.grid; }
  std::size_t size() const { return field.size(); }
};

/// Curvature samples kappa(theta_j) = 1 / (S_thetatheta + S).
struct CurvatureField {
  Field field;

  CurvatureField() = default;
  explicit CurvatureField(Field f) : field(std::move(f)) {}

  const ThetaGrid& grid() const { return field.grid; }
  std::size_t size() const { return field.size(); }
};

/// Closed plane curve sampled by normal angle; point n connects to point 0.
/// Counterclockwise when produced from a strictly convex support field.
struct PlaneCurve {
  std::vector<double> x, y;

  std::size_t size() const { return x.size(); }
};

SupportField circle(const ThetaGrid& grid, double radius);
/// radius + eps * cos(k * theta)
SupportField perturbed_circle(const ThetaGrid& grid, double radius, int k, double eps);

/// The radius-of-curvature field S_thetatheta + S.
Field curvature_radius(const SupportField& S);

/// min over the grid of S_thetatheta + S; positive means strictly convex.
double convexity_margin(const SupportField& S);

/// Pointwise 1 / (S_thetatheta + S). Throws DegenerateCurvatureError (with
/// the worst margin and its location) unless the margin exceeds kTolConvex.
CurvatureField curvature_of(const SupportField& S);

/// Reconstruct (x, y) = (S cos - S_t sin, S sin + S_t cos).
PlaneCurve curve_of(const SupportField& S);

/// Support function of the curve's convex hull, resampled on `grid` by
/// max-projection. Requires a strictly convex counterclockwise polygon;
/// throws NonConvexInputError otherwise.
SupportField support_of(const PlaneCurve& c, const ThetaGrid& grid);

/// Perimeter: integral of S dtheta.
double length_of(const SupportField& S);

/// Enclosed area: 1/2 integral of S (S_thetatheta + S) dtheta. Throws
/// DegenerateCurvatureError for non-convex input.
double area_of(const SupportField& S);

/// S + a cos(theta) + b sin(theta): translates the curve by (a, b).
SupportField translate(const SupportField& S, double a, double b);

}  // namespace curveflow
