#include "curveflow/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"

namespace curveflow {

SupportField circle(const ThetaGrid& grid, double radius) {
  return SupportField(constant_field(grid, radius));
}

SupportField perturbed_circle(const ThetaGrid& grid, double radius, int k, double eps) {
  Field f(grid);
  for (std::size_t j = 0; j < grid.size(); ++j)
    f.values[j] = radius + eps * std::cos(k * grid.theta(j));
  return SupportField(std::move(f));
}

Field curvature_radius(const SupportField& S) {
  Field r = differentiate(S.field, 2);
  kernels::add(r.values, r.values, S.field.values);
  return r;
}

double convexity_margin(const SupportField& S) {
  const Field r = curvature_radius(S);
  return kernels::min_value(r.values);
}

namespace {

[[noreturn]] void throw_degenerate(const char* op, const Field& radius) {
  const std::size_t j = kernels::min_index(radius.values);
  const double margin = radius.values[j];
  std::ostringstream msg;
  msg << op << ": curve is not strictly convex (min S_tt + S = " << margin << " at theta = "
      << radius.grid.theta(j) << ")";
  throw DegenerateCurvatureError(msg.str(), margin, radius.grid.theta(j), j);
}

}  // namespace

CurvatureField curvature_of(const SupportField& S) {
  Field radius = curvature_radius(S);
  if (kernels::min_value(radius.values) <= kTolConvex) throw_degenerate("curvature_of", radius);
  Field kappa(S.grid());
  kernels::reciprocal(kappa.values, radius.values);
  return CurvatureField(std::move(kappa));
}

PlaneCurve curve_of(const SupportField& S) {
  const Field st = differentiate(S.field, 1);
  const auto theta = S.grid().theta();
  PlaneCurve c;
  const std::size_t n = S.size();
  c.x.resize(n);
  c.y.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double ct = std::cos(theta[j]);
    const double snt = std::sin(theta[j]);
    c.x[j] = S.field.values[j] * ct - st.values[j] * snt;
    c.y[j] = S.field.values[j] * snt + st.values[j] * ct;
  }
  return c;
}

SupportField support_of(const PlaneCurve& c, const ThetaGrid& grid) {
  const std::size_t m = c.size();
  if (m < 3) throw NonConvexInputError("support_of: need at least 3 points");

  // Strict convexity + orientation: every consecutive edge pair must turn
  // left (positive cross product).
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t i1 = (i + 1) % m;
    const std::size_t i2 = (i + 2) % m;
    const double ax = c.x[i1] - c.x[i];
    const double ay = c.y[i1] - c.y[i];
    const double bx = c.x[i2] - c.x[i1];
    const double by = c.y[i2] - c.y[i1];
    const double cross = ax * by - ay * bx;
    if (!(cross > 0.0)) {
      std::ostringstream msg;
      msg << "support_of: curve is not strictly convex counterclockwise"
          << " (cross product " << cross << " at vertex " << i1 << ")";
      throw NonConvexInputError(msg.str());
    }
  }

  Field s(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double ux = std::cos(grid.theta(j));
    const double uy = std::sin(grid.theta(j));
    double best = c.x[0] * ux + c.y[0] * uy;
    for (std::size_t i = 1; i < m; ++i) {
      const double p = c.x[i] * ux + c.y[i] * uy;
      if (p > best) best = p;
    }
    s.values[j] = best;
  }
  return SupportField(std::move(s));
}

double length_of(const SupportField& S) { return integrate(S.field); }

double area_of(const SupportField& S) {
  Field radius = curvature_radius(S);
  if (kernels::min_value(radius.values) <= kTolConvex) throw_degenerate("area_of", radius);
  Field integrand(S.grid());
  kernels::mul(integrand.values, S.field.values, radius.values);
  return 0.5 * integrate(integrand);
}

SupportField translate(const SupportField& S, double a, double b) {
  Field f = S.field;
  const auto theta = S.grid().theta();
  for (std::size_t j = 0; j < f.size(); ++j)
    f.values[j] += a * std::cos(theta[j]) + b * std::sin(theta[j]);
  return SupportField(std::move(f));
}

}  // namespace curveflow
