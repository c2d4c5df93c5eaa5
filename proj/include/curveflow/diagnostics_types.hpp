#pragma once

#include <cstdint>
#include <vector>

#include "curveflow/grid.hpp"

namespace curveflow {

// Parameters of the bending energy integral(kappa^2 + w*(d_s kappa)^2 +
// xi*kappa^4) ds. grad_weight 1/2 and 1 select the two stated variants;
// the solver-facing default is 1.
struct EnergyParams {
  double xi = 0.0;
  double grad_weight = 1.0;
};

/// Classification tolerance for the type discriminant.
inline constexpr double kTolClass = 1e-12;

enum class PointType : std::uint8_t { elliptic, degenerate, hyperbolic };
enum class GlobalType : std::uint8_t { elliptic, degenerate, hyperbolic, mixed };

// Type classification of the second-order-in-time Monge-Ampere form with
// coefficients A = 1, B = S^2, C = -1, D = F - 1: the discriminant
// AB - C^2 = S^2 - 1 decides the type pointwise.
struct MAClassification {
  Field discriminant;               // S^2 - 1
  std::vector<PointType> verdicts;  // per grid point
  GlobalType global;
  double min_discriminant;
  Field forcing_offset;        // D = F - 1
  bool forcing_evaluated;      // false when F could not be evaluated on S
};

// Per-time-sample scalar diagnostics.
struct DiagnosticsRecord {
  double t;
  double energy;
  double l2_norm;
  double convexity_margin;
  double hyperbolicity_margin;  // min(S^2 - 1)
  bool forcing_bound_ok;
  double length;
  double area;
  double steady_residual_norm;  // L2 norm of S_tttt + 2 S_tt + S - F(S)
};

}  // namespace curveflow
