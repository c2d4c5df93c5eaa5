#pragma once

#include <cstddef>
#include <vector>

#include "curveflow/diagnostics_types.hpp"
#include "curveflow/evolution.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

/// Bending energy integral(kappa^2 + grad_weight*(d_s kappa)^2 + xi*kappa^4) ds
/// with ds = (S_tt + S) dtheta and d_s kappa = kappa * d_theta kappa.
/// Throws DegenerateCurvatureError unless S is strictly convex.
double bending_energy(const SupportField& S, const EnergyParams& params);

struct EnergySample {
  double t;
  double energy;
  double dEdt;  // centered differences; one-sided at the ends
};

/// Energy per trajectory snapshot plus its discrete time derivative.
std::vector<EnergySample> energy_series(const Trajectory& traj, const EnergyParams& params);

/// Pointwise type of the Monge-Ampere form: discriminant S^2 - 1 against
/// kTolClass. The forcing offset D = F - 1 is reported alongside; when F
/// cannot be evaluated on S the offset is zero-filled and flagged.
MAClassification classify_monge_ampere(const SupportField& S, const ForcingSpec& spec);

// Pointwise check of (S_tttt + 2 S_tt + S)_tt >= F'(S) (S_tt + S).
struct SufficientConditionReport {
  std::vector<bool> pointwise;
  bool holds_everywhere;
  double worst_margin;       // min over the grid of LHS - RHS
  std::size_t worst_index;
};

/// Throws UnsupportedDerivativeError when the forcing has no pointwise dF/dS.
SufficientConditionReport convexity_sufficient_condition(const SupportField& S,
                                                         const ForcingSpec& spec);

/// Scalar diagnostics of one state. Quantities that need strict convexity
/// (energy, area) are NaN when the state is degenerate, which only happens
/// under the warn policy or at a collapse endpoint.
DiagnosticsRecord make_record(double t, const SupportField& S, const ForcingSpec& spec,
                              const EnergyParams& params);

}  // namespace curveflow
