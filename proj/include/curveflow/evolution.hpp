#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "curveflow/diagnostics_types.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

// Time integration of d_t S = -(S_tttt + 2 S_tt + S) + F(S). The linear
// operator is diagonal per Fourier mode (symbol -(k^2-1)^2) and is treated
// implicitly; the forcing is explicit.
//
//   imex1: backward Euler on the linear part, forward Euler on F.
//   imex2: trapezoidal linear part, midpoint-extrapolated forcing
//          (3/2 F^n - 1/2 F^{n-1}; the first step uses F^0 twice).
//
// For Anisotropic forcing the beta*S_thetatheta term is linear in S and is
// folded into the implicit symbol; only the alpha*kappa^2 part stays
// explicit.
enum class Scheme { imex1, imex2 };

enum class ConvexityPolicy { abort, warn };

enum class Termination { completed, convexity_lost, blowup };

struct FlowConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::imex2;
  std::size_t record_every = 10;
  ConvexityPolicy convexity_policy = ConvexityPolicy::abort;
  std::size_t n = 256;
  EnergyParams energy{};
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SupportField> states;
  std::vector<DiagnosticsRecord> records;
  Termination termination = Termination::completed;
  double termination_time = 0.0;

  const SupportField& final_state() const { return states.back(); }
};

struct StepEvent {
  std::size_t step;
  double t;
  const SupportField& state;
  double convexity_margin;
};
using StepMonitor = std::function<void(const StepEvent&)>;

/// One history-free IMEX step (imex2 degenerates to F^n in place of the
/// extrapolated forcing). Throws BlowupError if the state leaves the finite
/// range.
SupportField step(const SupportField& S, const ForcingSpec& spec, double dt, Scheme scheme);

/// March to cfg.t_end (rounded to whole steps), recording diagnostics every
/// cfg.record_every steps plus the initial and final states. Early
/// termination is reported through Trajectory::termination rather than by
/// throwing.
Trajectory evolve(const SupportField& S0, const ForcingSpec& spec, const FlowConfig& cfg,
                  std::span<const StepMonitor> monitors = {});

// Curvature-intrinsic gradient flow d_t kappa = -(2 kappa - kappa_ss +
// 4 xi kappa^3) + F, with d_s = kappa d_theta on the normal-angle
// parametrization. Stepped explicitly (forward Euler).
struct CurvatureFlowParams {
  double xi = 0.0;
  ForcingSpec forcing = ForcingSpec::zero();
};

/// One explicit step; throws DegenerateCurvatureError if kappa leaves the
/// positive range.
CurvatureField curvature_flow_step(const CurvatureField& kappa, const CurvatureFlowParams& params,
                                   double dt);

}  // namespace curveflow
