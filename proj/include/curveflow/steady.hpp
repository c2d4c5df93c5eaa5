#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

// Newton solver for the steady equation S_tttt + 2 S_tt + S = F(S).
// The Jacobian acts matrix-free through directional finite differences and
// the linear solves run GMRES preconditioned per Fourier mode by
// 1 / ((k^2-1)^2 + 1); the +1 shift keeps the k = 0, +-1 bins regular.
// The neutral translation modes (and the free mean when F' = 1 at k = 0)
// are removed by pinning: pinned modes are projected out of every Krylov
// vector and re-imposed on each iterate.

enum class Pinning { fix_mean, fix_translation, both };

struct SteadyOptions {
  std::size_t max_iters = 50;
  double residual_tol = 1e-10;  // max-norm
  Pinning pinning = Pinning::fix_translation;
  /// Mean imposed when pinning includes the mean; nullopt keeps the initial
  /// iterate's mean.
  std::optional<double> fixed_mean;
  double fd_epsilon = 1e-7;
  std::size_t max_krylov = 200;  // per Newton step
};

struct SteadyResult {
  SupportField S_inf;
  double residual_norm = 0.0;  // max-norm at S_inf
  std::size_t iterations = 0;
  bool converged = false;
  double convexity_margin = 0.0;

  // telemetry
  std::vector<double> residual_history;  // max-norm per Newton iterate
  std::size_t total_krylov_iters = 0;
  bool linear_stagnation = false;
};

/// Pointwise steady residual R(S) = S_tttt + 2 S_tt + S - F(S).
Field residual(const SupportField& S, const ForcingSpec& spec);

SteadyResult solve_steady(const SupportField& S_init, const ForcingSpec& spec,
                          const SteadyOptions& opts);

// Parameter sweep with warm starts: each solve seeds from the previous
// converged solution. Per-item failures are recorded and the sweep continues.
struct SweepEntry {
  double parameter;
  std::optional<SteadyResult> result;
  std::string error;
};

std::vector<SweepEntry> sweep(const std::function<ForcingSpec(double)>& family,
                              std::span<const double> parameters, const SupportField& S_init,
                              const SteadyOptions& opts);

}  // namespace curveflow
