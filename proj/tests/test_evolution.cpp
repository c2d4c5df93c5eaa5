// Time integration against closed-form mode solutions: per-mode decay laws,
// neutral-mode exactness, scheme convergence orders, and the termination
// paths.

#include <cmath>
#include <random>

#include "curveflow/diagnostics.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/evolution.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace curveflow;

namespace {

double mode_amp(const SupportField& S, std::size_t k) {
  return mode_amplitudes(S.field)[k];
}

Trajectory run_flow(const SupportField& S0, const ForcingSpec& spec, double dt, double t_end,
                    Scheme scheme = Scheme::imex2, std::size_t record_every = 100) {
  FlowConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.scheme = scheme;
  cfg.record_every = record_every;
  return evolve(S0, spec, cfg);
}

}  // namespace

TEST_SUITE_BEGIN("evolution");

TEST_CASE("imex1 constant mode is backward Euler on dS/dt = -S") {
  const ThetaGrid grid = make_grid(64);
  const double dt = 0.05;
  const SupportField next = step(circle(grid, 2.0), ForcingSpec::zero(), dt, Scheme::imex1);
  for (double v : next.field.values) CHECK(std::fabs(v - 2.0 / (1.0 + dt)) <= 1e-14);
}

TEST_CASE("neutral translation mode is untouched for any dt") {
  const ThetaGrid grid = make_grid(64);
  const SupportField S(field_from(grid, [](double t) { return std::cos(t); }));
  for (const double dt : {1e-4, 0.1, 2.0}) {
    for (const Scheme scheme : {Scheme::imex1, Scheme::imex2}) {
      const SupportField next = step(S, ForcingSpec::zero(), dt, scheme);
      CHECK(testutil::max_abs_diff(S.field.values, next.field.values) < 1e-14);
    }
  }
}

TEST_CASE("mode-3 decay matches the exact rate e^{-64 t}") {
  const ThetaGrid grid = make_grid(128);
  const SupportField S0 = perturbed_circle(grid, 2.0, 3, 0.1);
  const Trajectory traj = run_flow(S0, ForcingSpec::zero(), 1e-5, 0.05);
  REQUIRE(traj.termination == Termination::completed);

  const double measured = mode_amp(traj.final_state(), 3);
  const double expected = 0.1 * std::exp(-64.0 * 0.05);
  CHECK(std::fabs(measured - expected) / expected <= 1e-4);
}

TEST_CASE("linear exactness across modes (imex2, dt = 1e-4, t = 0.1)") {
  const ThetaGrid grid = make_grid(128);
  std::vector<testutil::Mode> modes = {{2, 0.05, 0.02}, {3, -0.03, 0.01}, {4, 0.02, -0.02}};
  const SupportField S0(testutil::field_of_modes(grid, 2.0, modes));
  const ModeSpectrum before = mode_amplitudes(S0.field);

  const Trajectory traj = run_flow(S0, ForcingSpec::zero(), 1e-4, 0.1);
  const ModeSpectrum after = mode_amplitudes(traj.final_state().field);

  for (const std::size_t k : {0u, 2u, 3u, 4u}) {
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    const double rate = (k2 - 1.0) * (k2 - 1.0);
    const double expected = before[k] * std::exp(-rate * 0.1);
    CHECK(std::fabs(after[k] - expected) <= 1e-3 * expected);
  }
}

TEST_CASE("proportional forcing on a circle follows dS/dt = (c-1) S") {
  const ThetaGrid grid = make_grid(64);

  SUBCASE("c = 0.5 decays to 2 e^{-0.5}") {
    const Trajectory traj =
        run_flow(circle(grid, 2.0), ForcingSpec(Proportional{0.5}), 1e-3, 1.0);
    const double expected = 2.0 * std::exp(-0.5);
    for (double v : traj.final_state().field.values)
      CHECK(std::fabs(v - expected) / expected <= 1e-4);
  }

  SUBCASE("c = 1 is stationary to rounding") {
    const Trajectory traj = run_flow(circle(grid, 2.0), ForcingSpec(Proportional{1.0}), 1e-3, 1.0);
    for (double v : traj.final_state().field.values) CHECK(std::fabs(v - 2.0) < 1e-10);
  }
}

TEST_CASE("c = 1 mode-2 decay rate is the linearized -8, within 1%") {
  const ThetaGrid grid = make_grid(128);
  const SupportField S0 = perturbed_circle(grid, 2.0, 2, 0.05);
  const Trajectory traj =
      run_flow(S0, ForcingSpec(Proportional{1.0}), 1e-3, 2.0, Scheme::imex2, 100);

  // least-squares slope of log(amplitude) over the recorded samples
  double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double amp = mode_amp(traj.states[i], 2);
    if (amp < 1e-12) break;  // below measurable range
    const double t = traj.times[i];
    const double y = std::log(amp);
    sum_t += t;
    sum_y += y;
    sum_tt += t * t;
    sum_ty += t * y;
    ++m;
  }
  REQUIRE(m >= 5);
  const double md = static_cast<double>(m);
  const double slope = (md * sum_ty - sum_t * sum_y) / (md * sum_tt - sum_t * sum_t);
  CHECK(std::fabs(slope + 8.0) <= 0.08);
}

TEST_CASE("time-step convergence orders on the constant-mode problem") {
  const ThetaGrid grid = make_grid(64);
  const ForcingSpec spec(Proportional{0.5});
  const double t_end = 0.5;
  const double exact = 2.0 * std::exp(-0.5 * t_end);

  auto error_at = [&](double dt, Scheme scheme) {
    const Trajectory traj = run_flow(circle(grid, 2.0), spec, dt, t_end, scheme);
    return std::fabs(traj.final_state().field.values[0] - exact);
  };

  const double e1_coarse = error_at(2e-3, Scheme::imex1);
  const double e1_fine = error_at(1e-3, Scheme::imex1);
  CHECK(e1_coarse / e1_fine > 1.7);
  CHECK(e1_coarse / e1_fine < 2.3);

  const double e2_coarse = error_at(2e-3, Scheme::imex2);
  const double e2_fine = error_at(1e-3, Scheme::imex2);
  CHECK(e2_coarse / e2_fine > 3.4);
  CHECK(e2_coarse / e2_fine < 4.6);
}

TEST_CASE("convexity margin stays above min(initial, steady) in benign scenarios") {
  const ThetaGrid grid = make_grid(128);

  SUBCASE("proportional c = 1 from a perturbed circle") {
    const SupportField S0 = perturbed_circle(grid, 2.0, 2, 0.05);
    const double floor = std::min(convexity_margin(S0), 2.0) - 1e-6;
    const Trajectory traj =
        run_flow(S0, ForcingSpec(Proportional{1.0}), 1e-3, 2.0, Scheme::imex2, 10);
    for (const auto& rec : traj.records) CHECK(rec.convexity_margin >= floor);
  }

  SUBCASE("positive constant forcing from a perturbed circle") {
    const SupportField S0 = perturbed_circle(grid, 2.0, 2, 0.05);
    // steady state is the circle of radius 2.5; margins along the way stay
    // above the initial margin
    const double floor = std::min(convexity_margin(S0), 2.5) - 1e-6;
    const Trajectory traj =
        run_flow(S0, ForcingSpec(Constant{2.5}), 1e-3, 2.0, Scheme::imex2, 10);
    for (const auto& rec : traj.records) CHECK(rec.convexity_margin >= floor);
  }
}

TEST_CASE("records carry time stamps, cadence, and the final state") {
  const ThetaGrid grid = make_grid(64);
  const Trajectory traj =
      run_flow(circle(grid, 2.0), ForcingSpec::zero(), 1e-3, 0.05, Scheme::imex2, 10);
  REQUIRE(traj.times.size() == traj.states.size());
  REQUIRE(traj.times.size() == traj.records.size());
  CHECK(traj.times.front() == 0.0);
  CHECK(std::fabs(traj.times.back() - 0.05) <= 1e-12);
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
  // 0, every 10th of 50 steps, final
  CHECK(traj.times.size() == 6);
}

TEST_CASE("destabilizing S_thetatheta forcing loses convexity and aborts") {
  const ThetaGrid grid = make_grid(64);
  // F = -12 S_tt makes mode 2 grow at rate -9 + 48 = 39 while the mean
  // shrinks; the margin crosses zero near t = 0.105
  const ForcingSpec spec = parse_forcing("0 - 12*S_thetatheta");
  const SupportField S0 = perturbed_circle(grid, 2.0, 2, 0.01);

  FlowConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 0.2;
  cfg.record_every = 100;
  const Trajectory traj = evolve(S0, spec, cfg);
  CHECK(traj.termination == Termination::convexity_lost);
  CHECK(traj.termination_time > 0.05);
  CHECK(traj.termination_time < 0.2);

  cfg.convexity_policy = ConvexityPolicy::warn;
  const Trajectory warned = evolve(S0, spec, cfg);
  CHECK(warned.termination == Termination::completed);
  CHECK(warned.records.back().convexity_margin < 0.0);
}

TEST_CASE("violent polynomial forcing blows up and is reported") {
  const ThetaGrid grid = make_grid(64);
  FlowConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 5.0;
  cfg.record_every = 1000;
  const Trajectory traj = evolve(circle(grid, 2.0), parse_forcing("S^9"), cfg);
  CHECK(traj.termination == Termination::blowup);
  CHECK(traj.termination_time < 5.0);
  // every recorded state stayed finite
  for (const auto& S : traj.states)
    for (double v : S.field.values) CHECK(std::isfinite(v));
}

TEST_CASE("non-convex start with abort policy terminates immediately") {
  const ThetaGrid grid = make_grid(64);
  const SupportField bad = perturbed_circle(grid, 0.1, 2, 1.0);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  const Trajectory traj = evolve(bad, ForcingSpec::zero(), cfg);
  CHECK(traj.termination == Termination::convexity_lost);
  CHECK(traj.termination_time == 0.0);
  CHECK(traj.states.size() == 1);
}

TEST_CASE("step monitors observe every step") {
  const ThetaGrid grid = make_grid(64);
  std::size_t calls = 0;
  double last_t = -1.0;
  std::vector<StepMonitor> monitors;
  monitors.push_back([&](const StepEvent& ev) {
    ++calls;
    CHECK(ev.t > last_t);
    last_t = ev.t;
    CHECK(ev.convexity_margin > 0.0);
  });
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.02;
  evolve(circle(grid, 2.0), ForcingSpec::zero(), cfg, monitors);
  CHECK(calls == 20);
}

TEST_CASE("curvature flow: constant-field ODE and stationary forcing") {
  const ThetaGrid grid = make_grid(64);

  // kappa = 0.5, xi = 0, F = 0: one explicit step is exactly forward Euler
  const CurvatureField k0(constant_field(grid, 0.5));
  CurvatureFlowParams params;
  const double dt = 1e-3;
  const CurvatureField k1 = curvature_flow_step(k0, params, dt);
  for (double v : k1.field.values) CHECK(std::fabs(v - 0.5 * (1.0 - 2.0 * dt)) <= 1e-15);

  // stationary when F = 2 kappa* + 4 xi kappa*^3
  const double kstar = 0.8, xi = 0.3;
  CurvatureFlowParams stat;
  stat.xi = xi;
  stat.forcing = ForcingSpec(Constant{2.0 * kstar + 4.0 * xi * kstar * kstar * kstar});
  const CurvatureField ks =
      curvature_flow_step(CurvatureField(constant_field(grid, kstar)), stat, 0.1);
  for (double v : ks.field.values) CHECK(std::fabs(v - kstar) <= 1e-14);

  // kappa = 1, xi = 0.25, F = 0: rhs = -(2 + 1) = -3
  CurvatureFlowParams p3;
  p3.xi = 0.25;
  const CurvatureField k3 =
      curvature_flow_step(CurvatureField(constant_field(grid, 1.0)), p3, dt);
  for (double v : k3.field.values) CHECK(std::fabs(v - (1.0 - 3.0 * dt)) <= 1e-14);
}

TEST_CASE("curvature flow long-run decay kappa(t) = 0.5 e^{-2t}") {
  const ThetaGrid grid = make_grid(64);
  CurvatureField kappa(constant_field(grid, 0.5));
  CurvatureFlowParams params;
  const double dt = 1e-4;
  for (int i = 0; i < 10000; ++i) kappa = curvature_flow_step(kappa, params, dt);
  const double expected = 0.5 * std::exp(-2.0);
  for (double v : kappa.field.values) CHECK(std::fabs(v - expected) <= 1e-4);
}

TEST_CASE("curvature flow rejects non-positive curvature") {
  const ThetaGrid grid = make_grid(64);
  CurvatureFlowParams params;
  CHECK_THROWS_AS(curvature_flow_step(CurvatureField(constant_field(grid, -1.0)), params, 1e-3),
                  DegenerateCurvatureError);
  // a large step drives kappa = 0.5 through zero: 0.5 (1 - 2 dt) < 0 at dt = 1
  CHECK_THROWS_AS(curvature_flow_step(CurvatureField(constant_field(grid, 0.5)), params, 1.0),
                  DegenerateCurvatureError);
}

TEST_SUITE_END();
