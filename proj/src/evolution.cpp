// IMEX time stepping for the support-function flow. State advances in
// Fourier space: the stiff constant-coefficient operator (symbol (k^2-1)^2,
// plus beta*k^2 when anisotropic forcing is folded in) is inverted exactly
// per mode, while the forcing field is evaluated pointwise in physical space
// and transformed.

#include "curveflow/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "curveflow/diagnostics.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"

namespace curveflow {

namespace {

class ImexStepper {
 public:
  ImexStepper(const ThetaGrid& grid, const ForcingSpec& spec, double dt, Scheme scheme)
      : grid_(grid), spec_(spec), dt_(dt), scheme_(scheme) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

    if (const auto* aniso = std::get_if<Anisotropic>(&spec.form())) {
      folded_beta_ = aniso->beta;
      explicit_alpha_ = aniso->alpha;
      folded_aniso_ = true;
    }
    needs_kappa_ = folded_aniso_ || spec.references(ForcingVar::kappa);
    needs_s_theta_ = spec.references(ForcingVar::s_theta);
    needs_s_tt_ = needs_kappa_ || (!folded_aniso_ && spec.references(ForcingVar::s_thetatheta));

    const std::size_t bins = grid.size() / 2 + 1;
    prop_.resize(bins);
    forc_.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
      const double k2 = static_cast<double>(k) * static_cast<double>(k);
      const double lam = (k2 - 1.0) * (k2 - 1.0) + folded_beta_ * k2;
      if (scheme == Scheme::imex1) {
        prop_[k] = 1.0 / (1.0 + dt * lam);
        forc_[k] = dt * prop_[k];
      } else {
        const double denom = 1.0 + 0.5 * dt * lam;
        prop_[k] = (1.0 - 0.5 * dt * lam) / denom;
        forc_[k] = dt / denom;
      }
    }
  }

  /// Advance one step. Throws BlowupError on a non-finite result and
  /// EvalError when the forcing cannot be evaluated on the current state.
  SupportField advance(const SupportField& S) {
    const auto& fft = grid_.fft();
    Spectrum s_hat = fft.forward(S.field.values);
    Spectrum f_hat = fft.forward(explicit_forcing(S).values);

    if (scheme_ == Scheme::imex2) {
      if (!has_history_) f_prev_ = f_hat;
      Spectrum combo(f_hat.bins());
      kernels::axpby(combo.re, 1.5, f_hat.re, -0.5, f_prev_.re);
      kernels::axpby(combo.im, 1.5, f_hat.im, -0.5, f_prev_.im);
      f_prev_ = std::move(f_hat);
      has_history_ = true;
      f_hat = std::move(combo);
    }

    kernels::cmul_real(s_hat.re, s_hat.im, prop_);
    kernels::cmul_real(f_hat.re, f_hat.im, forc_);
    kernels::add(s_hat.re, s_hat.re, f_hat.re);
    kernels::add(s_hat.im, s_hat.im, f_hat.im);

    Field out(grid_);
    fft.inverse(s_hat, out.values);
    if (!kernels::all_finite(out.values))
      throw BlowupError("time step produced a non-finite state", dt_);
    return SupportField(std::move(out));
  }

 private:
  Field explicit_forcing(const SupportField& S) {
    ForcingContext ctx;
    ctx.grid = grid_;
    ctx.s = S.field;
    if (needs_s_theta_) ctx.s_theta = differentiate(S.field, 1);
    if (needs_s_tt_) {
      ctx.s_thetatheta = differentiate(S.field, 2);
      if (needs_kappa_) {
        Field radius(grid_);
        kernels::add(radius.values, ctx.s_thetatheta->values, S.field.values);
        if (kernels::min_value(radius.values) > kTolConvex) {
          Field kappa(grid_);
          kernels::reciprocal(kappa.values, radius.values);
          ctx.kappa = std::move(kappa);
        }
      }
    }
    if (folded_aniso_) {
      if (!ctx.kappa)
        throw EvalError(
            "anisotropic forcing needs curvature but the state is not strictly convex");
      Field f(grid_);
      kernels::mul(f.values, ctx.kappa->values, ctx.kappa->values);
      kernels::scale(f.values, f.values, explicit_alpha_);
      return f;
    }
    return eval_forcing(spec_, ctx);
  }

  ThetaGrid grid_;
  ForcingSpec spec_;
  double dt_;
  Scheme scheme_;
  bool folded_aniso_ = false;
  double folded_beta_ = 0.0;
  double explicit_alpha_ = 0.0;
  bool needs_kappa_ = false;
  bool needs_s_theta_ = false;
  bool needs_s_tt_ = false;
  std::vector<double> prop_, forc_;
  bool has_history_ = false;
  Spectrum f_prev_;
};

}  // namespace

SupportField step(const SupportField& S, const ForcingSpec& spec, double dt, Scheme scheme) {
  ImexStepper stepper(S.grid(), spec, dt, scheme);
  return stepper.advance(S);
}

Trajectory evolve(const SupportField& S0, const ForcingSpec& spec, const FlowConfig& cfg,
                  std::span<const StepMonitor> monitors) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (cfg.t_end < 0.0) throw std::invalid_argument("evolve: t_end must be >= 0");
  if (cfg.record_every < 1) throw std::invalid_argument("evolve: record_every must be >= 1");

  Trajectory traj;
  const auto steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));

  auto record = [&](double t, const SupportField& S) {
    traj.times.push_back(t);
    traj.states.push_back(S);
    traj.records.push_back(make_record(t, S, spec, cfg.energy));
  };

  SupportField S = S0;
  record(0.0, S);

  const double margin0 = convexity_margin(S0);
  if (margin0 <= 0.0 && cfg.convexity_policy == ConvexityPolicy::abort) {
    traj.termination = Termination::convexity_lost;
    traj.termination_time = 0.0;
    return traj;
  }

  ImexStepper stepper(S0.grid(), spec, cfg.dt, cfg.scheme);

  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    SupportField next;
    try {
      next = stepper.advance(S);
    } catch (const BlowupError&) {
      if (traj.times.back() != t - cfg.dt) record(t - cfg.dt, S);
      traj.termination = Termination::blowup;
      traj.termination_time = t;
      return traj;
    } catch (const EvalError&) {
      // forcing not evaluable on the current state: either curvature
      // degenerated (under the warn policy) or the forcing overflowed
      if (traj.times.back() != t - cfg.dt) record(t - cfg.dt, S);
      traj.termination =
          convexity_margin(S) <= 0.0 ? Termination::convexity_lost : Termination::blowup;
      traj.termination_time = t - cfg.dt;
      return traj;
    }
    S = std::move(next);

    const double margin = convexity_margin(S);
    for (const auto& monitor : monitors)
      monitor(StepEvent{i, t, S, margin});

    bool due = (i % cfg.record_every == 0) || i == steps;
    bool aborting = false;
    if (margin <= 0.0 && cfg.convexity_policy == ConvexityPolicy::abort) {
      traj.termination = Termination::convexity_lost;
      traj.termination_time = t;
      due = true;
      aborting = true;
    }
    if (due) record(t, S);
    if (aborting) return traj;
  }
  traj.termination = Termination::completed;
  traj.termination_time = static_cast<double>(steps) * cfg.dt;
  return traj;
}

CurvatureField curvature_flow_step(const CurvatureField& kappa, const CurvatureFlowParams& params,
                                   double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("curvature_flow_step: dt must be positive");
  if (params.xi < 0.0) throw std::invalid_argument("curvature_flow_step: xi must be >= 0");
  const double min_kappa = kernels::min_value(kappa.field.values);
  if (min_kappa <= 0.0) {
    const std::size_t j = kernels::min_index(kappa.field.values);
    throw DegenerateCurvatureError("curvature_flow_step: kappa must be positive", min_kappa,
                                   kappa.grid().theta(j), j);
  }

  // kappa_ss with d_s = kappa d_theta
  const Field kappa_theta = differentiate(kappa.field, 1);
  Field inner(kappa.grid());
  kernels::mul(inner.values, kappa.field.values, kappa_theta.values);
  Field kappa_ss = differentiate(inner, 1);
  kernels::mul(kappa_ss.values, kappa.field.values, kappa_ss.values);

  const Field forcing = eval_forcing(params.forcing, ForcingContext::from_curvature(kappa));

  Field out = kappa.field;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double k = kappa.field.values[j];
    const double rhs =
        -(2.0 * k - kappa_ss.values[j] + 4.0 * params.xi * k * k * k) + forcing.values[j];
    out.values[j] = k + dt * rhs;
  }
  if (!kernels::all_finite(out.values))
    throw Error("curvature_flow_step: non-finite state after step");
  const double new_min = kernels::min_value(out.values);
  if (new_min <= 0.0) {
    const std::size_t j = kernels::min_index(out.values);
    throw DegenerateCurvatureError("curvature_flow_step: kappa became non-positive", new_min,
                                   kappa.grid().theta(j), j);
  }
  return CurvatureField(std::move(out));
}

}  // namespace curveflow
