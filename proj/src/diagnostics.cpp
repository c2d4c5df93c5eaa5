#include "curveflow/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"
#include "curveflow/steady.hpp"

namespace curveflow {

double bending_energy(const SupportField& S, const EnergyParams& params) {
  if (params.xi < 0.0) throw std::invalid_argument("bending_energy: xi must be >= 0");
  if (!(params.grad_weight > 0.0))
    throw std::invalid_argument("bending_energy: grad_weight must be positive");

  const CurvatureField kappa = curvature_of(S);  // throws when degenerate
  const Field radius = curvature_radius(S);      // ds = radius dtheta
  const Field kappa_theta = differentiate(kappa.field, 1);

  Field integrand(S.grid());
  const std::size_t n = S.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double k = kappa.field.values[j];
    const double ds_kappa = k * kappa_theta.values[j];  // d_s = kappa d_theta
    const double density =
        k * k + params.grad_weight * ds_kappa * ds_kappa + params.xi * k * k * k * k;
    integrand.values[j] = density * radius.values[j];
  }
  return integrate(integrand);
}

std::vector<EnergySample> energy_series(const Trajectory& traj, const EnergyParams& params) {
  const std::size_t m = traj.times.size();
  std::vector<EnergySample> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i].t = traj.times[i];
    out[i].energy = bending_energy(traj.states[i], params);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (m < 2) {
      out[i].dEdt = 0.0;
    } else if (i == 0) {
      out[i].dEdt = (out[1].energy - out[0].energy) / (out[1].t - out[0].t);
    } else if (i + 1 == m) {
      out[i].dEdt = (out[i].energy - out[i - 1].energy) / (out[i].t - out[i - 1].t);
    } else {
      out[i].dEdt = (out[i + 1].energy - out[i - 1].energy) / (out[i + 1].t - out[i - 1].t);
    }
  }
  return out;
}

MAClassification classify_monge_ampere(const SupportField& S, const ForcingSpec& spec) {
  MAClassification cls;
  cls.discriminant = Field(S.grid());
  kernels::mul(cls.discriminant.values, S.field.values, S.field.values);
  for (double& v : cls.discriminant.values) v -= 1.0;

  const std::size_t n = S.size();
  cls.verdicts.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = cls.discriminant.values[j];
    cls.verdicts[j] = d > kTolClass    ? PointType::hyperbolic
                      : d < -kTolClass ? PointType::elliptic
                                       : PointType::degenerate;
  }
  cls.min_discriminant = kernels::min_value(cls.discriminant.values);

  bool any_h = false, any_e = false, any_d = false;
  for (const PointType v : cls.verdicts) {
    any_h |= v == PointType::hyperbolic;
    any_e |= v == PointType::elliptic;
    any_d |= v == PointType::degenerate;
  }
  if (any_h && !any_e && !any_d)
    cls.global = GlobalType::hyperbolic;
  else if (any_e && !any_h && !any_d)
    cls.global = GlobalType::elliptic;
  else if (any_d && !any_h && !any_e)
    cls.global = GlobalType::degenerate;
  else
    cls.global = GlobalType::mixed;

  cls.forcing_offset = Field(S.grid());
  try {
    const Field f = eval_forcing(spec, ForcingContext::from_support(S));
    for (std::size_t j = 0; j < n; ++j) cls.forcing_offset.values[j] = f.values[j] - 1.0;
    cls.forcing_evaluated = true;
  } catch (const EvalError&) {
    cls.forcing_evaluated = false;
  }
  return cls;
}

SufficientConditionReport convexity_sufficient_condition(const SupportField& S,
                                                         const ForcingSpec& spec) {
  const ForcingContext ctx = ForcingContext::from_support(S);
  const Field fprime = forcing_s_derivative(spec, ctx);  // throws when unsupported

  // LHS = (S_tttt + 2 S_tt + S)_tt
  Field inner = apply_linear_operator(S.field);
  kernels::scale(inner.values, inner.values, -1.0);
  const Field lhs = differentiate(inner, 2);

  // RHS = F'(S) (S_tt + S)
  Field rhs(S.grid());
  kernels::mul(rhs.values, fprime.values, curvature_radius(S).values);

  SufficientConditionReport report;
  const std::size_t n = S.size();
  report.pointwise.resize(n);
  report.worst_margin = std::numeric_limits<double>::infinity();
  report.worst_index = 0;
  constexpr double tol = 1e-12;
  for (std::size_t j = 0; j < n; ++j) {
    const double margin = lhs.values[j] - rhs.values[j];
    report.pointwise[j] = margin >= -tol;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_index = j;
    }
  }
  report.holds_everywhere = true;
  for (const bool ok : report.pointwise) report.holds_everywhere &= ok;
  return report;
}

DiagnosticsRecord make_record(double t, const SupportField& S, const ForcingSpec& spec,
                              const EnergyParams& params) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.l2_norm = l2_norm(S.field);
  rec.convexity_margin = convexity_margin(S);

  Field disc(S.grid());
  kernels::mul(disc.values, S.field.values, S.field.values);
  for (double& v : disc.values) v -= 1.0;
  rec.hyperbolicity_margin = kernels::min_value(disc.values);

  rec.length = length_of(S);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    rec.energy = bending_energy(S, params);
  } catch (const DegenerateCurvatureError&) {
    rec.energy = nan;
  }
  try {
    rec.area = area_of(S);
  } catch (const DegenerateCurvatureError&) {
    rec.area = nan;
  }
  try {
    rec.forcing_bound_ok = check_forcing_bound(spec, S).pass;
  } catch (const EvalError&) {
    rec.forcing_bound_ok = false;
  }
  try {
    rec.steady_residual_norm = l2_norm(residual(S, spec));
  } catch (const EvalError&) {
    rec.steady_residual_norm = nan;
  }
  return rec;
}

}  // namespace curveflow
