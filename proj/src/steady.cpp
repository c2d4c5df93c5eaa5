// Newton-Krylov solver for the steady equation. See steady.hpp for the
// scheme; the pieces here are the pinning projector, the Fourier-diagonal
// preconditioner, a left-preconditioned GMRES with modified Gram-Schmidt,
// and a damped Newton outer loop.
//
// The iterate lives in spectral coordinates (half-complex bins flattened to
// [re | im]). The constant-coefficient part of the residual is then an
// exact per-bin multiply, so its k^4 symbol cannot amplify transform
// round-off: a physical-space iterate would be stuck at a residual floor of
// roughly machine-epsilon * (n/2)^4 and could never certify tight
// tolerances. Only the forcing term goes through physical space, and its
// transform noise enters unamplified where Newton can cancel it. The
// directional derivative splits accordingly: the linear part is applied
// exactly (the difference quotient of a linear map), the forcing part uses
// the fd_epsilon quotient.

#include "curveflow/steady.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"

namespace curveflow {

Field residual(const SupportField& S, const ForcingSpec& spec) {
  const Field lin = apply_linear_operator(S.field);  // -(S_tttt + 2 S_tt + S)
  const Field forcing = eval_forcing(spec, ForcingContext::from_support(S));
  Field r(S.grid());
  kernels::axpby(r.values, -1.0, lin.values, -1.0, forcing.values);
  return r;
}

namespace {

bool pins_mean(Pinning p) { return p == Pinning::fix_mean || p == Pinning::both; }
bool pins_translation(Pinning p) {
  return p == Pinning::fix_translation || p == Pinning::both;
}

// Flattened half-complex coefficients: [re[0..bins) | im[0..bins)].
using Coeffs = std::vector<double>;

class SpectralProblem {
 public:
  SpectralProblem(const ThetaGrid& grid, const ForcingSpec& spec, const SteadyOptions& opts,
                  double target_mean)
      : grid_(grid), spec_(spec), opts_(opts), target_mean_(target_mean),
        bins_(grid.size() / 2 + 1) {
    symbol_.resize(bins_);
    precond_.resize(bins_);
    deriv1_.resize(bins_);
    deriv2_.resize(bins_);
    for (std::size_t k = 0; k < bins_; ++k) {
      const double kd = static_cast<double>(k);
      const double k2 = kd * kd;
      symbol_[k] = (k2 - 1.0) * (k2 - 1.0);
      precond_[k] = 1.0 / (symbol_[k] + 1.0);
      deriv1_[k] = kd;
      deriv2_[k] = -k2;
    }
    needs_kappa_ = spec.references(ForcingVar::kappa);
    needs_s_theta_ = spec.references(ForcingVar::s_theta);
    needs_s_tt_ = needs_kappa_ || spec.references(ForcingVar::s_thetatheta);
  }

  std::size_t bins() const { return bins_; }
  std::size_t coeff_size() const { return 2 * bins_; }
  const ThetaGrid& grid() const { return grid_; }
  const SteadyOptions& options() const { return opts_; }

  Coeffs from_field(const Field& f) const {
    const Spectrum s = grid_.fft().forward(f.values);
    Coeffs c(coeff_size(), 0.0);
    std::copy(s.re.begin(), s.re.end(), c.begin());
    std::copy(s.im.begin(), s.im.end(), c.begin() + static_cast<std::ptrdiff_t>(bins_));
    return c;
  }

  Field to_field(const Coeffs& c) const {
    Spectrum s(bins_);
    std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(bins_), s.re.begin());
    std::copy(c.begin() + static_cast<std::ptrdiff_t>(bins_), c.end(), s.im.begin());
    Field f(grid_);
    grid_.fft().inverse(s, f.values);
    return f;
  }

  /// Zero the bins that are not degrees of freedom (imaginary parts of the
  /// mean and Nyquist bins) plus the pinned modes.
  void project(Coeffs& c) const {
    c[bins_] = 0.0;          // im[0]
    c[2 * bins_ - 1] = 0.0;  // im[Nyquist]
    if (pins_mean(opts_.pinning)) c[0] = 0.0;
    if (pins_translation(opts_.pinning)) {
      c[1] = 0.0;
      c[bins_ + 1] = 0.0;
    }
  }

  /// Re-impose pinned values on an iterate.
  void impose(Coeffs& c) const {
    c[bins_] = 0.0;
    c[2 * bins_ - 1] = 0.0;
    if (pins_mean(opts_.pinning)) c[0] = target_mean_;
    if (pins_translation(opts_.pinning)) {
      c[1] = 0.0;
      c[bins_ + 1] = 0.0;
    }
  }

  /// Per-bin division by (k^2-1)^2 + 1 (commutes with the projector).
  void precondition(Coeffs& c) const {
    auto re = std::span<double>(c.data(), bins_);
    auto im = std::span<double>(c.data() + bins_, bins_);
    kernels::cmul_real(re, im, precond_);
  }

  /// Forcing spectrum at the state. Throws EvalError when the forcing is not
  /// evaluable there (lost convexity with curvature dependence).
  Coeffs forcing_hat(const Coeffs& state) const {
    ForcingContext ctx;
    ctx.grid = grid_;
    ctx.s = to_field(state);
    if (needs_s_theta_) ctx.s_theta = apply_bin_symbol(state, deriv1_, true);
    if (needs_s_tt_) {
      ctx.s_thetatheta = apply_bin_symbol(state, deriv2_, false);
      if (needs_kappa_) {
        Field radius(grid_);
        kernels::add(radius.values, ctx.s_thetatheta->values, ctx.s->values);
        if (kernels::min_value(radius.values) > kTolConvex) {
          Field kappa(grid_);
          kernels::reciprocal(kappa.values, radius.values);
          ctx.kappa = std::move(kappa);
        }
      }
    }
    return from_field(eval_forcing(spec_, ctx));
  }

  /// R_hat = symbol (.) S_hat - F_hat, with F_hat already computed.
  Coeffs residual_from_forcing(const Coeffs& state, const Coeffs& forcing) const {
    Coeffs r(coeff_size());
    for (std::size_t k = 0; k < bins_; ++k) {
      r[k] = symbol_[k] * state[k] - forcing[k];
      r[bins_ + k] = symbol_[k] * state[bins_ + k] - forcing[bins_ + k];
    }
    r[bins_] = 0.0;
    r[2 * bins_ - 1] = 0.0;
    return r;
  }

  double physical_max_norm(const Coeffs& c) const { return max_norm(to_field(c)); }

  /// J v with the linear part exact and the forcing part by one-sided
  /// differences; retries with smaller steps when the probe leaves the
  /// evaluable set.
  Coeffs jacobian_apply(const Coeffs& state, const Coeffs& forcing_at_state,
                        const Coeffs& v) const {
    double eps = opts_.fd_epsilon * (1.0 + physical_max_norm(state));
    for (int attempt = 0;; ++attempt) {
      Coeffs probe(coeff_size());
      kernels::axpby(probe, 1.0, state, eps, v);
      try {
        const Coeffs f_probe = forcing_hat(probe);
        Coeffs jv(coeff_size());
        for (std::size_t i = 0; i < coeff_size(); ++i) {
          const std::size_t k = i < bins_ ? i : i - bins_;
          jv[i] = symbol_[k] * v[i] - (f_probe[i] - forcing_at_state[i]) / eps;
        }
        project(jv);
        return jv;
      } catch (const EvalError&) {
        if (attempt >= 3) throw;
        eps /= 16.0;  // probe crossed the convexity boundary
      }
    }
  }

 private:
  Field apply_bin_symbol(const Coeffs& c, const std::vector<double>& sym, bool rotate) const {
    Spectrum s(bins_);
    std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(bins_), s.re.begin());
    std::copy(c.begin() + static_cast<std::ptrdiff_t>(bins_), c.end(), s.im.begin());
    if (rotate) {
      kernels::cmul_imag(s.re, s.im, sym);  // first derivative: multiply by i k
      s.re[bins_ - 1] = 0.0;
      s.im[bins_ - 1] = 0.0;
    } else {
      kernels::cmul_real(s.re, s.im, sym);
    }
    Field f(grid_);
    grid_.fft().inverse(s, f.values);
    return f;
  }

  ThetaGrid grid_;
  ForcingSpec spec_;
  SteadyOptions opts_;
  double target_mean_;
  std::size_t bins_;
  std::vector<double> symbol_, precond_, deriv1_, deriv2_;
  bool needs_kappa_ = false;
  bool needs_s_theta_ = false;
  bool needs_s_tt_ = false;
};

struct GmresOutcome {
  Coeffs solution;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Left-preconditioned GMRES for P J delta = -P R, starting from zero.
GmresOutcome gmres_solve(const SpectralProblem& problem, const Coeffs& state,
                         const Coeffs& forcing_at_state, const Coeffs& residual_at_state,
                         double rel_tol) {
  const std::size_t n = problem.coeff_size();
  const std::size_t max_iters = std::min(problem.options().max_krylov, n);

  Coeffs rhs(n);
  kernels::scale(rhs, residual_at_state, -1.0);
  problem.project(rhs);
  problem.precondition(rhs);

  GmresOutcome out;
  out.solution.assign(n, 0.0);

  const double beta0 = std::sqrt(kernels::dot(rhs, rhs));
  if (beta0 == 0.0) {
    out.converged = true;
    return out;
  }

  std::vector<Coeffs> basis;
  basis.reserve(max_iters + 1);
  {
    Coeffs v0(n);
    kernels::scale(v0, rhs, 1.0 / beta0);
    basis.push_back(std::move(v0));
  }

  std::vector<std::vector<double>> hess;  // hess[j] holds column j (j+2 entries)
  std::vector<double> cs, sn;
  std::vector<double> g{beta0};

  std::size_t cols = 0;
  for (std::size_t j = 0; j < max_iters; ++j) {
    Coeffs w = problem.jacobian_apply(state, forcing_at_state, basis[j]);
    problem.precondition(w);

    std::vector<double> h(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      h[i] = kernels::dot(w, basis[i]);
      kernels::axpby(w, 1.0, w, -h[i], basis[i]);
    }
    const double h_sub = std::sqrt(kernels::dot(w, w));
    h[j + 1] = h_sub;

    // Givens rotations: fold previous, then eliminate the new subdiagonal.
    for (std::size_t i = 0; i < j; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double denom = std::hypot(h[j], h[j + 1]);
    const double c = denom > 0.0 ? h[j] / denom : 1.0;
    const double s = denom > 0.0 ? h[j + 1] / denom : 0.0;
    cs.push_back(c);
    sn.push_back(s);
    h[j] = c * h[j] + s * h[j + 1];
    h[j + 1] = 0.0;
    g.push_back(-s * g[j]);
    g[j] = c * g[j];

    hess.push_back(std::move(h));
    cols = j + 1;
    out.iterations = cols;

    const double res = std::fabs(g[j + 1]);
    if (res <= rel_tol * beta0 || h_sub == 0.0) {  // h_sub == 0: exact breakdown
      out.converged = true;
      break;
    }
    if (j + 1 < max_iters) {
      Coeffs v(n);
      kernels::scale(v, w, 1.0 / h_sub);
      basis.push_back(std::move(v));
    }
  }

  // Back-substitute the triangular system R y = g.
  std::vector<double> y(cols, 0.0);
  for (std::size_t ii = cols; ii-- > 0;) {
    double acc = g[ii];
    for (std::size_t jj = ii + 1; jj < cols; ++jj) acc -= hess[jj][ii] * y[jj];
    y[ii] = acc / hess[ii][ii];
  }
  for (std::size_t jj = 0; jj < cols; ++jj)
    kernels::axpby(out.solution, 1.0, out.solution, y[jj], basis[jj]);
  return out;
}

}  // namespace

SteadyResult solve_steady(const SupportField& S_init, const ForcingSpec& spec,
                          const SteadyOptions& opts) {
  if (!(opts.residual_tol > 0.0))
    throw std::invalid_argument("solve_steady: residual_tol must be positive");
  if (opts.max_iters < 1) throw std::invalid_argument("solve_steady: max_iters must be >= 1");
  if (!kernels::all_finite(S_init.field.values))
    throw std::invalid_argument("solve_steady: initial state must be finite");

  const ThetaGrid& grid = S_init.grid();
  const double init_mean =
      kernels::sum(S_init.field.values) / static_cast<double>(S_init.size());
  const double target_mean = opts.fixed_mean.value_or(init_mean);
  SpectralProblem problem(grid, spec, opts, target_mean);

  Coeffs s = problem.from_field(S_init.field);
  problem.impose(s);

  SteadyResult result;
  Coeffs f_hat = problem.forcing_hat(s);
  Coeffs r_hat = problem.residual_from_forcing(s, f_hat);
  double r_norm = problem.physical_max_norm(r_hat);
  result.residual_history.push_back(r_norm);

  std::size_t iter = 0;
  for (; iter < opts.max_iters && r_norm > opts.residual_tol; ++iter) {
    const double rel_tol = std::clamp(r_norm, 1e-12, 1e-2);
    GmresOutcome lin;
    try {
      lin = gmres_solve(problem, s, f_hat, r_hat, rel_tol);
    } catch (const EvalError&) {
      result.linear_stagnation = true;
      break;  // Jacobian probes keep leaving the evaluable set
    }
    result.total_krylov_iters += lin.iterations;
    if (!lin.converged) result.linear_stagnation = true;

    // Backtracking line search on the residual max-norm; trial states that
    // cannot be evaluated (lost convexity with curvature-dependent forcing)
    // just shrink the step.
    bool accepted = false;
    double lambda = 1.0;
    for (int bt = 0; bt < 12 && !accepted; ++bt, lambda *= 0.5) {
      Coeffs trial(s.size());
      kernels::axpby(trial, 1.0, s, lambda, lin.solution);
      problem.impose(trial);
      try {
        Coeffs f_trial = problem.forcing_hat(trial);
        Coeffs r_trial = problem.residual_from_forcing(trial, f_trial);
        const double r_trial_norm = problem.physical_max_norm(r_trial);
        if (r_trial_norm < r_norm || (bt == 0 && r_trial_norm <= opts.residual_tol)) {
          s = std::move(trial);
          f_hat = std::move(f_trial);
          r_hat = std::move(r_trial);
          r_norm = r_trial_norm;
          accepted = true;
        }
      } catch (const EvalError&) {
        // keep halving
      }
    }
    if (!accepted) break;  // no productive step found; report best iterate
    result.residual_history.push_back(r_norm);
  }

  result.S_inf = SupportField(problem.to_field(s));
  result.residual_norm = r_norm;
  result.iterations = iter;
  result.converged = r_norm <= opts.residual_tol;
  result.convexity_margin = convexity_margin(result.S_inf);
  return result;
}

std::vector<SweepEntry> sweep(const std::function<ForcingSpec(double)>& family,
                              std::span<const double> parameters, const SupportField& S_init,
                              const SteadyOptions& opts) {
  std::vector<SweepEntry> entries;
  entries.reserve(parameters.size());
  SupportField seed = S_init;
  for (const double p : parameters) {
    SweepEntry entry;
    entry.parameter = p;
    try {
      SteadyResult res = solve_steady(seed, family(p), opts);
      if (res.converged) seed = res.S_inf;  // warm start for the next value
      entry.result = std::move(res);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace curveflow
