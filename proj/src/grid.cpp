#include "curveflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"

namespace curveflow {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ThetaGrid make_grid(std::size_t n) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("make_grid: sample count must be even and >= 8, got " +
                                std::to_string(n));
  const double spacing = kTwoPi / static_cast<double>(n);
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) theta[j] = static_cast<double>(j) * spacing;
  return ThetaGrid(std::make_shared<const ThetaGrid::Impl>(spacing, std::move(theta), n));
}

Field::Field(ThetaGrid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size())
    throw std::invalid_argument("Field: values length does not match grid size");
}

Field field_from(const ThetaGrid& grid, const std::function<double(double)>& fn) {
  Field f(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) f.values[j] = fn(grid.theta(j));
  return f;
}

Field constant_field(const ThetaGrid& grid, double value) {
  Field f(grid);
  std::fill(f.values.begin(), f.values.end(), value);
  return f;
}

namespace {

void require_finite(const Field& f, const char* op) {
  if (!kernels::all_finite(f.values))
    throw Error(std::string(op) + ": field has non-finite values");
}

// per-bin symbol for (d/dtheta)^order restricted to real wavenumbers
std::vector<double> derivative_symbol(std::size_t bins, int order) {
  std::vector<double> s(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double kd = static_cast<double>(k);
    double p = 1.0;
    for (int i = 0; i < order; ++i) p *= kd;
    s[k] = p;
  }
  return s;
}

// Transform round-off leaves ~eps-level residue in bins that are exact
// zeros for band-limited data; the k^4 symbols would amplify it by up to
// (n/2)^4. Bins below this relative floor are snapped to zero before a
// derivative symbol is applied. Modes genuinely smaller than the floor are
// not representable against the field's own rounding noise anyway.
constexpr double kSpectralNoiseFloor = 1e-13;

void denoise(Spectrum& s) {
  double mean_square = s.re[0] * s.re[0];
  const std::size_t bins = s.bins();
  for (std::size_t k = 1; k + 1 < bins; ++k)
    mean_square += 2.0 * (s.re[k] * s.re[k] + s.im[k] * s.im[k]);
  mean_square += s.re[bins - 1] * s.re[bins - 1];
  const double floor = kSpectralNoiseFloor * std::sqrt(mean_square);
  for (std::size_t k = 0; k < bins; ++k) {
    if (std::hypot(s.re[k], s.im[k]) <= floor) {
      s.re[k] = 0.0;
      s.im[k] = 0.0;
    }
  }
}

}  // namespace

Field differentiate(const Field& f, int order) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("differentiate: order must be 1..4, got " +
                                std::to_string(order));
  require_finite(f, "differentiate");
  const auto& fft = f.grid.fft();
  Spectrum s = fft.forward(f.values);
  denoise(s);
  const std::size_t bins = s.bins();
  std::vector<double> sym = derivative_symbol(bins, order);

  // (ik)^order = i^order * k^order; i^order cycles re/im roles and signs
  switch (order & 3) {
    case 0:  // i^4 = 1
      kernels::cmul_real(s.re, s.im, sym);
      break;
    case 1:  // i
      sym[bins - 1] = 0.0;  // odd-order Nyquist convention
      kernels::cmul_imag(s.re, s.im, sym);
      break;
    case 2:  // -1
      for (double& v : sym) v = -v;
      kernels::cmul_real(s.re, s.im, sym);
      break;
    case 3:  // -i
      sym[bins - 1] = 0.0;
      for (double& v : sym) v = -v;
      kernels::cmul_imag(s.re, s.im, sym);
      break;
  }
  Field out(f.grid);
  fft.inverse(s, out.values);
  return out;
}

Field apply_linear_operator(const Field& f) {
  require_finite(f, "apply_linear_operator");
  const auto& fft = f.grid.fft();
  Spectrum s = fft.forward(f.values);
  denoise(s);
  const std::size_t bins = s.bins();
  std::vector<double> sym(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    sym[k] = -(k2 - 1.0) * (k2 - 1.0);
  }
  kernels::cmul_real(s.re, s.im, sym);
  Field out(f.grid);
  fft.inverse(s, out.values);
  return out;
}

ModeSpectrum mode_amplitudes(const Field& f) {
  require_finite(f, "mode_amplitudes");
  Spectrum s = f.grid.fft().forward(f.values);
  const std::size_t bins = s.bins();
  ModeSpectrum m;
  m.amplitudes.resize(bins);
  m.amplitudes[0] = std::hypot(s.re[0], s.im[0]);
  for (std::size_t k = 1; k + 1 < bins; ++k)
    m.amplitudes[k] = 2.0 * std::hypot(s.re[k], s.im[k]);
  m.amplitudes[bins - 1] = std::hypot(s.re[bins - 1], s.im[bins - 1]);
  return m;
}

double integrate(const Field& f) { return f.grid.spacing() * kernels::sum(f.values); }

double l2_norm(const Field& f) {
  return std::sqrt(f.grid.spacing() * kernels::dot(f.values, f.values));
}

double max_norm(const Field& f) { return kernels::max_abs(f.values); }

}  // namespace curveflow
