#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "curveflow/fft.hpp"

namespace curveflow {

// Uniform periodic grid theta_j = 2*pi*j/n on [0, 2*pi). Immutable and
// cheaply copyable; carries the Fourier transform plan for its size so every
// field on the grid shares it.
class ThetaGrid {
 public:
  ThetaGrid() = default;

  std::size_t size() const { return impl_->theta.size(); }
  double spacing() const { return impl_->spacing; }
  std::span<const double> theta() const { return impl_->theta; }
  double theta(std::size_t j) const { return impl_->theta[j]; }
  const RealFourierTransform& fft() const { return impl_->transform; }

  bool valid() const { return impl_ != nullptr; }

  /// Same sampling (shared state or equal size).
  friend bool operator==(const ThetaGrid& a, const ThetaGrid& b) {
    return a.impl_ == b.impl_ || (a.impl_ && b.impl_ && a.size() == b.size());
  }

 private:
  struct Impl {
    double spacing;
    std::vector<double> theta;
    RealFourierTransform transform;
    Impl(double sp, std::vector<double> th, std::size_t n)
        : spacing(sp), theta(std::move(th)), transform(n) {}
  };

  explicit ThetaGrid(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend ThetaGrid make_grid(std::size_t n);
};

/// Build the grid. n must be even and >= 8; throws std::invalid_argument
/// otherwise.
ThetaGrid make_grid(std::size_t n);

// Real samples on a ThetaGrid. Plain value type; all field operations are
// free functions.
struct Field {
  ThetaGrid grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(ThetaGrid g) : grid(std::move(g)), values(grid.size(), 0.0) {}
  Field(ThetaGrid g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  std::span<const double> view() const { return values; }
  std::span<double> view() { return values; }
};

/// Sample f(theta_j) on the grid.
Field field_from(const ThetaGrid& grid, const std::function<double(double)>& fn);
/// Constant field.
Field constant_field(const ThetaGrid& grid, double value);

/// Spectral derivative of the given order (1..4). Exact for band-limited
/// input; odd-order derivatives zero the Nyquist mode.
Field differentiate(const Field& f, int order);

/// L f = -(f_tttt + 2 f_tt + f); acts as -(k^2-1)^2 on mode k.
Field apply_linear_operator(const Field& f);

// Modulus of each Fourier mode, normalized so a*cos(k theta) (or a*sin) has
// amplitude |a| at wavenumber k.
struct ModeSpectrum {
  std::vector<double> amplitudes;  // k = 0..n/2

  double operator[](std::size_t k) const { return amplitudes[k]; }
  std::size_t size() const { return amplitudes.size(); }
};

ModeSpectrum mode_amplitudes(const Field& f);

// Quadrature and norms on the periodic grid (rectangle rule: exact for
// band-limited integrands).
double integrate(const Field& f);
double l2_norm(const Field& f);   // sqrt(integral of f^2 dtheta)
double max_norm(const Field& f);

}  // namespace curveflow
