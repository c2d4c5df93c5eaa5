#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace curveflow {

// Half-complex spectrum of a real length-n sequence, bins k = 0..n/2.
// Convention: c_k = (1/n) * sum_j f_j * exp(-i k theta_j), so a field
// a*cos(k theta) carries c_k = a/2 for 0 < k < n/2, and the k = 0 and
// Nyquist bins hold the full amplitude. im[0] and im[n/2] are exactly zero.
struct Spectrum {
  std::vector<double> re, im;

  Spectrum() = default;
  explicit Spectrum(std::size_t bins) : re(bins, 0.0), im(bins, 0.0) {}

  std::size_t bins() const { return re.size(); }
  std::size_t field_size() const { return re.empty() ? 0 : 2 * (re.size() - 1); }
};

// Precomputed real-to-half-complex transform for one (even) size n.
// Power-of-two sizes run an iterative radix-2 FFT; other even sizes go
// through Bluestein's chirp transform on a padded power-of-two grid.
class RealFourierTransform {
 public:
  explicit RealFourierTransform(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<const double> field, Spectrum& out) const;
  Spectrum forward(std::span<const double> field) const;
  void inverse(const Spectrum& spec, std::span<double> field_out) const;

 private:
  void transform(std::vector<double>& re, std::vector<double>& im, int sign) const;
  void fft_pow2(std::span<double> re, std::span<double> im, int sign) const;
  void bluestein(std::vector<double>& re, std::vector<double>& im, int sign) const;

  std::size_t n_ = 0;
  bool pow2_ = false;

  // radix-2 tables for size m (m = n_ when pow2, else the Bluestein pad size)
  std::size_t m_ = 0;
  std::vector<std::size_t> bitrev_;
  std::vector<double> tw_cos_, tw_sin_;  // twiddles for all stages, sign = -1

  // Bluestein chirp e^{-i pi j^2 / n} and the forward transform of its
  // conjugate filter, both at pad size m_
  std::vector<double> chirp_re_, chirp_im_;
  std::vector<double> filt_re_, filt_im_;

  mutable std::vector<double> work_re_, work_im_, work2_re_, work2_im_;
};

}  // namespace curveflow
