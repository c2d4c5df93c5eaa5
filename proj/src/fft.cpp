// Real periodic transforms built on an iterative radix-2 FFT, with
// Bluestein's chirp algorithm covering even sizes that are not powers of
// two. Normalization puts 1/n on the analysis side so spectrum bins read
// directly as half-amplitudes (see Spectrum in fft.hpp).
//
// Chirp phases are reduced mod 2n before evaluating sin/cos so the j^2
// argument stays accurate for large j.

#include "curveflow/fft.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace curveflow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::size_t next_pow2(std::size_t x) {
  std::size_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

}  // namespace

RealFourierTransform::RealFourierTransform(std::size_t n) : n_(n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("RealFourierTransform: size must be even and >= 2");
  pow2_ = is_pow2(n);
  m_ = pow2_ ? n : next_pow2(2 * n - 1);

  // bit-reversal table for size m_
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m_) ++bits;
  bitrev_.assign(m_, 0);
  for (std::size_t i = 1; i < m_; ++i)
    bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) << (bits - 1));

  // stage twiddles w_j = exp(-2*pi*i*j/len), flattened over stages
  tw_cos_.reserve(m_ - 1);
  tw_sin_.reserve(m_ - 1);
  for (std::size_t len = 2; len <= m_; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t j = 0; j < half; ++j) {
      const double ang = kTwoPi * static_cast<double>(j) / static_cast<double>(len);
      tw_cos_.push_back(std::cos(ang));
      tw_sin_.push_back(-std::sin(ang));
    }
  }

  if (!pow2_) {
    // chirp_j = exp(-i*pi*j^2/n), filter = FFT_m of its conjugate extended
    // periodically: b_0..n-1 and b_{m-j} = b_j
    chirp_re_.assign(n_, 0.0);
    chirp_im_.assign(n_, 0.0);
    filt_re_.assign(m_, 0.0);
    filt_im_.assign(m_, 0.0);
    const std::int64_t two_n = static_cast<std::int64_t>(2 * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const std::int64_t q = (static_cast<std::int64_t>(j) * static_cast<std::int64_t>(j)) % two_n;
      const double ang = M_PI * static_cast<double>(q) / static_cast<double>(n_);
      chirp_re_[j] = std::cos(ang);
      chirp_im_[j] = -std::sin(ang);
      filt_re_[j] = chirp_re_[j];
      filt_im_[j] = -chirp_im_[j];
    }
    for (std::size_t j = 1; j < n_; ++j) {
      filt_re_[m_ - j] = filt_re_[j];
      filt_im_[m_ - j] = filt_im_[j];
    }
    fft_pow2(filt_re_, filt_im_, -1);
  }
}

void RealFourierTransform::fft_pow2(std::span<double> re, std::span<double> im, int sign) const {
  const std::size_t m = m_;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = bitrev_[i];
    if (i < r) {
      std::swap(re[i], re[r]);
      std::swap(im[i], im[r]);
    }
  }
  std::size_t off = 0;
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t base = 0; base < m; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const double wr = tw_cos_[off + j];
        const double wi = (sign < 0) ? tw_sin_[off + j] : -tw_sin_[off + j];
        const std::size_t a = base + j;
        const std::size_t b = a + half;
        const double tr = wr * re[b] - wi * im[b];
        const double ti = wr * im[b] + wi * re[b];
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
      }
    }
    off += half;
  }
}

void RealFourierTransform::bluestein(std::vector<double>& re, std::vector<double>& im,
                                     int sign) const {
  if (sign > 0) {
    for (double& v : im) v = -v;
    bluestein(re, im, -1);
    for (double& v : im) v = -v;
    return;
  }
  std::vector<double> are(m_, 0.0), aim(m_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    are[j] = re[j] * chirp_re_[j] - im[j] * chirp_im_[j];
    aim[j] = re[j] * chirp_im_[j] + im[j] * chirp_re_[j];
  }
  fft_pow2(are, aim, -1);
  for (std::size_t k = 0; k < m_; ++k) {
    const double r = are[k] * filt_re_[k] - aim[k] * filt_im_[k];
    const double i = are[k] * filt_im_[k] + aim[k] * filt_re_[k];
    are[k] = r;
    aim[k] = i;
  }
  fft_pow2(are, aim, +1);
  const double inv_m = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) {
    const double cr = are[k] * inv_m;
    const double ci = aim[k] * inv_m;
    re[k] = cr * chirp_re_[k] - ci * chirp_im_[k];
    im[k] = cr * chirp_im_[k] + ci * chirp_re_[k];
  }
}

void RealFourierTransform::transform(std::vector<double>& re, std::vector<double>& im,
                                     int sign) const {
  if (pow2_) {
    fft_pow2(re, im, sign);
  } else {
    bluestein(re, im, sign);
  }
}

void RealFourierTransform::forward(std::span<const double> field, Spectrum& out) const {
  if (field.size() != n_) throw std::invalid_argument("forward: field size mismatch");
  std::vector<double> re(field.begin(), field.end());
  std::vector<double> im(n_, 0.0);
  transform(re, im, -1);
  const std::size_t bins = n_ / 2 + 1;
  out.re.resize(bins);
  out.im.resize(bins);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < bins; ++k) {
    out.re[k] = re[k] * inv_n;
    out.im[k] = im[k] * inv_n;
  }
  // exactly real bins for real input
  out.im[0] = 0.0;
  out.im[bins - 1] = 0.0;
}

Spectrum RealFourierTransform::forward(std::span<const double> field) const {
  Spectrum s;
  forward(field, s);
  return s;
}

void RealFourierTransform::inverse(const Spectrum& spec, std::span<double> field_out) const {
  if (spec.field_size() != n_) throw std::invalid_argument("inverse: spectrum size mismatch");
  if (field_out.size() != n_) throw std::invalid_argument("inverse: output size mismatch");
  const std::size_t bins = n_ / 2 + 1;
  std::vector<double> re(n_, 0.0), im(n_, 0.0);
  for (std::size_t k = 0; k < bins; ++k) {
    re[k] = spec.re[k];
    im[k] = spec.im[k];
  }
  for (std::size_t k = 1; k + 1 < bins; ++k) {
    re[n_ - k] = spec.re[k];
    im[n_ - k] = -spec.im[k];
  }
  transform(re, im, +1);
  for (std::size_t j = 0; j < n_; ++j) field_out[j] = re[j];
}

}  // namespace curveflow
