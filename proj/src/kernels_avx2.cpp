// AVX2 lane. Pointwise kernels apply exactly the same per-element operation
// as the scalar lane (no FMA contraction), so results are bit-identical;
// reductions accumulate lane-wise and fold at the end.

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "kernels_impl.hpp"

namespace curveflow::kernels::avx2_impl {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
  return _mm_cvtsd_f64(s1);
}

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_min_pd(lo, hi);
  const __m128d m1 = _mm_min_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

void add(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&dst[i], _mm256_add_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&dst[i], _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void mul(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&dst[i], _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void div(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&dst[i], _mm256_div_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  for (; i < n; ++i) dst[i] = a[i] / b[i];
}

void scale(std::span<double> dst, std::span<const double> a, double s) {
  const std::size_t n = dst.size();
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&dst[i], _mm256_mul_pd(_mm256_loadu_pd(&a[i]), vs));
  for (; i < n; ++i) dst[i] = a[i] * s;
}

void axpby(std::span<double> dst, double alpha, std::span<const double> x, double beta,
           std::span<const double> y) {
  const std::size_t n = dst.size();
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d tx = _mm256_mul_pd(va, _mm256_loadu_pd(&x[i]));
    const __m256d ty = _mm256_mul_pd(vb, _mm256_loadu_pd(&y[i]));
    _mm256_storeu_pd(&dst[i], _mm256_add_pd(tx, ty));
  }
  for (; i < n; ++i) dst[i] = alpha * x[i] + beta * y[i];
}

void reciprocal(std::span<double> dst, std::span<const double> a) {
  const std::size_t n = dst.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&dst[i], _mm256_div_pd(one, _mm256_loadu_pd(&a[i])));
  for (; i < n; ++i) dst[i] = 1.0 / a[i];
}

double sum(std::span<const double> a) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(&a[i]));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double min_value(std::span<const double> a) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  double m = a[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(&a[0]);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(&a[i]));
    m = hmin(acc);
  } else {
    i = 1;
  }
  for (; i < n; ++i)
    if (a[i] < m) m = a[i];
  return m;
}

double max_abs(std::span<const double> a) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(&a[i]), kAbsMask));
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double av = std::fabs(a[i]);
    if (av > m) m = av;
  }
  return m;
}

bool all_finite(std::span<const double> a) {
  const std::size_t n = a.size();
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_and_pd(_mm256_loadu_pd(&a[i]), kAbsMask);
    // |v| < inf is false for +inf and for NaN
    const __m256d ok = _mm256_cmp_pd(v, inf, _CMP_LT_OQ);
    if (_mm256_movemask_pd(ok) != 0xf) return false;
  }
  for (; i < n; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

void cmul_real(std::span<double> re, std::span<double> im, std::span<const double> symbol) {
  const std::size_t n = re.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(&symbol[i]);
    _mm256_storeu_pd(&re[i], _mm256_mul_pd(_mm256_loadu_pd(&re[i]), s));
    _mm256_storeu_pd(&im[i], _mm256_mul_pd(_mm256_loadu_pd(&im[i]), s));
  }
  for (; i < n; ++i) {
    re[i] *= symbol[i];
    im[i] *= symbol[i];
  }
}

void cmul_imag(std::span<double> re, std::span<double> im, std::span<const double> symbol) {
  const std::size_t n = re.size();
  const __m256d neg = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(&symbol[i]);
    const __m256d r = _mm256_loadu_pd(&re[i]);
    const __m256d m = _mm256_loadu_pd(&im[i]);
    _mm256_storeu_pd(&re[i], _mm256_xor_pd(_mm256_mul_pd(s, m), neg));
    _mm256_storeu_pd(&im[i], _mm256_mul_pd(s, r));
  }
  for (; i < n; ++i) {
    const double r = re[i];
    re[i] = -symbol[i] * im[i];
    im[i] = symbol[i] * r;
  }
}

}  // namespace curveflow::kernels::avx2_impl
