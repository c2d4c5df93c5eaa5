#include "curveflow/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace curveflow::kernels {

namespace scalar_impl {

void add(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] + b[i];
}

void sub(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] - b[i];
}

void mul(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] * b[i];
}

void div(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] / b[i];
}

void scale(std::span<double> dst, std::span<const double> a, double s) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] * s;
}

void axpby(std::span<double> dst, double alpha, std::span<const double> x, double beta,
           std::span<const double> y) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = alpha * x[i] + beta * y[i];
}

void reciprocal(std::span<double> dst, std::span<const double> a) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = 1.0 / a[i];
}

double sum(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double min_value(std::span<const double> a) {
  double m = a[0];
  for (double v : a)
    if (v < m) m = v;
  return m;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) {
    const double av = std::fabs(v);
    if (av > m) m = av;
  }
  return m;
}

bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

void cmul_real(std::span<double> re, std::span<double> im, std::span<const double> symbol) {
  for (std::size_t k = 0; k < re.size(); ++k) {
    re[k] *= symbol[k];
    im[k] *= symbol[k];
  }
}

void cmul_imag(std::span<double> re, std::span<double> im, std::span<const double> symbol) {
  for (std::size_t k = 0; k < re.size(); ++k) {
    const double r = re[k];
    re[k] = -symbol[k] * im[k];
    im[k] = symbol[k] * r;
  }
}

}  // namespace scalar_impl

namespace {

Lane detect_best_lane() {
#if CURVEFLOW_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) return Lane::avx2;
#endif
  return Lane::scalar;
}

std::atomic<Lane> g_lane{detect_best_lane()};

}  // namespace

Lane active_lane() { return g_lane.load(std::memory_order_relaxed); }

Lane best_supported_lane() {
  static const Lane best = detect_best_lane();
  return best;
}

void force_lane(Lane lane) {
  if (lane == Lane::avx2 && best_supported_lane() != Lane::avx2)
    throw std::invalid_argument("kernels: AVX2 lane not supported on this CPU");
  g_lane.store(lane, std::memory_order_relaxed);
}

#if CURVEFLOW_HAVE_AVX2
#define CURVEFLOW_DISPATCH(call) \
  (active_lane() == Lane::avx2 ? avx2_impl::call : scalar_impl::call)
#else
#define CURVEFLOW_DISPATCH(call) (scalar_impl::call)
#endif

void add(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  assert(dst.size() == a.size() && dst.size() == b.size());
  CURVEFLOW_DISPATCH(add(dst, a, b));
}

void sub(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  assert(dst.size() == a.size() && dst.size() == b.size());
  CURVEFLOW_DISPATCH(sub(dst, a, b));
}

void mul(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  assert(dst.size() == a.size() && dst.size() == b.size());
  CURVEFLOW_DISPATCH(mul(dst, a, b));
}

void div(std::span<double> dst, std::span<const double> a, std::span<const double> b) {
  assert(dst.size() == a.size() && dst.size() == b.size());
  CURVEFLOW_DISPATCH(div(dst, a, b));
}

void scale(std::span<double> dst, std::span<const double> a, double s) {
  assert(dst.size() == a.size());
  CURVEFLOW_DISPATCH(scale(dst, a, s));
}

void axpby(std::span<double> dst, double alpha, std::span<const double> x, double beta,
           std::span<const double> y) {
  assert(dst.size() == x.size() && dst.size() == y.size());
  CURVEFLOW_DISPATCH(axpby(dst, alpha, x, beta, y));
}

void reciprocal(std::span<double> dst, std::span<const double> a) {
  assert(dst.size() == a.size());
  CURVEFLOW_DISPATCH(reciprocal(dst, a));
}

double sum(std::span<const double> a) { return CURVEFLOW_DISPATCH(sum(a)); }

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return CURVEFLOW_DISPATCH(dot(a, b));
}

double min_value(std::span<const double> a) {
  assert(!a.empty());
  return CURVEFLOW_DISPATCH(min_value(a));
}

double max_abs(std::span<const double> a) { return CURVEFLOW_DISPATCH(max_abs(a)); }

std::size_t min_index(std::span<const double> a) {
  assert(!a.empty());
  // min_value is exact in either lane, so the scan gives the same index
  // regardless of how the minimum was reduced.
  const double m = min_value(a);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == m) return i;
  return 0;  // unreachable for finite input
}

bool all_finite(std::span<const double> a) { return CURVEFLOW_DISPATCH(all_finite(a)); }

void cmul_real(std::span<double> re, std::span<double> im, std::span<const double> symbol) {
  assert(re.size() == im.size() && re.size() == symbol.size());
  CURVEFLOW_DISPATCH(cmul_real(re, im, symbol));
}

void cmul_imag(std::span<double> re, std::span<double> im, std::span<const double> symbol) {
  assert(re.size() == im.size() && re.size() == symbol.size());
  CURVEFLOW_DISPATCH(cmul_imag(re, im, symbol));
}

#undef CURVEFLOW_DISPATCH

}  // namespace curveflow::kernels
