#pragma once

// Internal: per-lane kernel entry points. Only kernels.cpp and the lane
// translation units include this.

#include <cstddef>
#include <span>

namespace curveflow::kernels::scalar_impl {

void add(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void sub(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void mul(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void div(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void scale(std::span<double> dst, std::span<const double> a, double s);
void axpby(std::span<double> dst, double alpha, std::span<const double> x, double beta,
           std::span<const double> y);
void reciprocal(std::span<double> dst, std::span<const double> a);
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double min_value(std::span<const double> a);
double max_abs(std::span<const double> a);
bool all_finite(std::span<const double> a);
void cmul_real(std::span<double> re, std::span<double> im, std::span<const double> symbol);
void cmul_imag(std::span<double> re, std::span<double> im, std::span<const double> symbol);

}  // namespace curveflow::kernels::scalar_impl

#if CURVEFLOW_HAVE_AVX2
namespace curveflow::kernels::avx2_impl {

void add(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void sub(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void mul(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void div(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void scale(std::span<double> dst, std::span<const double> a, double s);
void axpby(std::span<double> dst, double alpha, std::span<const double> x, double beta,
           std::span<const double> y);
void reciprocal(std::span<double> dst, std::span<const double> a);
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double min_value(std::span<const double> a);
double max_abs(std::span<const double> a);
bool all_finite(std::span<const double> a);
void cmul_real(std::span<double> re, std::span<double> im, std::span<const double> symbol);
void cmul_imag(std::span<double> re, std::span<double> im, std::span<const double> symbol);

}  // namespace curveflow::kernels::avx2_impl
#endif
