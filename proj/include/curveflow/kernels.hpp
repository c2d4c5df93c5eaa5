#pragma once

#include <cstddef>
#include <span>

// Array kernels backing every inner loop of the library: pointwise field
// arithmetic, reductions, and per-bin complex spectrum updates. Each kernel
// has a scalar reference implementation and an AVX2 variant; the lane is
// selected at runtime from CPU capabilities and can be forced for testing.
//
// Pointwise kernels are bit-identical across lanes (same per-element
// operation, no FMA contraction). Reductions may differ in the last few ulps
// because the vector lane accumulates in tree order.

namespace curveflow::kernels {

enum class Lane { scalar, avx2 };

/// Lane used by all kernel calls right now.
Lane active_lane();

/// Most capable lane this CPU supports.
Lane best_supported_lane();

/// Override lane selection (tests). Throws std::invalid_argument if the
/// requested lane is not supported on this machine.
void force_lane(Lane lane);

// ---- pointwise (dst may alias any input; spans must share length) ----

void add(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void sub(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void mul(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void div(std::span<double> dst, std::span<const double> a, std::span<const double> b);
void scale(std::span<double> dst, std::span<const double> a, double s);
void axpby(std::span<double> dst, double alpha, std::span<const double> x, double beta,
           std::span<const double> y);
void reciprocal(std::span<double> dst, std::span<const double> a);

// ---- reductions ----

double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double min_value(std::span<const double> a);
double max_abs(std::span<const double> a);
/// First index attaining min_value(a). Identical across lanes.
std::size_t min_index(std::span<const double> a);
bool all_finite(std::span<const double> a);

// ---- half-complex spectrum helpers ----

/// (re, im)[k] *= symbol[k]
void cmul_real(std::span<double> re, std::span<double> im, std::span<const double> symbol);
/// (re, im)[k] *= i * symbol[k], i.e. (re, im) -> (-symbol*im, symbol*re)
void cmul_imag(std::span<double> re, std::span<double> im, std::span<const double> symbol);

}  // namespace curveflow::kernels
