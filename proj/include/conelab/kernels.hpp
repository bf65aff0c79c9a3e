#pragma once
// Reduction kernels behind every quadrature in the library.
//
// Each kernel has a scalar reference implementation and an AVX2 variant. The
// variant is picked once at runtime from the CPU feature bits; setting
// CONELAB_SIMD=scalar in the environment forces the reference path. Both paths
// sum in fixed-size blocks combined pairwise, so results do not depend on
// thread scheduling and differ between paths only by round-off.

#include <cstddef>
#include <span>
#include <string_view>

namespace conelab::kernels {

enum class Isa { Scalar, Avx2 };

/// Instruction set used by the dispatching entry points.
Isa active_isa();
/// True when the running CPU can execute the AVX2 variants.
bool avx2_available();
std::string_view isa_name(Isa isa);

// Dispatching entry points.

/// sum_i |v_i|^p * w_i. p = 1 and p = 2 take the vectorised paths.
double weighted_pow_sum(std::span<const double> v, std::span<const double> w, double p);
/// sum_i v_i * w_i
double weighted_sum(std::span<const double> v, std::span<const double> w);
/// max_i |v_i|, 0 for an empty span.
double max_abs(std::span<const double> v);
/// out_i = sqrt(a_i^2 + b_i^2)
void magnitude(std::span<const double> a, std::span<const double> b, std::span<double> out);

// Explicit-ISA variants, used by the equivalence tests.

double weighted_pow_sum(Isa isa, std::span<const double> v, std::span<const double> w, double p);
double weighted_sum(Isa isa, std::span<const double> v, std::span<const double> w);
double max_abs(Isa isa, std::span<const double> v);
void magnitude(Isa isa, std::span<const double> a, std::span<const double> b, std::span<double> out);

namespace detail {
inline constexpr std::size_t kBlock = 256;

double weighted_abs_sum_scalar(const double* v, const double* w, std::size_t n);
double weighted_sq_sum_scalar(const double* v, const double* w, std::size_t n);
double weighted_sum_scalar(const double* v, const double* w, std::size_t n);
double max_abs_scalar(const double* v, std::size_t n);
void magnitude_scalar(const double* a, const double* b, double* out, std::size_t n);

double weighted_abs_sum_avx2(const double* v, const double* w, std::size_t n);
double weighted_sq_sum_avx2(const double* v, const double* w, std::size_t n);
double weighted_sum_avx2(const double* v, const double* w, std::size_t n);
double max_abs_avx2(const double* v, std::size_t n);
void magnitude_avx2(const double* a, const double* b, double* out, std::size_t n);

/// Pairwise combination of per-block partial sums.
double pairwise_combine(double* partial, std::size_t count);
}  // namespace detail

}  // namespace conelab::kernels
