// AVX2 variants. Compiled with per-function target attributes so the rest of
// the library stays baseline x86-64 and the dispatcher decides at runtime.

#include <algorithm>
#include <cmath>
#include <vector>

#include "conelab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define CONELAB_X86 1
#include <immintrin.h>
#else
#define CONELAB_X86 0
#endif

namespace conelab::kernels::detail {

#if CONELAB_X86

namespace {

#define CONELAB_AVX2 __attribute__((target("avx2")))

CONELAB_AVX2 inline double hsum(__m256d x) {
  __m128d lo = _mm256_castpd256_pd128(x);
  __m128d hi = _mm256_extractf128_pd(x, 1);
  __m128d s = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(s, s);
  return _mm_cvtsd_f64(_mm_add_sd(s, sh));
}

CONELAB_AVX2 inline __m256d abs_pd(__m256d x) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(x, mask);
}

enum class Op { Abs, Sq, Plain };

template <Op op>
CONELAB_AVX2 double block_sum(const double* v, const double* w, std::size_t lo, std::size_t hi) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = lo;
  for (; i + 4 <= hi; i += 4) {
    __m256d x = _mm256_loadu_pd(v + i);
    __m256d y = _mm256_loadu_pd(w + i);
    if constexpr (op == Op::Abs) x = abs_pd(x);
    if constexpr (op == Op::Sq) x = _mm256_mul_pd(x, x);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, y));
  }
  double s = hsum(acc);
  for (; i < hi; ++i) {
    double x = v[i];
    if constexpr (op == Op::Abs) x = std::abs(x);
    if constexpr (op == Op::Sq) x = x * x;
    s += x * w[i];
  }
  return s;
}

template <Op op>
double blocked(const double* v, const double* w, std::size_t n) {
  std::vector<double> partial((n + kBlock - 1) / kBlock);
  for (std::size_t b = 0; b < partial.size(); ++b) {
    std::size_t lo = b * kBlock;
    partial[b] = block_sum<op>(v, w, lo, std::min(n, lo + kBlock));
  }
  return pairwise_combine(partial.data(), partial.size());
}

}  // namespace

double weighted_abs_sum_avx2(const double* v, const double* w, std::size_t n) {
  return blocked<Op::Abs>(v, w, n);
}

double weighted_sq_sum_avx2(const double* v, const double* w, std::size_t n) {
  return blocked<Op::Sq>(v, w, n);
}

double weighted_sum_avx2(const double* v, const double* w, std::size_t n) {
  return blocked<Op::Plain>(v, w, n);
}

CONELAB_AVX2 double max_abs_avx2(const double* v, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(v + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, std::abs(v[i]));
  return r;
}

CONELAB_AVX2 void magnitude_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    __m256d y = _mm256_loadu_pd(b + i);
    __m256d s = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(s));
  }
  for (; i < n; ++i) {
    double aa = a[i] * a[i];
    double bb = b[i] * b[i];
    out[i] = std::sqrt(aa + bb);
  }
}

#else

double weighted_abs_sum_avx2(const double* v, const double* w, std::size_t n) {
  return weighted_abs_sum_scalar(v, w, n);
}
double weighted_sq_sum_avx2(const double* v, const double* w, std::size_t n) {
  return weighted_sq_sum_scalar(v, w, n);
}
double weighted_sum_avx2(const double* v, const double* w, std::size_t n) {
  return weighted_sum_scalar(v, w, n);
}
double max_abs_avx2(const double* v, std::size_t n) { return max_abs_scalar(v, n); }
void magnitude_avx2(const double* a, const double* b, double* out, std::size_t n) {
  magnitude_scalar(a, b, out, n);
}

#endif

}  // namespace conelab::kernels::detail
