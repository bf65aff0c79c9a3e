#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/kernels.hpp"

namespace conelab::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("CONELAB_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

Isa usable(Isa isa) { return isa == Isa::Avx2 && !avx2_available() ? Isa::Scalar : isa; }

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

double pow_sum_generic(std::span<const double> v, std::span<const double> w, double p) {
  const std::size_t n = v.size();
  std::vector<double> partial((n + detail::kBlock - 1) / detail::kBlock);
  for (std::size_t b = 0; b < partial.size(); ++b) {
    std::size_t lo = b * detail::kBlock;
    std::size_t hi = std::min(n, lo + detail::kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double a = std::abs(v[i]);
      if (a != 0.0) s += std::pow(a, p) * w[i];
    }
    partial[b] = s;
  }
  return detail::pairwise_combine(partial.data(), partial.size());
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double weighted_pow_sum(Isa isa, std::span<const double> v, std::span<const double> w, double p) {
  isa = usable(isa);
  check_sizes(v.size(), w.size());
  if (p == 1.0) {
    return isa == Isa::Avx2 ? detail::weighted_abs_sum_avx2(v.data(), w.data(), v.size())
                            : detail::weighted_abs_sum_scalar(v.data(), w.data(), v.size());
  }
  if (p == 2.0) {
    return isa == Isa::Avx2 ? detail::weighted_sq_sum_avx2(v.data(), w.data(), v.size())
                            : detail::weighted_sq_sum_scalar(v.data(), w.data(), v.size());
  }
  return pow_sum_generic(v, w, p);
}

double weighted_sum(Isa isa, std::span<const double> v, std::span<const double> w) {
  isa = usable(isa);
  check_sizes(v.size(), w.size());
  return isa == Isa::Avx2 ? detail::weighted_sum_avx2(v.data(), w.data(), v.size())
                          : detail::weighted_sum_scalar(v.data(), w.data(), v.size());
}

double max_abs(Isa isa, std::span<const double> v) {
  isa = usable(isa);
  return isa == Isa::Avx2 ? detail::max_abs_avx2(v.data(), v.size())
                          : detail::max_abs_scalar(v.data(), v.size());
}

void magnitude(Isa isa, std::span<const double> a, std::span<const double> b, std::span<double> out) {
  isa = usable(isa);
  check_sizes(a.size(), b.size());
  check_sizes(a.size(), out.size());
  if (isa == Isa::Avx2)
    detail::magnitude_avx2(a.data(), b.data(), out.data(), a.size());
  else
    detail::magnitude_scalar(a.data(), b.data(), out.data(), a.size());
}

double weighted_pow_sum(std::span<const double> v, std::span<const double> w, double p) {
  return weighted_pow_sum(active_isa(), v, w, p);
}
double weighted_sum(std::span<const double> v, std::span<const double> w) {
  return weighted_sum(active_isa(), v, w);
}
double max_abs(std::span<const double> v) { return max_abs(active_isa(), v); }
void magnitude(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  magnitude(active_isa(), a, b, out);
}

}  // namespace conelab::kernels
