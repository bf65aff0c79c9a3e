#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "conelab/kernels.hpp"

using namespace conelab;

namespace {

std::vector<double> random_values(std::size_t n, unsigned seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("avx2 kernels agree with the scalar path") {
  if (!kernels::avx2_available()) {
    MESSAGE("no AVX2 on this machine; scalar path only");
    return;
  }
  // odd lengths exercise the remainder loops
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    const auto v = random_values(n, 7 + n, -3.0, 3.0);
    const auto w = random_values(n, 11 + n, 0.0, 2.0);
    for (double p : {1.0, 2.0, 1.5, 3.0}) {
      const double s = kernels::weighted_pow_sum(kernels::Isa::Scalar, v, w, p);
      const double a = kernels::weighted_pow_sum(kernels::Isa::Avx2, v, w, p);
      CHECK(a == doctest::Approx(s).epsilon(1e-13));
    }
    CHECK(kernels::weighted_sum(kernels::Isa::Avx2, v, w) ==
          doctest::Approx(kernels::weighted_sum(kernels::Isa::Scalar, v, w)).epsilon(1e-13));
    CHECK(kernels::max_abs(kernels::Isa::Avx2, v) == kernels::max_abs(kernels::Isa::Scalar, v));
    std::vector<double> ms(n), ma(n);
    kernels::magnitude(kernels::Isa::Scalar, v, w, ms);
    kernels::magnitude(kernels::Isa::Avx2, v, w, ma);
    for (std::size_t i = 0; i < n; ++i) CHECK(ma[i] == doctest::Approx(ms[i]).epsilon(1e-15));
  }
}

TEST_CASE("weighted sums on known data") {
  const std::vector<double> v{1.0, -2.0, 3.0}, w{1.0, 0.5, 2.0};
  CHECK(kernels::weighted_pow_sum(v, w, 1.0) == doctest::Approx(8.0));
  CHECK(kernels::weighted_pow_sum(v, w, 2.0) == doctest::Approx(21.0));
  CHECK(kernels::weighted_sum(v, w) == doctest::Approx(6.0));
  CHECK(kernels::max_abs(v) == 3.0);
}
