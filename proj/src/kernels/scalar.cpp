#include <algorithm>
#include <cmath>
#include <vector>

#include "conelab/kernels.hpp"

namespace conelab::kernels::detail {

double pairwise_combine(double* partial, std::size_t count) {
  if (count == 0) return 0.0;
  while (count > 1) {
    std::size_t half = (count + 1) / 2;
    for (std::size_t i = 0; i < count / 2; ++i) partial[i] = partial[2 * i] + partial[2 * i + 1];
    if (count % 2 == 1) partial[count / 2] = partial[count - 1];
    count = half;
  }
  return partial[0];
}

namespace {

template <class Term>
double blocked_sum(std::size_t n, Term term) {
  std::vector<double> partial((n + kBlock - 1) / kBlock);
  for (std::size_t b = 0; b < partial.size(); ++b) {
    std::size_t lo = b * kBlock;
    std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  }
  return pairwise_combine(partial.data(), partial.size());
}

}  // namespace

double weighted_abs_sum_scalar(const double* v, const double* w, std::size_t n) {
  return blocked_sum(n, [&](std::size_t i) { return std::abs(v[i]) * w[i]; });
}

double weighted_sq_sum_scalar(const double* v, const double* w, std::size_t n) {
  return blocked_sum(n, [&](std::size_t i) { return v[i] * v[i] * w[i]; });
}

double weighted_sum_scalar(const double* v, const double* w, std::size_t n) {
  return blocked_sum(n, [&](std::size_t i) { return v[i] * w[i]; });
}

double max_abs_scalar(const double* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

void magnitude_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double aa = a[i] * a[i];
    double bb = b[i] * b[i];
    out[i] = std::sqrt(aa + bb);
  }
}

}  // namespace conelab::kernels::detail
