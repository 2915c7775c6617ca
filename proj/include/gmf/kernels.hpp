#pragma once

// Data-parallel inner loops. Each kernel has a serial reference used by the
// tests and the benchmark; callers go through the dispatching entry point.

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmf::kernels {

// Output length below which the product stays serial.
inline constexpr std::size_t kParallelProductThreshold = 96;

// c[n] = sum_{i+j=n} a[i] b[j] for n < out_len (a and b may be shorter).
template <typename T>
std::vector<T> cauchy_product_serial(std::span<const T> a, std::span<const T> b,
                                     std::size_t out_len, const T& zero) {
  std::vector<T> c(out_len, zero);
  for (std::size_t n = 0; n < out_len; ++n) {
    const std::size_t lo = n >= b.size() ? n - b.size() + 1 : 0;
    const std::size_t hi = std::min(n + 1, a.size());
    for (std::size_t i = lo; i < hi; ++i) c[n].add_product(a[i], b[n - i]);
  }
  return c;
}

template <typename T>
std::vector<T> cauchy_product_parallel(std::span<const T> a, std::span<const T> b,
                                       std::size_t out_len, const T& zero) {
  std::vector<T> c(out_len, zero);
  const auto len = static_cast<long>(out_len);
  // Row n costs O(n); dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 8)
  for (long sn = 0; sn < len; ++sn) {
    const auto n = static_cast<std::size_t>(sn);
    const std::size_t lo = n >= b.size() ? n - b.size() + 1 : 0;
    const std::size_t hi = std::min(n + 1, a.size());
    for (std::size_t i = lo; i < hi; ++i) c[n].add_product(a[i], b[n - i]);
  }
  return c;
}

inline bool in_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

template <typename T>
std::vector<T> cauchy_product(std::span<const T> a, std::span<const T> b, std::size_t out_len,
                              const T& zero) {
  if (out_len >= kParallelProductThreshold && !in_parallel_region())
    return cauchy_product_parallel(a, b, out_len, zero);
  return cauchy_product_serial(a, b, out_len, zero);
}

}  // namespace gmf::kernels
