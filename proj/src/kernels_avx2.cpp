// Compiled with -mavx2 (see CMakeLists); nothing here may be called unless
// the CPU reports AVX2 at runtime.
#include "eaplan/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace eaplan::simd {

namespace {

bool subsetAvx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // a & ~b must be all-zero
    if (!_mm256_testz_si256(va, _mm256_xor_si256(vb, _mm256_set1_epi64x(-1)))) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersectsAvx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(va, vb)) return true;
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equalsAvx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i diff = _mm256_xor_si256(va, vb);
    if (!_mm256_testz_si256(diff, diff)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

void orIntoAvx2(std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i), _mm256_or_si256(va, vb));
  }
  for (; i < n; ++i) a[i] |= b[i];
}

void andnotIntoAvx2(std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot(x, y) = ~x & y
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i), _mm256_andnot_si256(vb, va));
  }
  for (; i < n; ++i) a[i] &= ~b[i];
}

}  // namespace

const Kernels* avx2KernelsOrNull() {
  static const Kernels k{"avx2", subsetAvx2, intersectsAvx2, equalsAvx2,
                         orIntoAvx2, andnotIntoAvx2};
  if (__builtin_cpu_supports("avx2")) return &k;
  return nullptr;
}

}  // namespace eaplan::simd

#else

namespace eaplan::simd {
const Kernels* avx2KernelsOrNull() { return nullptr; }
}  // namespace eaplan::simd

#endif
