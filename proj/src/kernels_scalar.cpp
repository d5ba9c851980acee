#include "eaplan/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace eaplan::simd {

namespace {

bool subsetScalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersectsScalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equalsScalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  return std::memcmp(a, b, n * sizeof(std::uint64_t)) == 0;
}

void orIntoScalar(std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] |= b[i];
}

void andnotIntoScalar(std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] &= ~b[i];
}

}  // namespace

const Kernels& scalarKernels() {
  static const Kernels k{"scalar", subsetScalar, intersectsScalar, equalsScalar,
                         orIntoScalar, andnotIntoScalar};
  return k;
}

const Kernels& activeKernels() {
  static const Kernels* selected = [] {
    const char* force = std::getenv("EA_PLAN_SIMD");
    if (force != nullptr) {
      std::string want(force);
      if (want == "scalar") return &scalarKernels();
      if (want == "avx2") {
        const Kernels* avx2 = avx2KernelsOrNull();
        if (avx2 == nullptr)
          throw std::runtime_error("EA_PLAN_SIMD=avx2 requested but AVX2 is unavailable");
        return avx2;
      }
      throw std::runtime_error("unknown EA_PLAN_SIMD value: " + want);
    }
    const Kernels* avx2 = avx2KernelsOrNull();
    return avx2 != nullptr ? avx2 : &scalarKernels();
  }();
  return *selected;
}

}  // namespace eaplan::simd
