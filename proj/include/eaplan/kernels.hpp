#pragma once

#include <cstddef>
#include <cstdint>

namespace eaplan::simd {

// Word-level kernels behind the fluent-set type. States are checked and
// updated millions of times during search, so the inner loops come in a
// scalar reference version and an AVX2 version selected once at startup.
// Both versions must be bit-identical; the test suite cross-checks them
// on random inputs.
struct Kernels {
  const char* name;
  // true iff a ⊆ b
  bool (*subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // true iff a ∩ b ≠ ∅
  bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  bool (*equals)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // a |= b
  void (*orInto)(std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // a &= ~b
  void (*andnotInto)(std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

const Kernels& scalarKernels();
// Null when the build or the CPU lacks AVX2.
const Kernels* avx2KernelsOrNull();

// Selected once per process: AVX2 when available, else scalar.
// EA_PLAN_SIMD=scalar|avx2 overrides the choice.
const Kernels& activeKernels();

}  // namespace eaplan::simd
