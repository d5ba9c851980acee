#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <vector>

#include "eaplan/kernels.hpp"

namespace eaplan {

// Fixed-width bitset over dense fluent ids. All binary operations assume
// both operands were sized for the same task.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t sizeBits() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  void set(int i) {
    assert(i >= 0 && static_cast<std::size_t>(i) < nbits_);
    words_[static_cast<std::size_t>(i) >> 6] |= (std::uint64_t{1} << (i & 63));
  }
  void reset(int i) {
    assert(i >= 0 && static_cast<std::size_t>(i) < nbits_);
    words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool test(int i) const {
    assert(i >= 0 && static_cast<std::size_t>(i) < nbits_);
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
  }

  bool subsetOf(const Bits& o) const {
    assert(nbits_ == o.nbits_);
    return simd::activeKernels().subset(words_.data(), o.words_.data(), words_.size());
  }
  bool intersects(const Bits& o) const {
    assert(nbits_ == o.nbits_);
    return simd::activeKernels().intersects(words_.data(), o.words_.data(), words_.size());
  }
  void orInto(const Bits& o) {
    assert(nbits_ == o.nbits_);
    simd::activeKernels().orInto(words_.data(), o.words_.data(), words_.size());
  }
  void andnotInto(const Bits& o) {
    assert(nbits_ == o.nbits_);
    simd::activeKernels().andnotInto(words_.data(), o.words_.data(), words_.size());
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  template <typename Fn>
  void forEachSet(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        int bit = __builtin_ctzll(w);
        fn(static_cast<int>(wi * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const Bits& a, const Bits& b) {
    if (a.nbits_ != b.nbits_) return false;
    return simd::activeKernels().equals(a.words_.data(), b.words_.data(), a.words_.size());
  }
  friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }

  std::size_t hashValue() const {
    // FNV-1a over words
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  // Copy widened (or narrowed, if no set bit is lost) to a new width.
  Bits resized(std::size_t newBits) const {
    Bits out(newBits);
    for (std::size_t i = 0; i < words_.size() && i < out.words_.size(); ++i)
      out.words_[i] = words_[i];
    if (newBits % 64 != 0 && !out.words_.empty())
      out.words_.back() &= (std::uint64_t{1} << (newBits % 64)) - 1;
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace eaplan

template <>
struct std::hash<eaplan::Bits> {
  size_t operator()(const eaplan::Bits& b) const noexcept { return b.hashValue(); }
};
