#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace belcal {

/// Subset of a frame encoded as W machine words. Bit i stands for the frame
/// element at position i; bits at positions >= frame size must stay zero.
/// W = 1 covers frames up to 64 elements and keeps every operation a single
/// word instruction; wider frames pick W at frame construction time.
template <std::size_t W>
struct BitMask {
  static_assert(W >= 1);
  static constexpr std::size_t word_count = W;
  static constexpr std::size_t max_bits = 64 * W;

  std::array<std::uint64_t, W> words{};

  constexpr BitMask() = default;

  static constexpr BitMask none() { return BitMask{}; }

  static constexpr BitMask single(std::size_t bit) {
    BitMask m;
    m.words[bit / 64] = std::uint64_t{1} << (bit % 64);
    return m;
  }

  /// All bits [0, n) set.
  static constexpr BitMask full(std::size_t n) {
    BitMask m;
    std::size_t whole = n / 64;
    for (std::size_t i = 0; i < whole; ++i) m.words[i] = ~std::uint64_t{0};
    if (n % 64 != 0) m.words[whole] = (std::uint64_t{1} << (n % 64)) - 1;
    return m;
  }

  constexpr bool test(std::size_t bit) const {
    return (words[bit / 64] >> (bit % 64)) & 1;
  }

  constexpr void set(std::size_t bit) {
    words[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }

  constexpr void reset(std::size_t bit) {
    words[bit / 64] &= ~(std::uint64_t{1} << (bit % 64));
  }

  constexpr std::size_t count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < W; ++i) c += std::popcount(words[i]);
    return c;
  }

  constexpr bool empty() const {
    for (std::size_t i = 0; i < W; ++i)
      if (words[i] != 0) return false;
    return true;
  }

  constexpr bool subset_of(const BitMask& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if ((words[i] & ~o.words[i]) != 0) return false;
    return true;
  }

  friend constexpr BitMask operator|(BitMask a, const BitMask& b) {
    for (std::size_t i = 0; i < W; ++i) a.words[i] |= b.words[i];
    return a;
  }

  friend constexpr BitMask operator&(BitMask a, const BitMask& b) {
    for (std::size_t i = 0; i < W; ++i) a.words[i] &= b.words[i];
    return a;
  }

  friend constexpr BitMask operator^(BitMask a, const BitMask& b) {
    for (std::size_t i = 0; i < W; ++i) a.words[i] ^= b.words[i];
    return a;
  }

  friend constexpr bool operator==(const BitMask&, const BitMask&) = default;

  /// Numeric-value order (most significant word first).
  constexpr bool value_less(const BitMask& o) const {
    for (std::size_t i = W; i-- > 0;) {
      if (words[i] != o.words[i]) return words[i] < o.words[i];
    }
    return false;
  }

  /// Value of the low word; the dense engines index arrays with it and are
  /// gated well below 2^64 entries.
  constexpr std::uint64_t low_word() const { return words[0]; }

  static constexpr BitMask from_low_word(std::uint64_t v) {
    BitMask m;
    m.words[0] = v;
    return m;
  }

  /// Visits the index of every set bit in increasing order.
  template <class Fn>
  constexpr void for_each_bit(Fn&& fn) const {
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t w = words[i];
      while (w != 0) {
        fn(64 * i + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
};

using Mask64 = BitMask<1>;

template <std::size_t W>
struct MaskHash {
  std::size_t operator()(const BitMask<W>& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t x = m.words[i] + h;
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ull;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebull;
      x ^= x >> 31;
      h = x;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Ascending (popcount, numeric value): the canonical storage order for
/// set-function entries, independent of any order direction.
template <std::size_t W>
struct CanonicalLess {
  bool operator()(const BitMask<W>& a, const BitMask<W>& b) const {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.value_less(b);
  }
};

}  // namespace belcal
