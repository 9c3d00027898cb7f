#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/order.hpp"
#include "belcal/set_function.hpp"

namespace belcal {

/// Fast Mobius Transform baseline: N butterfly passes over a dense array of
/// 2^N images, O(N 2^N) time. Kept as oracle and benchmark baseline; the
/// focal-point engine exists to avoid this 2^N footprint.
enum class TransformKind { Zeta, Mobius };

inline constexpr std::size_t kFmtMaxFrame = 30;

/// Default cap on a dense working array, in bytes. 2^23 doubles; anything
/// larger must be requested explicitly (--mem-cap-bytes on the CLI).
inline constexpr std::uint64_t kDefaultDenseCapBytes = 64ull << 20;

inline void check_dense_size(std::size_t n_bits, std::uint64_t cap_bytes) {
  if (n_bits > kFmtMaxFrame)
    throw FrameTooLarge("dense transform is gated at 30 frame elements");
  const std::uint64_t bytes = (std::uint64_t{1} << n_bits) * sizeof(double);
  if (bytes > cap_bytes)
    throw FrameTooLarge("dense array of 2^" + std::to_string(n_bits) +
                        " doubles exceeds the memory cap");
}

/// In-place additive FMT. data.size() must be 2^n_bits, indexed by mask value.
inline void fmt(std::span<double> data, std::size_t n_bits, TransformKind kind,
                OrderDirection d,
                std::uint64_t cap_bytes = kDefaultDenseCapBytes) {
  check_dense_size(n_bits, cap_bytes);
  const std::size_t total = std::size_t{1} << n_bits;
  if (data.size() != total)
    throw ValidationError("dense array size does not match 2^N");
  for (std::size_t i = 0; i < n_bits; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t y = 0; y < total; ++y) {
      if (d == OrderDirection::Subset) {
        if (!(y & bit)) continue;
        if (kind == TransformKind::Zeta)
          data[y] += data[y ^ bit];
        else
          data[y] -= data[y ^ bit];
      } else {
        if (y & bit) continue;
        if (kind == TransformKind::Zeta)
          data[y] += data[y | bit];
        else
          data[y] -= data[y | bit];
      }
    }
  }
}

/// Multiplicative variant: product zeta and its inverse, used for the dense
/// weight-function routes. All images must stay nonzero for Mobius.
inline void fmt_multiplicative(std::span<double> data, std::size_t n_bits,
                               TransformKind kind, OrderDirection d,
                               std::uint64_t cap_bytes = kDefaultDenseCapBytes) {
  check_dense_size(n_bits, cap_bytes);
  const std::size_t total = std::size_t{1} << n_bits;
  if (data.size() != total)
    throw ValidationError("dense array size does not match 2^N");
  for (std::size_t i = 0; i < n_bits; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t y = 0; y < total; ++y) {
      const bool active =
          d == OrderDirection::Subset ? (y & bit) != 0 : (y & bit) == 0;
      if (!active) continue;
      const std::size_t partner = d == OrderDirection::Subset ? y ^ bit : y | bit;
      if (kind == TransformKind::Zeta) {
        data[y] *= data[partner];
      } else {
        if (data[partner] == 0.0)
          throw ZeroImage("multiplicative inversion hit a zero image");
        data[y] /= data[partner];
      }
    }
  }
}

/// Dense view of a sparse function, gated by the same cap as fmt().
template <std::size_t W>
std::vector<double> to_dense(const SetFunction<W>& f,
                             std::uint64_t cap_bytes = kDefaultDenseCapBytes) {
  const std::size_t n = f.frame().size();
  check_dense_size(n, cap_bytes);
  std::vector<double> data(std::size_t{1} << n, f.neutral());
  for (const auto& [k, v] : f.entries()) data[k.low_word()] = v;
  return data;
}

template <std::size_t W>
SetFunction<W> from_dense(const Frame& frame, std::span<const double> data,
                          double neutral) {
  SetFunction<W> f(frame, neutral);
  for (std::size_t i = 0; i < data.size(); ++i)
    f.set(BitMask<W>::from_low_word(i), data[i]);
  return f;
}

}  // namespace belcal
