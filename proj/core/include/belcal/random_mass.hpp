#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "belcal/representations.hpp"

namespace belcal {

struct RandomMassOptions {
  /// Force the full frame (resp. the empty set) into the support; several
  /// transforms are only globally defined with mass there.
  bool include_frame = false;
  bool include_empty = false;
  /// Smallest raw value before normalization, kept well above the support
  /// tolerance so generated supports are stable.
  double min_value = 0.05;
};

/// Deterministic random mass function: `support_size` distinct focal sets
/// with normalized positive values. Identical (frame, rng state, options)
/// give identical masses.
template <std::size_t W>
MassFunction<W> random_mass(const Frame& frame, std::size_t support_size,
                            std::mt19937_64& rng,
                            const RandomMassOptions& opts = {}) {
  const std::size_t n = frame.size();
  std::uniform_real_distribution<double> value(opts.min_value, 1.0);
  std::vector<BitMask<W>> sets;
  auto push_unique = [&](const BitMask<W>& m) {
    for (const auto& s : sets)
      if (s == m) return false;
    sets.push_back(m);
    return true;
  };
  if (opts.include_frame) push_unique(frame.full_mask<W>());
  if (opts.include_empty) push_unique(BitMask<W>::none());
  while (sets.size() < support_size) {
    BitMask<W> m;
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1) m.set(i);
    if (m.empty() && !opts.include_empty) continue;
    push_unique(m);
  }
  SetFunction<W> values(frame, 0.0);
  for (const auto& s : sets) values.set(s, value(rng));
  return MassFunction<W>(std::move(values),
                         MassFunction<W>::Normalize::Renormalize);
}

}  // namespace belcal
