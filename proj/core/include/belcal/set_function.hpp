#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/frame.hpp"
#include "belcal/mask.hpp"

namespace belcal {

/// Values within this distance of the neutral element are dropped, so the
/// stored key set is exactly the support and closure sizes are deterministic.
inline constexpr double kSupportEps = 1e-12;

/// Sparse real-valued function on the powerset. Only non-neutral images are
/// stored; lookups at absent keys return the neutral (0 when the function
/// plays an additive role, 1 when multiplicative). Entries iterate in
/// ascending (popcount, numeric value) order.
template <std::size_t W>
class SetFunction {
 public:
  using Mask = BitMask<W>;
  using Map = std::map<Mask, double, CanonicalLess<W>>;

  SetFunction(Frame frame, double neutral)
      : frame_(std::move(frame)), neutral_(neutral) {
    if (neutral != 0.0 && neutral != 1.0)
      throw ValidationError("set function neutral must be 0 or 1");
    if (frame_.size() > Mask::max_bits)
      throw FrameTooLarge("mask width too small for this frame");
  }

  const Frame& frame() const { return frame_; }
  double neutral() const { return neutral_; }
  const Map& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  bool contains(const Mask& x) const { return entries_.count(x) != 0; }

  double at(const Mask& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? neutral_ : it->second;
  }

  /// Inserts or overwrites; values within kSupportEps of the neutral erase
  /// the entry instead.
  void set(const Mask& x, double value) {
    if (std::abs(value - neutral_) <= kSupportEps) {
      entries_.erase(x);
    } else {
      entries_[x] = value;
    }
  }

  void add(const Mask& x, double delta) { set(x, at(x) + delta); }

  std::vector<Mask> support() const {
    std::vector<Mask> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
  }

  double sum() const {
    double s = 0.0;
    for (const auto& [k, v] : entries_) s += v;
    return s;
  }

  /// Largest absolute difference over the union of both supports.
  friend double max_abs_diff(const SetFunction& a, const SetFunction& b) {
    double m = 0.0;
    for (const auto& [k, v] : a.entries_) m = std::max(m, std::abs(v - b.at(k)));
    for (const auto& [k, v] : b.entries_) m = std::max(m, std::abs(v - a.at(k)));
    return m;
  }

 private:
  Frame frame_;
  double neutral_;
  Map entries_;
};

}  // namespace belcal
