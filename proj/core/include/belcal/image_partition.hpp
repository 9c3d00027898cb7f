#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/focal_points.hpp"
#include "belcal/order.hpp"

namespace belcal {

/// Exhaustive partition checks enumerate 2^N elements and are only run below
/// this frame size.
inline constexpr std::size_t kPartitionCheckMaxFrame = 12;

/// Compact description of a zeta transform: parts of constant image, each
/// given by its minimal and maximal elements. An element belongs to a part
/// when it sits above one of the part's minima and below one of its maxima;
/// the parts must tile the powerset.
template <std::size_t W>
class ImagePartition {
 public:
  using Mask = BitMask<W>;

  struct Part {
    std::vector<Mask> min_elements;
    std::vector<Mask> max_elements;
    double image = 0.0;
  };

  ImagePartition(Frame frame, OrderDirection d, std::vector<Part> parts,
                 double neutral)
      : frame_(std::move(frame)),
        direction_(d),
        parts_(std::move(parts)),
        neutral_(neutral) {}

  const Frame& frame() const { return frame_; }
  OrderDirection direction() const { return direction_; }
  std::span<const Part> parts() const { return parts_; }
  double neutral() const { return neutral_; }

  bool covers(const Part& part, const Mask& y) const {
    bool above_min = false, below_max = false;
    for (const auto& m : part.min_elements)
      if (leq(m, y, direction_)) {
        above_min = true;
        break;
      }
    for (const auto& m : part.max_elements)
      if (leq(y, m, direction_)) {
        below_max = true;
        break;
      }
    return above_min && below_max;
  }

  /// Image of y through the part covering it.
  double image_at(const Mask& y) const {
    for (const auto& part : parts_)
      if (covers(part, y)) return part.image;
    throw InvalidPartition("no part covers " + frame_.format_set(y));
  }

  /// G: the union of the parts' minimal elements.
  std::vector<Mask> all_min_elements() const {
    std::vector<Mask> out;
    std::unordered_map<Mask, bool, MaskHash<W>> seen;
    for (const auto& part : parts_)
      for (const auto& m : part.min_elements)
        if (seen.emplace(m, true).second) out.push_back(m);
    return out;
  }

  /// Exhaustive cover check: every element of 2^N lies in exactly one part.
  /// Gated at 12 frame elements.
  void validate() const {
    const std::size_t n = frame_.size();
    if (n > kPartitionCheckMaxFrame)
      throw FrameTooLarge("partition validation enumerates 2^N, gated at 12");
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t yv = 0; yv < total; ++yv) {
      const auto y = Mask::from_low_word(yv);
      std::size_t hits = 0;
      for (const auto& part : parts_)
        if (covers(part, y)) ++hits;
      if (hits != 1)
        throw InvalidPartition("element " + frame_.format_set(y) +
                               " is covered by " + std::to_string(hits) +
                               " parts");
    }
  }

 private:
  Frame frame_;
  OrderDirection direction_;
  std::vector<Part> parts_;
  double neutral_;
};

/// Recovers a focal-point superset from an image partition alone, without
/// knowing the support: with M the order minimum when its image is neutral
/// and G the union of part minima, the closure of {x v a : x in G\M, a in M}
/// united with G\M contains the join-closure of the support.
template <std::size_t W>
FocalPointSet<W> focal_points_from_partition(const ImagePartition<W>& gp) {
  if (gp.frame().size() <= kPartitionCheckMaxFrame) gp.validate();
  const OrderDirection d = gp.direction();
  const auto bottom = order_bottom<W>(gp.frame().size(), d);
  std::vector<BitMask<W>> m_set;
  if (std::abs(gp.image_at(bottom) - gp.neutral()) <= kSupportEps)
    m_set.push_back(bottom);

  std::vector<BitMask<W>> g_minus_m;
  for (const auto& x : gp.all_min_elements()) {
    bool in_m = false;
    for (const auto& a : m_set)
      if (x == a) in_m = true;
    if (!in_m) g_minus_m.push_back(x);
  }

  std::vector<BitMask<W>> generators = g_minus_m;
  for (const auto& x : g_minus_m)
    for (const auto& a : m_set) generators.push_back(join(x, a, d));
  // EmptyGenerators propagates when the partition describes the zero
  // function; callers treat that as an identically-neutral input.
  return FocalPointSet<W>::closure(gp.frame(), generators, d);
}

/// Nonnegative shortcut: when the underlying function cannot cancel, the part
/// minima outside M already contain every focal point; no closure needed.
template <std::size_t W>
std::vector<BitMask<W>> focal_points_from_partition_nonneg(
    const ImagePartition<W>& gp) {
  const OrderDirection d = gp.direction();
  const auto bottom = order_bottom<W>(gp.frame().size(), d);
  const bool bottom_neutral =
      std::abs(gp.image_at(bottom) - gp.neutral()) <= kSupportEps;
  std::vector<BitMask<W>> out;
  for (const auto& x : gp.all_min_elements())
    if (!(bottom_neutral && x == bottom)) out.push_back(x);
  return out;
}

/// Test oracle for the level partition: assigns every element of 2^N an id
/// shared exactly by the elements with the same lower closure in S. Ids are
/// numbered in first-encounter order over ascending mask values.
template <std::size_t W>
std::unordered_map<BitMask<W>, std::size_t, MaskHash<W>> level_partition_oracle(
    const Frame& frame, std::span<const BitMask<W>> s, OrderDirection d) {
  const std::size_t n = frame.size();
  if (n > kPartitionCheckMaxFrame)
    throw FrameTooLarge("level partition oracle enumerates 2^N, gated at 12");
  std::unordered_map<BitMask<W>, std::size_t, MaskHash<W>> out;
  std::map<std::vector<std::uint64_t>, std::size_t> class_ids;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t yv = 0; yv < total; ++yv) {
    const auto y = BitMask<W>::from_low_word(yv);
    std::vector<std::uint64_t> closure_key((s.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (leq(s[i], y, d)) closure_key[i / 64] |= std::uint64_t{1} << (i % 64);
    auto [it, inserted] = class_ids.emplace(closure_key, class_ids.size());
    out.emplace(y, it->second);
  }
  return out;
}

/// Builds the level partition of S as an image partition of g, computing each
/// part's minimal/maximal elements by enumeration. Intended for tests and
/// small frames; the image must be constant per level class, which holds
/// whenever S contains the support of g's Mobius transform.
template <std::size_t W>
ImagePartition<W> level_image_partition(
    const Frame& frame, std::span<const BitMask<W>> s, OrderDirection d,
    const std::function<double(const BitMask<W>&)>& g, double neutral) {
  auto ids = level_partition_oracle<W>(frame, s, d);
  std::size_t n_classes = 0;
  for (const auto& [y, id] : ids) n_classes = std::max(n_classes, id + 1);
  std::vector<std::vector<BitMask<W>>> members(n_classes);
  const std::uint64_t total = std::uint64_t{1} << frame.size();
  for (std::uint64_t yv = 0; yv < total; ++yv) {
    const auto y = BitMask<W>::from_low_word(yv);
    members[ids.at(y)].push_back(y);
  }
  std::vector<typename ImagePartition<W>::Part> parts;
  parts.reserve(n_classes);
  for (const auto& cls : members) {
    typename ImagePartition<W>::Part part;
    part.image = g(cls.front());
    for (const auto& y : cls) {
      if (std::abs(g(y) - part.image) > 1e-9)
        throw InvalidPartition("image is not constant on a level class");
      bool is_min = true, is_max = true;
      for (const auto& z : cls) {
        if (z == y) continue;
        if (leq(z, y, d)) is_min = false;
        if (leq(y, z, d)) is_max = false;
      }
      if (is_min) part.min_elements.push_back(y);
      if (is_max) part.max_elements.push_back(y);
    }
    parts.push_back(std::move(part));
  }
  return ImagePartition<W>(frame, d, std::move(parts), neutral);
}

}  // namespace belcal
