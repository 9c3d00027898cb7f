#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/frame.hpp"
#include "belcal/order.hpp"

namespace belcal {

/// The join-closure of a generating set: the smallest set of masks containing
/// the generators and closed under pairwise join in the given direction.
/// These are the focal points: the only places where a zeta transform and its
/// Mobius transform need images for both to be fully determined everywhere.
///
/// Points are kept in ascending (order rank, numeric value) order, a linear
/// extension of the direction order, so any point's predecessors in the
/// vector include everything below it.
template <std::size_t W>
class FocalPointSet {
 public:
  using Mask = BitMask<W>;

  /// Provenance of one point: generators carry {-1, -1}; a derived point
  /// records one witnessing pair of points whose join produced it.
  struct Origin {
    int left = -1;
    int right = -1;
    bool is_generator() const { return left < 0; }
  };

  /// Double-loop closure: the outer loop walks the generators, the inner one
  /// walks the points found so far. Joins of comparable pairs are skipped
  /// (the join would be one of the two). O(|closure| * |S|) joins.
  static FocalPointSet closure(const Frame& frame, std::span<const Mask> gens,
                               OrderDirection d) {
    if (gens.empty())
      throw EmptyGenerators("closure of an empty generating set");

    std::vector<Mask> points;
    std::vector<Origin> origins;
    std::unordered_map<Mask, std::size_t, MaskHash<W>> seen;
    auto insert = [&](const Mask& m, Origin o) {
      if (seen.emplace(m, points.size()).second) {
        points.push_back(m);
        origins.push_back(o);
      }
    };
    std::vector<Mask> unique_gens;
    for (const auto& g : gens) {
      if (!seen.count(g)) unique_gens.push_back(g);
      insert(g, Origin{});
    }
    for (const auto& g : unique_gens) {
      const int g_idx = static_cast<int>(seen.at(g));
      for (std::size_t k = 0; k < points.size(); ++k) {
        const Mask p = points[k];
        if (leq(g, p, d) || leq(p, g, d)) continue;
        insert(join(g, p, d), Origin{g_idx, static_cast<int>(k)});
      }
    }

    FocalPointSet fp(frame, d);
    fp.generators_ = std::move(unique_gens);

    // Sort into canonical order, remapping the provenance indices.
    std::vector<std::size_t> perm(points.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    DirectionLess<W> less{frame.size(), d};
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return less(points[a], points[b]);
    });
    std::vector<int> where(points.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
      where[perm[i]] = static_cast<int>(i);
    fp.points_.reserve(points.size());
    fp.origins_.reserve(points.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      fp.points_.push_back(points[perm[i]]);
      Origin o = origins[perm[i]];
      if (!o.is_generator()) {
        o.left = where[o.left];
        o.right = where[o.right];
      }
      fp.origins_.push_back(o);
    }
    for (std::size_t i = 0; i < fp.points_.size(); ++i)
      fp.index_.emplace(fp.points_[i], i);
    return fp;
  }

  /// Wraps a set already expected to be join-closed (e.g. points read back
  /// from a file); rejects sets whose closure would grow.
  static FocalPointSet from_closed_points(const Frame& frame,
                                          std::vector<Mask> points,
                                          OrderDirection d) {
    auto fp = closure(frame, std::span<const Mask>(points), d);
    if (fp.size() != points.size())
      throw ValidationError("point set is not join-closed");
    return fp;
  }

  const Frame& frame() const { return frame_; }
  OrderDirection direction() const { return direction_; }
  std::span<const Mask> points() const { return points_; }
  std::span<const Mask> generators() const { return generators_; }
  std::span<const Origin> origins() const { return origins_; }
  std::size_t size() const { return points_.size(); }
  const Mask& point(std::size_t i) const { return points_[i]; }

  bool contains(const Mask& m) const { return index_.count(m) != 0; }

  std::size_t index_of(const Mask& m) const {
    auto it = index_.find(m);
    if (it == index_.end())
      throw NotInSet("element is not a focal point: " + frame_.format_set(m));
    return it->second;
  }

  /// Exhaustive pairwise check of the closure invariant.
  bool is_join_closed() const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (!contains(join(points_[i], points_[j], direction_))) return false;
    return true;
  }

 private:
  FocalPointSet(Frame frame, OrderDirection d)
      : frame_(std::move(frame)), direction_(d) {}

  Frame frame_;
  OrderDirection direction_;
  std::vector<Mask> points_;
  std::vector<Mask> generators_;
  std::vector<Origin> origins_;
  std::unordered_map<Mask, std::size_t, MaskHash<W>> index_;
};

/// Closure-operator axioms on a concrete pair of generating sets:
/// extensivity, monotonicity (when S is a subset of S2) and idempotence.
/// The property suites call this with random inputs.
template <std::size_t W>
bool closure_properties_check(const Frame& frame,
                              std::span<const BitMask<W>> s,
                              std::span<const BitMask<W>> s2,
                              OrderDirection d) {
  auto cl = FocalPointSet<W>::closure(frame, s, d);
  for (const auto& g : s)
    if (!cl.contains(g)) return false;

  bool s_in_s2 = !s2.empty();
  for (const auto& g : s) {
    bool found = false;
    for (const auto& h : s2)
      if (g == h) found = true;
    s_in_s2 = s_in_s2 && found;
  }
  if (s_in_s2) {
    auto cl2 = FocalPointSet<W>::closure(frame, s2, d);
    for (const auto& p : cl.points())
      if (!cl2.contains(p)) return false;
  }

  auto cl_again = FocalPointSet<W>::closure(frame, cl.points(), d);
  if (cl_again.size() != cl.size()) return false;
  for (const auto& p : cl.points())
    if (!cl_again.contains(p)) return false;
  return true;
}

}  // namespace belcal
