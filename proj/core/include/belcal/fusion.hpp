#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/representations.hpp"

namespace belcal {

/// Unnormalized conjunctive rule: mass products accumulate on pairwise
/// intersections. The result may put mass on the empty set; it still sums
/// to 1. O(|supp m1| * |supp m2|).
template <std::size_t W>
SetFunction<W> conjunctive_combine(const MassFunction<W>& m1,
                                   const MassFunction<W>& m2) {
  if (!(m1.frame() == m2.frame()))
    throw ValidationError("combined sources must share a frame");
  SetFunction<W> out(m1.frame(), 0.0);
  for (const auto& [s1, v1] : m1.values().entries())
    for (const auto& [s2, v2] : m2.values().entries()) out.add(s1 & s2, v1 * v2);
  return out;
}

/// Same combination routed through commonalities on the meet-closure of the
/// joint support: pointwise q1*q2, then the efficient Mobius inversion.
template <std::size_t W>
SetFunction<W> conjunctive_combine_via_commonalities(
    const MassFunction<W>& m1, const MassFunction<W>& m2) {
  if (!(m1.frame() == m2.frame()))
    throw ValidationError("combined sources must share a frame");
  std::vector<BitMask<W>> gens = m1.support();
  for (const auto& s : m2.support()) gens.push_back(s);
  auto fp =
      FocalPointSet<W>::closure(m1.frame(), gens, OrderDirection::Superset);
  auto q1 = zeta_on_focal_points(fp, m1.values());
  auto q2 = zeta_on_focal_points(fp, m2.values());
  for (std::size_t i = 0; i < q1.size(); ++i) q1[i] *= q2[i];
  return efficient_mobius(fp, q1);
}

namespace detail {

template <std::size_t W>
MassFunction<W> dempster_normalize(SetFunction<W> combined) {
  const double conflict = combined.at(BitMask<W>::none());
  const double k = 1.0 - conflict;
  if (k <= kSupportEps)
    throw TotalConflict("sources are fully conflicting (K = " +
                        std::to_string(k) + ")");
  SetFunction<W> out(combined.frame(), 0.0);
  for (const auto& [s, v] : combined.entries())
    if (!s.empty()) out.set(s, v / k);
  return MassFunction<W>(std::move(out));
}

}  // namespace detail

/// Dempster's rule: the conjunctive rule scaled by 1/K with the conflict
/// mass removed, K = 1 - (m1 conj m2)({}).
template <std::size_t W>
MassFunction<W> dempster_combine(const MassFunction<W>& m1,
                                 const MassFunction<W>& m2) {
  return detail::dempster_normalize(conjunctive_combine(m1, m2));
}

template <std::size_t W>
MassFunction<W> dempster_combine_via_commonalities(const MassFunction<W>& m1,
                                                   const MassFunction<W>& m2) {
  return detail::dempster_normalize(
      conjunctive_combine_via_commonalities(m1, m2));
}

/// Disjunctive rule: products accumulate on pairwise unions.
template <std::size_t W>
MassFunction<W> disjunctive_combine(const MassFunction<W>& m1,
                                    const MassFunction<W>& m2) {
  if (!(m1.frame() == m2.frame()))
    throw ValidationError("combined sources must share a frame");
  SetFunction<W> out(m1.frame(), 0.0);
  for (const auto& [s1, v1] : m1.values().entries())
    for (const auto& [s2, v2] : m2.values().entries()) out.add(s1 | s2, v1 * v2);
  return MassFunction<W>(std::move(out));
}

/// Discount specification: scale all masses by alpha and hand the complement
/// to a target superset of the support union.
template <std::size_t W>
struct DiscountSpec {
  double alpha;
  BitMask<W> target;
};

template <std::size_t W>
MassFunction<W> discount(const MassFunction<W>& m, const DiscountSpec<W>& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw ValidationError("discount factor must lie strictly inside (0,1)");
  if (!m.support_union().subset_of(spec.target))
    throw InvalidTarget("discount target must contain the union of the support");
  SetFunction<W> out(m.frame(), 0.0);
  for (const auto& [s, v] : m.values().entries()) out.set(s, v * spec.alpha);
  out.add(spec.target, 1.0 - spec.alpha);
  return MassFunction<W>(std::move(out));
}

/// Conjunctive decomposition over C = the union of the support, defined
/// whenever C itself carries mass. With the whole frame in the support this
/// is the classic decomposition.
template <std::size_t W>
WeightFunction<W> generalized_conjunctive_decomposition(
    const MassFunction<W>& m) {
  const auto c = m.support_union();
  if (!m.values().contains(c))
    throw MaximumMissing(
        "the union of the support carries no mass; discount first");
  return commonality_to_conjunctive_weights(mass_to_commonality(m), c);
}

/// Projection onto the subsets of C: mass of B moves to B intersect C.
template <std::size_t W>
MassFunction<W> project_mass(const MassFunction<W>& m, const BitMask<W>& c) {
  SetFunction<W> out(m.frame(), 0.0);
  for (const auto& [s, v] : m.values().entries()) out.add(s & c, v);
  return MassFunction<W>(std::move(out));
}

/// Pointwise fusion operator applied to decomposition weights. The minimum
/// gives the cautious rule; the product reproduces conjunctive fusion.
using WeightCombiner = std::function<double(double, double)>;

inline double min_weight_combiner(double a, double b) { return std::min(a, b); }
inline double product_weight_combiner(double a, double b) { return a * b; }

struct WeightFusionOptions {
  /// Discount factor applied automatically when a source's commonality
  /// vanishes on the common domain. Reported, never silent.
  double alpha = 0.999;
  bool allow_discount = true;
};

/// Everything the weight-level fusion produced, kept for reporting: the
/// common domain, per-source discounting, both weight functions, the fused
/// weights, and the recomposed commonality and mass.
template <std::size_t W>
struct WeightFusionResult {
  BitMask<W> domain;
  bool discounted1 = false;
  bool discounted2 = false;
  double alpha = 1.0;
  WeightFunction<W> w1, w2, fused;
  CommonalityFunction<W> q;
  MassFunction<W> mass;
};

/// Weight-level fusion over the common domain C = union(supp m1) intersect
/// union(supp m2): project both sources onto 2^C through their
/// commonalities, decompose, combine the weights pointwise (the boundary
/// weight on C is set so the product normalizes), and recompose. The result
/// keeps any mass on the empty set; normalization stays a separate step.
template <std::size_t W>
WeightFusionResult<W> combine_by_weights(const MassFunction<W>& m1,
                                         const MassFunction<W>& m2,
                                         const WeightCombiner& combiner,
                                         const WeightFusionOptions& opts = {}) {
  if (!(m1.frame() == m2.frame()))
    throw ValidationError("combined sources must share a frame");
  const auto c = m1.support_union() & m2.support_union();

  bool discounted1 = false, discounted2 = false;
  auto weights_over_domain = [&](const MassFunction<W>& m,
                                 bool& discounted) -> WeightFunction<W> {
    auto q = mass_to_commonality(m);
    if (q.at(c) > kSupportEps) return commonality_to_conjunctive_weights(q, c);
    if (!opts.allow_discount)
      throw ZeroCommonality("source commonality vanishes on the common domain "
                            "and discounting is disabled");
    discounted = true;
    auto softened = discount(m, DiscountSpec<W>{opts.alpha, m.support_union()});
    return commonality_to_conjunctive_weights(mass_to_commonality(softened), c);
  };
  auto w1 = weights_over_domain(m1, discounted1);
  auto w2 = weights_over_domain(m2, discounted2);

  std::vector<BitMask<W>> pts(w1.fp.points().begin(), w1.fp.points().end());
  for (const auto& p : w2.fp.points()) pts.push_back(p);
  auto fp =
      FocalPointSet<W>::closure(m1.frame(), pts, OrderDirection::Superset);
  std::vector<double> values(fp.size(), 1.0);
  double product = 1.0;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (fp.point(i) == c) continue;
    values[i] = combiner(w1.at(fp.point(i)), w2.at(fp.point(i)));
    product *= values[i];
  }
  values[fp.index_of(c)] = 1.0 / product;
  WeightFunction<W> fused{WeightKind::Conjunctive, std::move(fp),
                          std::move(values), c};

  auto q = weights_to_commonality(fused);
  auto mass = commonality_to_mass(q);
  return WeightFusionResult<W>{c,
                               discounted1,
                               discounted2,
                               opts.alpha,
                               std::move(w1),
                               std::move(w2),
                               std::move(fused),
                               std::move(q),
                               std::move(mass)};
}

/// The cautious conjunctive rule: weight fusion with the pointwise minimum.
/// Suited to non-independent sources; idempotent up to projection on the
/// common domain.
template <std::size_t W>
WeightFusionResult<W> cautious_combine(const MassFunction<W>& m1,
                                       const MassFunction<W>& m2,
                                       const WeightFusionOptions& opts = {}) {
  return combine_by_weights(m1, m2, min_weight_combiner, opts);
}

}  // namespace belcal
