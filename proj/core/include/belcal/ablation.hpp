#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/focal_points.hpp"
#include "belcal/focal_transforms.hpp"
#include "belcal/representations.hpp"

namespace belcal {

/// Mass-shaped values that may dip below zero: ablating a weight from a
/// decomposition containing inverse simple support functions legitimately
/// produces negative images. The total still sums to 1.
template <std::size_t W>
struct SignedMass {
  SetFunction<W> values;
  bool is_valid_mass = true;

  double at(const BitMask<W>& x) const { return values.at(x); }
  double total() const { return values.sum(); }
};

/// Generic information flow from a multiplicative input h to its product
/// zeta g and additive Mobius f when one image h(x) changes:
///   g'(y) = g(y) h'(x)/h(x) above x, unchanged elsewhere;
///   f'(y) = f(y) + [h'(x)/h(x) - 1] f_up(y) above x, unchanged elsewhere,
/// with f_up the Mobius transform of g on the focal points above x.
template <std::size_t W>
struct PerturbResult {
  std::vector<double> g_prime;  // aligned with fp.points()
  SetFunction<W> f_prime;
};

template <std::size_t W>
PerturbResult<W> perturb_multiplicative(const SetFunction<W>& h,
                                        const BitMask<W>& x, double new_value,
                                        std::span<const double> g,
                                        const FocalPointSet<W>& fp) {
  if (g.size() != fp.size())
    throw IncompleteInput("expected one zeta image per focal point");
  const double h_x = h.at(x);
  if (std::abs(h_x) <= kSupportEps || std::abs(new_value) <= kSupportEps)
    throw ZeroImage("perturbed image and its replacement must be nonzero");
  const std::size_t xi = fp.index_of(x);
  const OrderDirection d = fp.direction();
  const double ratio = new_value / h_x;

  std::vector<double> g_prime(g.begin(), g.end());
  for (std::size_t i = xi; i < fp.size(); ++i)
    if (leq(x, fp.point(i), d)) g_prime[i] *= ratio;

  // f and the Mobius transform of g restricted to the up-set of x. The
  // up-set within fp is join-closed, so the plain recursion applies.
  std::vector<double> f(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    double acc = g[i];
    for (std::size_t j = 0; j < i; ++j)
      if (leq(fp.point(j), fp.point(i), d)) acc -= f[j];
    f[i] = acc;
  }
  std::vector<std::size_t> up;
  for (std::size_t i = xi; i < fp.size(); ++i)
    if (leq(x, fp.point(i), d)) up.push_back(i);
  std::vector<double> f_up(up.size());
  for (std::size_t k = 0; k < up.size(); ++k) {
    double acc = g[up[k]];
    for (std::size_t j = 0; j < k; ++j)
      if (leq(fp.point(up[j]), fp.point(up[k]), d)) acc -= f_up[j];
    f_up[k] = acc;
  }

  SetFunction<W> f_prime(fp.frame(), 0.0);
  for (std::size_t i = 0; i < fp.size(); ++i) f_prime.set(fp.point(i), f[i]);
  for (std::size_t k = 0; k < up.size(); ++k)
    f_prime.set(fp.point(up[k]), f[up[k]] + (ratio - 1.0) * f_up[k]);
  return PerturbResult<W>{std::move(g_prime), std::move(f_prime)};
}

template <std::size_t W>
struct AblationResult {
  SignedMass<W> mass;
  std::vector<double> q_prime;  // aligned with the commonality's focal points
  double old_weight = 0.0;
  double new_weight = 0.0;
};

/// Propagates a single conjunctive-weight change through q and m with the
/// DST normalization folded in: entries under x blend with the projection
/// of m onto x, everything else scales by w'(x)/w(x). Projections are
/// derived from existing q images and cached per target within the context.
template <std::size_t W>
class AblationContext {
 public:
  using Mask = BitMask<W>;

  AblationContext(MassFunction<W> m, CommonalityFunction<W> q,
                  WeightFunction<W> w)
      : m_(std::move(m)), q_(std::move(q)), w_(std::move(w)) {
    if (w_.kind != WeightKind::Conjunctive)
      throw ValidationError("ablation is defined on conjunctive weights");
  }

  const MassFunction<W>& mass() const { return m_; }
  const CommonalityFunction<W>& commonality() const { return q_; }
  const WeightFunction<W>& weights() const { return w_; }

  AblationResult<W> ablate(const Mask& x, double new_weight) {
    ensure_ablatable(x);
    const double old_weight = w_.at(x);
    if (old_weight <= 0.0 || new_weight <= 0.0)
      throw ZeroWeight("weights must stay strictly positive");
    const double ratio = new_weight / old_weight;

    const auto& fp = q_.fp;
    std::vector<double> q_prime(fp.size());
    for (std::size_t i = 0; i < fp.size(); ++i)
      q_prime[i] = leq(x, fp.point(i), OrderDirection::Superset)
                       ? q_.values[i]
                       : ratio * q_.values[i];

    const SetFunction<W>& projected = projection(x);
    SetFunction<W> values(m_.frame(), 0.0);
    for (std::size_t i = 0; i < fp.size(); ++i) {
      const auto& p = fp.point(i);
      double v = ratio * m_.at(p);
      if (leq(x, p, OrderDirection::Superset))
        v += (1.0 - ratio) * projected.at(p);
      values.set(p, v);
    }
    bool valid = true;
    for (const auto& [k, v] : values.entries())
      if (v < -kMassTol) valid = false;
    return AblationResult<W>{SignedMass<W>{std::move(values), valid},
                             std::move(q_prime), old_weight, new_weight};
  }

  /// Projection of m onto the subsets of x: the Mobius transform of q on the
  /// focal points under x, reusing the stored q images.
  const SetFunction<W>& projection(const Mask& x) {
    auto it = projection_cache_.find(x);
    if (it != projection_cache_.end()) return it->second;
    const auto& fp = q_.fp;
    std::vector<std::size_t> under;
    for (std::size_t i = 0; i < fp.size(); ++i)
      if (leq(x, fp.point(i), OrderDirection::Superset)) under.push_back(i);
    std::vector<double> proj(under.size());
    for (std::size_t k = 0; k < under.size(); ++k) {
      double acc = q_.values[under[k]];
      for (std::size_t j = 0; j < k; ++j)
        if (leq(fp.point(under[j]), fp.point(under[k]),
                OrderDirection::Superset))
          acc -= proj[j];
      proj[k] = acc;
    }
    SetFunction<W> out(m_.frame(), 0.0);
    for (std::size_t k = 0; k < under.size(); ++k)
      out.set(fp.point(under[k]), proj[k]);
    return projection_cache_.emplace(x, std::move(out)).first->second;
  }

 private:
  void ensure_ablatable(const Mask& x) const {
    if (x == w_.top)
      throw NotAFocalPoint(
          "the top weight only absorbs normalization and cannot be ablated");
    auto nn = w_.nonneutral_points();
    if (nn.empty())
      throw NotAFocalPoint("the decomposition has no nonneutral weights");
    auto cl = FocalPointSet<W>::closure(m_.frame(), nn,
                                        OrderDirection::Superset);
    if (!cl.contains(x))
      throw NotAFocalPoint("not a focal point of the weight support: " +
                           m_.frame().format_set(x));
  }

  MassFunction<W> m_;
  CommonalityFunction<W> q_;
  WeightFunction<W> w_;
  std::unordered_map<Mask, SetFunction<W>, MaskHash<W>> projection_cache_;
};

/// One-shot ablation without a reusable context.
template <std::size_t W>
AblationResult<W> ablate_weight(const MassFunction<W>& m,
                                const CommonalityFunction<W>& q,
                                const WeightFunction<W>& w, const BitMask<W>& x,
                                double new_weight) {
  AblationContext<W> ctx(m, q, w);
  return ctx.ablate(x, new_weight);
}

}  // namespace belcal
