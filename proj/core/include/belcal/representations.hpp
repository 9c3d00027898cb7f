#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/focal_points.hpp"
#include "belcal/focal_transforms.hpp"
#include "belcal/set_function.hpp"

namespace belcal {

/// Sum-to-one tolerance for in-memory mass functions.
inline constexpr double kMassTol = 1e-9;

/// Nonnegative set function summing to 1. Mass on the empty set is allowed
/// (open world); Dempster normalization is a separate explicit step.
template <std::size_t W>
class MassFunction {
 public:
  using Mask = BitMask<W>;

  enum class Normalize { Off, Renormalize };

  explicit MassFunction(SetFunction<W> values,
                        Normalize norm = Normalize::Off)
      : values_(std::move(values)) {
    if (values_.neutral() != 0.0)
      throw ValidationError("mass values must use the additive neutral 0");
    double total = 0.0;
    for (const auto& [k, v] : values_.entries()) {
      if (v < -kMassTol)
        throw NotAMass("negative mass " + std::to_string(v) + " on " +
                       values_.frame().format_set(k));
      total += v;
    }
    if (norm == Normalize::Renormalize) {
      if (total <= kMassTol) throw NotAMass("cannot renormalize zero total mass");
      SetFunction<W> scaled(values_.frame(), 0.0);
      for (const auto& [k, v] : values_.entries()) scaled.set(k, v / total);
      values_ = std::move(scaled);
    } else if (std::abs(total - 1.0) > kMassTol) {
      throw NotAMass("mass total " + std::to_string(total) + " is not 1");
    }
    // Negative noise inside the tolerance cannot stay (support is positive);
    // anything above the support tolerance is kept as genuine mass.
    SetFunction<W> pruned(values_.frame(), 0.0);
    for (const auto& [k, v] : values_.entries())
      if (v > kSupportEps) pruned.set(k, v);
    values_ = std::move(pruned);
  }

  const Frame& frame() const { return values_.frame(); }
  const SetFunction<W>& values() const { return values_; }
  double at(const Mask& x) const { return values_.at(x); }
  std::vector<Mask> support() const { return values_.support(); }
  std::size_t support_size() const { return values_.support_size(); }

  /// Union of all focal sets; the natural decomposition domain.
  Mask support_union() const {
    Mask u;
    for (const auto& [k, v] : values_.entries()) u = u | k;
    return u;
  }

  Mask support_intersection() const {
    Mask u = frame().template full_mask<W>();
    for (const auto& [k, v] : values_.entries()) u = u & k;
    return u;
  }

 private:
  SetFunction<W> values_;
};

/// Commonality: the zeta transform of the mass in the superset order, stored
/// on the meet-closure of the support. Everything else is determined lazily.
template <std::size_t W>
struct CommonalityFunction {
  FocalPointSet<W> fp;
  std::vector<double> values;

  double at_point(std::size_t i) const { return values[i]; }

  /// Image anywhere in 2^N through the focal points.
  double at(const BitMask<W>& y) const { return extend_zeta(fp, values, 0.0, y); }
};

/// Implicability: the dual zeta transform in the subset order, stored on the
/// join-closure of the support.
template <std::size_t W>
struct ImplicabilityFunction {
  FocalPointSet<W> fp;
  std::vector<double> values;

  double at_point(std::size_t i) const { return values[i]; }
  double at(const BitMask<W>& y) const { return extend_zeta(fp, values, 0.0, y); }
};

enum class WeightKind { Conjunctive, Disjunctive };

/// Decomposition weights with the inverse-product convention: the product of
/// w(x)^-1 over x above y reproduces the zeta transform. Implicitly 1 off the
/// stored focal points. `top` is the decomposition domain boundary whose
/// weight absorbs normalization.
template <std::size_t W>
struct WeightFunction {
  WeightKind kind = WeightKind::Conjunctive;
  FocalPointSet<W> fp;
  std::vector<double> values;
  BitMask<W> top;

  double at(const BitMask<W>& y) const {
    return fp.contains(y) ? values[fp.index_of(y)] : 1.0;
  }

  /// Points whose weight differs from 1 (the support of w - 1).
  std::vector<BitMask<W>> nonneutral_points(double eps = kMassTol) const {
    std::vector<BitMask<W>> out;
    for (std::size_t i = 0; i < fp.size(); ++i)
      if (std::abs(values[i] - 1.0) > eps) out.push_back(fp.point(i));
    return out;
  }
};

template <std::size_t W>
CommonalityFunction<W> mass_to_commonality(const MassFunction<W>& m) {
  auto fp = FocalPointSet<W>::closure(m.frame(), m.support(),
                                      OrderDirection::Superset);
  auto values = zeta_on_focal_points(fp, m.values());
  return CommonalityFunction<W>{std::move(fp), std::move(values)};
}

template <std::size_t W>
ImplicabilityFunction<W> mass_to_implicability(const MassFunction<W>& m) {
  auto fp =
      FocalPointSet<W>::closure(m.frame(), m.support(), OrderDirection::Subset);
  auto values = zeta_on_focal_points(fp, m.values());
  return ImplicabilityFunction<W>{std::move(fp), std::move(values)};
}

template <std::size_t W>
MassFunction<W> commonality_to_mass(const CommonalityFunction<W>& q) {
  return MassFunction<W>(efficient_mobius(q.fp, q.values));
}

template <std::size_t W>
MassFunction<W> implicability_to_mass(const ImplicabilityFunction<W>& b) {
  return MassFunction<W>(efficient_mobius(b.fp, b.values));
}

namespace detail {

/// Common core of both weight computations: restrict the zeta images to the
/// closure of {p join top} plus top, invert multiplicatively, flip into the
/// inverse-weight convention.
template <std::size_t W>
WeightFunction<W> weights_from_zeta(const FocalPointSet<W>& fp,
                                    std::span<const double> values,
                                    const BitMask<W>& top, WeightKind kind) {
  const OrderDirection d = fp.direction();
  std::vector<BitMask<W>> pts;
  pts.reserve(fp.size() + 1);
  pts.push_back(top);
  for (const auto& p : fp.points()) pts.push_back(join(p, top, d));
  auto wfp = FocalPointSet<W>::closure(fp.frame(), pts, d);
  std::vector<double> g(wfp.size());
  for (std::size_t i = 0; i < wfp.size(); ++i) {
    g[i] = extend_zeta(fp, values, 0.0, wfp.point(i));
    if (std::abs(g[i]) <= kSupportEps)
      throw ZeroCommonality("zeta image is zero on " +
                            fp.frame().format_set(wfp.point(i)) +
                            "; weights are undefined there");
  }
  auto h = efficient_mobius_multiplicative(wfp, g);
  std::vector<double> w(wfp.size());
  for (std::size_t i = 0; i < wfp.size(); ++i) w[i] = 1.0 / h.at(wfp.point(i));
  return WeightFunction<W>{kind, std::move(wfp), std::move(w), top};
}

}  // namespace detail

/// Conjunctive weights on the meet-closure within the domain below `top`:
/// w(y) = [q(y) * prod of w(s) over focal points s strictly above y]^-1.
template <std::size_t W>
WeightFunction<W> commonality_to_conjunctive_weights(
    const CommonalityFunction<W>& q, const BitMask<W>& top) {
  return detail::weights_from_zeta(q.fp, q.values, top, WeightKind::Conjunctive);
}

/// Exact dual, with `bottom` playing the role of the domain boundary.
template <std::size_t W>
WeightFunction<W> implicability_to_disjunctive_weights(
    const ImplicabilityFunction<W>& b, const BitMask<W>& bottom) {
  return detail::weights_from_zeta(b.fp, b.values, bottom,
                                   WeightKind::Disjunctive);
}

template <std::size_t W>
CommonalityFunction<W> weights_to_commonality(const WeightFunction<W>& w) {
  if (w.kind != WeightKind::Conjunctive)
    throw ValidationError("commonalities come from conjunctive weights");
  std::vector<double> h(w.values.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (w.values[i] == 0.0 || !std::isfinite(w.values[i]))
      throw ZeroImage("weights must be positive and finite");
    h[i] = 1.0 / w.values[i];
  }
  auto g = product_zeta_on_focal_points(w.fp, h);
  return CommonalityFunction<W>{w.fp, std::move(g)};
}

template <std::size_t W>
ImplicabilityFunction<W> weights_to_implicability(const WeightFunction<W>& v) {
  if (v.kind != WeightKind::Disjunctive)
    throw ValidationError("implicabilities come from disjunctive weights");
  std::vector<double> h(v.values.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (v.values[i] == 0.0 || !std::isfinite(v.values[i]))
      throw ZeroImage("weights must be positive and finite");
    h[i] = 1.0 / v.values[i];
  }
  auto g = product_zeta_on_focal_points(v.fp, h);
  return ImplicabilityFunction<W>{v.fp, std::move(g)};
}

/// Recomposition; NotAMass propagates when the weights do not describe a
/// valid mass function.
template <std::size_t W>
MassFunction<W> weights_to_mass(const WeightFunction<W>& w) {
  if (w.kind == WeightKind::Conjunctive)
    return commonality_to_mass(weights_to_commonality(w));
  return implicability_to_mass(weights_to_implicability(w));
}

/// Belief and plausibility, evaluated per query through the implicability:
/// Bel(y) = b(y) - m({}), Pl(y) = 1 - b(complement of y).
template <std::size_t W>
struct BeliefView {
  ImplicabilityFunction<W> b;
  double mass_on_empty = 0.0;

  double belief(const BitMask<W>& y) const { return b.at(y) - mass_on_empty; }

  double plausibility(const BitMask<W>& y) const {
    return 1.0 - b.at(b.fp.frame().complement(y));
  }
};

template <std::size_t W>
BeliefView<W> belief_view(const MassFunction<W>& m) {
  return BeliefView<W>{mass_to_implicability(m), m.at(BitMask<W>::none())};
}

/// Lossless coarsening: frame elements with identical membership across all
/// focal sets collapse into one super-element; the coarse mass carries the
/// same values on the mapped sets.
template <std::size_t W>
struct Coarsening {
  Frame coarse_frame;
  MassFunction<W> coarse_mass;
  std::vector<std::size_t> group_of;      // fine bit -> coarse bit
  std::vector<BitMask<W>> group_masks;    // coarse bit -> fine elements

  BitMask<W> to_coarse(const BitMask<W>& fine) const {
    BitMask<W> out;
    for (std::size_t g = 0; g < group_masks.size(); ++g)
      if (group_masks[g].subset_of(fine)) out.set(g);
    return out;
  }

  BitMask<W> expand(const BitMask<W>& coarse) const {
    BitMask<W> out;
    coarse.for_each_bit([&](std::size_t g) { out = out | group_masks[g]; });
    return out;
  }
};

template <std::size_t W>
Coarsening<W> lossless_coarsen(const MassFunction<W>& m) {
  const std::size_t n = m.frame().size();
  const auto supp = m.support();
  // Membership signature of each element across the focal sets.
  std::vector<std::vector<bool>> signature(n, std::vector<bool>(supp.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < supp.size(); ++s)
      signature[i][s] = supp[s].test(i);

  std::vector<std::size_t> group_of(n);
  std::vector<BitMask<W>> group_masks;
  std::vector<std::vector<bool>> group_sig;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t g = group_sig.size();
    for (std::size_t k = 0; k < group_sig.size(); ++k)
      if (group_sig[k] == signature[i]) {
        g = k;
        break;
      }
    if (g == group_sig.size()) {
      group_sig.push_back(signature[i]);
      group_masks.push_back(BitMask<W>::none());
      labels.push_back(m.frame().label(i));
    } else {
      labels[g] += "+" + m.frame().label(i);
    }
    group_of[i] = g;
    group_masks[g].set(i);
  }

  Frame coarse_frame(labels);
  SetFunction<W> coarse_values(coarse_frame, 0.0);
  for (const auto& [k, v] : m.values().entries()) {
    BitMask<W> mapped;
    for (std::size_t g = 0; g < group_masks.size(); ++g)
      if (group_masks[g].subset_of(k)) mapped.set(g);
    coarse_values.add(mapped, v);
  }
  return Coarsening<W>{std::move(coarse_frame),
                       MassFunction<W>(std::move(coarse_values)),
                       std::move(group_of), std::move(group_masks)};
}

}  // namespace belcal
