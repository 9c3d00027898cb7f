#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/focal_points.hpp"
#include "belcal/set_function.hpp"

namespace belcal {

/// Extension of the Mobius function to the sub-poset of focal points:
/// eta(y, y) = 1 and eta(s, y) = -sum over focal points p with s < p <= y of
/// eta(p, y). Coincides with the Mobius function of the sub-poset and with
/// (-1)^(|y|-|s|) when the focal points are the whole powerset.
template <std::size_t W>
struct EtaTable {
  BitMask<W> target;
  std::unordered_map<BitMask<W>, long long, MaskHash<W>> values;

  long long at(const BitMask<W>& s) const {
    auto it = values.find(s);
    if (it == values.end())
      throw NotComparable("element is not below the eta target");
    return it->second;
  }
};

template <std::size_t W>
EtaTable<W> eta_table(const FocalPointSet<W>& fp, const BitMask<W>& y) {
  const std::size_t yi = fp.index_of(y);  // NotInSet when y is no focal point
  const OrderDirection d = fp.direction();
  // Points below y all precede it in canonical order.
  std::vector<std::size_t> below;
  for (std::size_t i = 0; i <= yi; ++i)
    if (leq(fp.point(i), y, d)) below.push_back(i);
  std::vector<long long> eta(below.size());
  eta.back() = 1;  // below.back() == yi
  for (std::size_t bi = below.size() - 1; bi-- > 0;) {
    long long acc = 0;
    for (std::size_t bj = bi + 1; bj < below.size(); ++bj)
      if (leq(fp.point(below[bi]), fp.point(below[bj]), d)) acc += eta[bj];
    eta[bi] = -acc;
  }
  EtaTable<W> table;
  table.target = y;
  table.values.reserve(below.size());
  for (std::size_t bi = 0; bi < below.size(); ++bi)
    table.values.emplace(fp.point(below[bi]), eta[bi]);
  return table;
}

/// Which route efficient_mobius takes: the recursive rewrite
/// f(y) = g(y) - sum_{x < y} f(x) never materializes eta and is the
/// production path; the explicit-eta path evaluates
/// f(y) = sum_{s <= y} g(s) eta(s, y) and exists to cross-check it.
enum class MobiusPath { Recursive, ExplicitEta };

namespace detail {

template <std::size_t W>
void check_aligned(const FocalPointSet<W>& fp, std::span<const double> g) {
  if (g.size() != fp.size())
    throw IncompleteInput("expected one image per focal point");
}

}  // namespace detail

/// Efficient Mobius inversion on focal points. g holds the zeta images
/// aligned with fp.points(); the result is the inverse transform, zero off
/// the focal points. O(|fp|^2).
template <std::size_t W>
SetFunction<W> efficient_mobius(const FocalPointSet<W>& fp,
                                std::span<const double> g,
                                MobiusPath path = MobiusPath::Recursive) {
  detail::check_aligned(fp, g);
  const OrderDirection d = fp.direction();
  std::vector<double> f(fp.size());
  if (path == MobiusPath::Recursive) {
    for (std::size_t i = 0; i < fp.size(); ++i) {
      double acc = g[i];
      for (std::size_t j = 0; j < i; ++j)
        if (leq(fp.point(j), fp.point(i), d)) acc -= f[j];
      f[i] = acc;
    }
  } else {
    for (std::size_t i = 0; i < fp.size(); ++i) {
      auto eta = eta_table(fp, fp.point(i));
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j)
        if (leq(fp.point(j), fp.point(i), d))
          acc += g[j] * static_cast<double>(eta.at(fp.point(j)));
      f[i] = acc;
    }
  }
  SetFunction<W> out(fp.frame(), 0.0);
  for (std::size_t i = 0; i < fp.size(); ++i) out.set(fp.point(i), f[i]);
  return out;
}

/// Multiplicative form: h(y) = g(y) / prod_{x < y} h(x), neutral 1 off the
/// focal points. Zero images make the inversion impossible.
template <std::size_t W>
SetFunction<W> efficient_mobius_multiplicative(const FocalPointSet<W>& fp,
                                               std::span<const double> g) {
  detail::check_aligned(fp, g);
  const OrderDirection d = fp.direction();
  for (double v : g)
    if (std::abs(v) <= kSupportEps)
      throw ZeroImage("multiplicative inversion hit a zero image");
  std::vector<double> h(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    double acc = g[i];
    for (std::size_t j = 0; j < i; ++j)
      if (leq(fp.point(j), fp.point(i), d)) acc /= h[j];
    h[i] = acc;
  }
  SetFunction<W> out(fp.frame(), 1.0);
  for (std::size_t i = 0; i < fp.size(); ++i) out.set(fp.point(i), h[i]);
  return out;
}

/// Zeta transform evaluated on the focal points only, from the sparse input:
/// g(p) = sum (or product, by f's neutral) of images below p.
/// O(|fp| * |supp|).
template <std::size_t W>
std::vector<double> zeta_on_focal_points(const FocalPointSet<W>& fp,
                                         const SetFunction<W>& f) {
  const bool multiplicative = f.neutral() == 1.0;
  const OrderDirection d = fp.direction();
  std::vector<double> g(fp.size(), f.neutral());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    for (const auto& [x, v] : f.entries()) {
      if (!leq(x, fp.point(i), d)) continue;
      if (multiplicative)
        g[i] *= v;
      else
        g[i] += v;
    }
  }
  return g;
}

/// Product zeta over the focal points themselves: g(p) = prod_{s <= p} h(s)
/// for h given aligned with fp.points(). Used to recompose commonalities
/// from weights.
template <std::size_t W>
std::vector<double> product_zeta_on_focal_points(const FocalPointSet<W>& fp,
                                                 std::span<const double> h) {
  detail::check_aligned(fp, h);
  const OrderDirection d = fp.direction();
  std::vector<double> g(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    double acc = h[i];
    for (std::size_t j = 0; j < i; ++j)
      if (leq(fp.point(j), fp.point(i), d)) acc *= h[j];
    g[i] = acc;
  }
  return g;
}

/// Image of an arbitrary element of the zeta transform known only on focal
/// points. A non focal point y takes the image of the focal point it covers:
/// the join of all focal points below y (itself a focal point by closure).
/// With nothing below y the image is the neutral.
template <std::size_t W>
double extend_zeta(const FocalPointSet<W>& fp, std::span<const double> g,
                   double neutral, const BitMask<W>& y) {
  detail::check_aligned(fp, g);
  const OrderDirection d = fp.direction();
  if (fp.contains(y)) return g[fp.index_of(y)];
  bool any = false;
  BitMask<W> cover;
  for (const auto& p : fp.points()) {
    if (!leq(p, y, d)) continue;
    cover = any ? join(cover, p, d) : p;
    any = true;
  }
  if (!any) return neutral;
  return g[fp.index_of(cover)];
}

/// Completeness-checked alignment of a point -> image map with fp.points().
template <std::size_t W>
std::vector<double> aligned_values(
    const FocalPointSet<W>& fp,
    const std::unordered_map<BitMask<W>, double, MaskHash<W>>& images) {
  std::vector<double> out;
  out.reserve(fp.size());
  for (const auto& p : fp.points()) {
    auto it = images.find(p);
    if (it == images.end())
      throw IncompleteInput("no image for focal point " +
                            fp.frame().format_set(p));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace belcal
