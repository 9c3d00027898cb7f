#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/order.hpp"
#include "belcal/set_function.hpp"

namespace belcal {

/// The naive engines enumerate all of 2^N and exist as oracles; production
/// paths live in the focal-point engine.
inline constexpr std::size_t kNaiveMaxFrame = 20;

/// Mobius function of the sub-poset spanned by an explicit domain, evaluated
/// against one fixed target y. Built once per (domain, y) by the recursion
/// mu(y,y) = 1, mu(x,y) = -sum over x < z <= y of mu(z,y).
template <std::size_t W>
class MobiusTable {
 public:
  using Mask = BitMask<W>;

  MobiusTable(std::span<const Mask> domain, const Mask& y, OrderDirection d)
      : target_(y), direction_(d) {
    std::vector<Mask> below;
    for (const auto& z : domain)
      if (leq(z, y, d)) below.push_back(z);
    // Linear extension: elements above come later, so a reverse sweep sees
    // every mu(z, y) with z > x before computing mu(x, y).
    std::sort(below.begin(), below.end(),
              [&](const Mask& a, const Mask& b) {
                std::size_t ra = a.count(), rb = b.count();
                bool less = d == OrderDirection::Subset ? ra < rb : ra > rb;
                if (ra != rb) return less;
                return a.value_less(b);
              });
    std::vector<long long> mu(below.size());
    for (std::size_t i = below.size(); i-- > 0;) {
      if (below[i] == y) {
        mu[i] = 1;
        continue;
      }
      long long acc = 0;
      for (std::size_t j = i + 1; j < below.size(); ++j)
        if (leq(below[i], below[j], d)) acc += mu[j];
      mu[i] = -acc;
    }
    for (std::size_t i = 0; i < below.size(); ++i) values_.emplace(below[i], mu[i]);
  }

  const Mask& target() const { return target_; }

  /// Defined for every domain element <= target.
  long long at(const Mask& x) const {
    auto it = values_.find(x);
    if (it == values_.end())
      throw NotComparable("element is not below the mobius target");
    return it->second;
  }

  const std::unordered_map<Mask, long long, MaskHash<W>>& values() const {
    return values_;
  }

 private:
  Mask target_;
  OrderDirection direction_;
  std::unordered_map<Mask, long long, MaskHash<W>> values_;
};

template <std::size_t W>
long long mobius_function_naive(const BitMask<W>& x, const BitMask<W>& y,
                                std::type_identity_t<std::span<const BitMask<W>>> domain,
                                OrderDirection d) {
  if (!leq(x, y, d)) throw NotComparable("mobius function needs x <= y");
  return MobiusTable<W>(domain, y, d).at(x);
}

namespace detail {

inline void check_naive_frame(std::size_t n) {
  if (n > kNaiveMaxFrame)
    throw FrameTooLarge("naive engine is gated at 20 frame elements");
}

/// Subsets of y in descending popcount order (y first, empty set last).
inline std::vector<std::uint64_t> subsets_by_descending_size(std::uint64_t y) {
  std::vector<std::uint64_t> subs;
  subs.reserve(std::size_t{1} << std::popcount(y));
  std::uint64_t s = y;
  while (true) {
    subs.push_back(s);
    if (s == 0) break;
    s = (s - 1) & y;
  }
  std::sort(subs.begin(), subs.end(), [](std::uint64_t a, std::uint64_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  return subs;
}

/// mu(x, y) on the full powerset for every x <= y, via the recursive
/// definition (independent of the (-1)^k closed form the tests check against).
/// Interval masks are canonicalized so one routine serves both directions:
/// for Superset order the roles of x and y flip and the interval [y, x]
/// under Subset is the same set of pairs.
inline std::unordered_map<std::uint64_t, long long> full_powerset_mobius(
    std::uint64_t interval_bits) {
  std::unordered_map<std::uint64_t, long long> mu;
  auto subs = subsets_by_descending_size(interval_bits);
  mu.reserve(subs.size());
  for (std::uint64_t s : subs) {
    if (s == interval_bits) {
      mu[s] = 1;
      continue;
    }
    // strict supersets of s inside the interval
    std::uint64_t free = interval_bits & ~s;
    long long acc = 0;
    std::uint64_t t = free;
    while (t != 0) {
      acc += mu[s | t];
      t = (t - 1) & free;
    }
    mu[s] = -acc;
  }
  return mu;
}

}  // namespace detail

/// Zeta transform over the whole powerset, summing (neutral 0) or multiplying
/// (neutral 1) the stored images below each point. Oracle only: O(2^N |supp|).
template <std::size_t W>
SetFunction<W> zeta_naive(const SetFunction<W>& f, OrderDirection d) {
  const std::size_t n = f.frame().size();
  detail::check_naive_frame(n);
  const bool multiplicative = f.neutral() == 1.0;
  SetFunction<W> g(f.frame(), f.neutral());
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t yv = 0; yv < total; ++yv) {
    auto y = BitMask<W>::from_low_word(yv);
    double acc = multiplicative ? 1.0 : 0.0;
    for (const auto& [x, v] : f.entries()) {
      if (!leq(x, y, d)) continue;
      if (multiplicative)
        acc *= v;
      else
        acc += v;
    }
    g.set(y, acc);
  }
  return g;
}

/// Mobius transform over the whole powerset by direct evaluation of the
/// inversion sum with the recursive mu. Multiplicative inputs (neutral 1)
/// use mu as an exponent. Oracle only: O(4^N).
template <std::size_t W>
SetFunction<W> mobius_naive(const SetFunction<W>& g, OrderDirection d) {
  const std::size_t n = g.frame().size();
  detail::check_naive_frame(n);
  const bool multiplicative = g.neutral() == 1.0;
  SetFunction<W> f(g.frame(), g.neutral());
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t yv = 0; yv <= all; ++yv) {
    // x <= y under Subset means x is a subset of yv; under Superset it means
    // x is a superset, i.e. its complement is a subset of ~yv.
    const std::uint64_t interval =
        d == OrderDirection::Subset ? yv : (all & ~yv);
    auto mu = detail::full_powerset_mobius(interval);
    double acc = multiplicative ? 1.0 : 0.0;
    std::uint64_t s = interval;
    while (true) {
      const std::uint64_t xv = d == OrderDirection::Subset ? s : (yv | s);
      // In the Superset canonicalization, s enumerates the extra elements x
      // has beyond y. The map s -> interval \ s is an isomorphism onto the
      // Subset interval, so the mu value lives at the mirrored key.
      const long long m = d == OrderDirection::Subset
                              ? mu.at(s)
                              : mu.at(interval & ~s);
      const double gx = g.at(BitMask<W>::from_low_word(xv));
      if (multiplicative) {
        if (m == 1)
          acc *= gx;
        else if (m == -1)
          acc /= gx;
        else if (m != 0)
          acc *= std::pow(gx, static_cast<double>(m));
      } else {
        acc += gx * static_cast<double>(m);
      }
      if (s == 0) break;
      s = (s - 1) & interval;
    }
    f.set(BitMask<W>::from_low_word(yv), acc);
  }
  return f;
}

}  // namespace belcal
