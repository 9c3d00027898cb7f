#pragma once

#include <cstddef>

#include "belcal/mask.hpp"

namespace belcal {

/// Which of the two dual orders on the powerset is in effect.
///   Subset:   x <= y means x is contained in y; join is union; bottom is {}.
///   Superset: x <= y means x contains y; join is intersection; bottom is
///             the full frame.
enum class OrderDirection { Subset, Superset };

constexpr OrderDirection dual(OrderDirection d) {
  return d == OrderDirection::Subset ? OrderDirection::Superset
                                     : OrderDirection::Subset;
}

template <std::size_t W>
constexpr bool leq(const BitMask<W>& x, const BitMask<W>& y, OrderDirection d) {
  return d == OrderDirection::Subset ? x.subset_of(y) : y.subset_of(x);
}

template <std::size_t W>
constexpr bool lt(const BitMask<W>& x, const BitMask<W>& y, OrderDirection d) {
  return x != y && leq(x, y, d);
}

template <std::size_t W>
constexpr bool comparable(const BitMask<W>& x, const BitMask<W>& y,
                          OrderDirection d) {
  return leq(x, y, d) || leq(y, x, d);
}

template <std::size_t W>
constexpr BitMask<W> join(const BitMask<W>& x, const BitMask<W>& y,
                          OrderDirection d) {
  return d == OrderDirection::Subset ? x | y : x & y;
}

/// Minimum of the powerset under direction d.
template <std::size_t W>
constexpr BitMask<W> order_bottom(std::size_t n, OrderDirection d) {
  return d == OrderDirection::Subset ? BitMask<W>::none() : BitMask<W>::full(n);
}

/// Maximum of the powerset under direction d.
template <std::size_t W>
constexpr BitMask<W> order_top(std::size_t n, OrderDirection d) {
  return d == OrderDirection::Subset ? BitMask<W>::full(n) : BitMask<W>::none();
}

/// Height of x above the order bottom: popcount for Subset, n - popcount for
/// Superset. Any x < y has strictly smaller rank.
template <std::size_t W>
constexpr std::size_t order_rank(const BitMask<W>& x, std::size_t n,
                                 OrderDirection d) {
  return d == OrderDirection::Subset ? x.count() : n - x.count();
}

/// Ascending (order rank, numeric value): a linear extension of the direction
/// order, so every element below x precedes x. Focal-point sets are kept in
/// this order and the inversion recursions walk it front to back.
template <std::size_t W>
struct DirectionLess {
  std::size_t n;
  OrderDirection d;

  bool operator()(const BitMask<W>& a, const BitMask<W>& b) const {
    std::size_t ra = order_rank(a, n, d), rb = order_rank(b, n, d);
    if (ra != rb) return ra < rb;
    return a.value_less(b);
  }
};

}  // namespace belcal
