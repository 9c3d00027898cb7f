#pragma once

// Shared worked fixtures: the three-element mass function whose commonality
// and conjunctive weights are known in closed form, and the two four-element
// sources of the cautious-fusion walkthrough.

#include <cstdint>
#include <vector>

#include "belcal/frame.hpp"
#include "belcal/mask.hpp"
#include "belcal/set_function.hpp"

namespace fixtures {

using belcal::Frame;
using belcal::Mask64;
using belcal::SetFunction;

inline Mask64 mask(std::uint64_t bits) { return Mask64::from_low_word(bits); }

inline Frame abc_frame() { return Frame({"a", "b", "c"}); }

// m(omega)=0.1, m({a,b})=0.1, m({b,c})=0.2, m({a})=0.6 over {a,b,c}.
// Bits: a=1, b=2, c=4.
inline SetFunction<1> abc_mass_values() {
  SetFunction<1> f(abc_frame(), 0.0);
  f.set(mask(0b111), 0.1);
  f.set(mask(0b011), 0.1);
  f.set(mask(0b110), 0.2);
  f.set(mask(0b001), 0.6);
  return f;
}

// Its commonality on the six meet-closure points.
struct PointValue {
  std::uint64_t bits;
  double value;
};

inline std::vector<PointValue> abc_commonality() {
  return {{0b111, 0.1}, {0b011, 0.2}, {0b110, 0.3},
          {0b001, 0.8}, {0b010, 0.4}, {0b000, 1.0}};
}

inline std::vector<PointValue> abc_conjunctive_weights() {
  return {{0b111, 10.0}, {0b011, 0.5}, {0b110, 1.0 / 3.0},
          {0b001, 0.25}, {0b010, 1.5}, {0b000, 1.6}};
}

inline Frame abcd_frame() { return Frame({"a", "b", "c", "d"}); }

// Sources of the cautious-fusion walkthrough over {a,b,c,d}.
// Bits: a=1, b=2, c=4, d=8.
inline SetFunction<1> abcd_m1_values() {
  SetFunction<1> f(abcd_frame(), 0.0);
  f.set(mask(0b0011), 0.2);  // {a,b}
  f.set(mask(0b0110), 0.2);  // {b,c}
  f.set(mask(0b0001), 0.6);  // {a}
  return f;
}

inline SetFunction<1> abcd_m2_values() {
  SetFunction<1> f(abcd_frame(), 0.0);
  f.set(mask(0b0110), 0.3);  // {b,c}
  f.set(mask(0b1100), 0.1);  // {c,d}
  f.set(mask(0b0100), 0.6);  // {c}
  return f;
}

}  // namespace fixtures
