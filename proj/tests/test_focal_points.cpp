#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <vector>

#include "belcal/focal_points.hpp"
#include "belcal/focal_transforms.hpp"
#include "belcal/image_partition.hpp"
#include "belcal/naive.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace belcal;
using fixtures::mask;

namespace {

std::vector<Mask64> masks_of(const std::vector<std::uint64_t>& bits) {
  std::vector<Mask64> out;
  for (auto b : bits) out.push_back(mask(b));
  return out;
}

std::vector<std::uint64_t> sorted_bits(std::span<const Mask64> masks) {
  std::vector<std::uint64_t> out;
  for (const auto& m : masks) out.push_back(m.low_word());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("closure of the worked support: union-closed already") {
  auto f = fixtures::abc_mass_values();
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Subset);
  CHECK(fp.size() == 4);
  CHECK(sorted_bits(fp.points()) ==
        std::vector<std::uint64_t>{0b001, 0b011, 0b110, 0b111});
  CHECK(fp.is_join_closed());
}

TEST_CASE("closure of the worked support under intersections adds two points") {
  auto f = fixtures::abc_mass_values();
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  CHECK(fp.size() == 6);
  CHECK(sorted_bits(fp.points()) ==
        std::vector<std::uint64_t>{0b000, 0b001, 0b010, 0b011, 0b110, 0b111});
  CHECK(fp.is_join_closed());
  // canonical order walks from the order bottom (the full frame) downward
  CHECK(fp.point(0) == mask(0b111));
  CHECK(fp.point(5) == mask(0b000));
  // {b} is derived, not a generator
  const auto& origin = fp.origins()[fp.index_of(mask(0b010))];
  CHECK_FALSE(origin.is_generator());
}

TEST_CASE("closure of a singleton is itself") {
  Frame frame = Frame::of_size(5);
  std::vector<Mask64> gens = {mask(0b10110)};
  for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
    auto fp = FocalPointSet<1>::closure(frame, gens, d);
    CHECK(fp.size() == 1);
    CHECK(fp.point(0) == gens[0]);
  }
}

TEST_CASE("closure refuses empty generator sets") {
  std::vector<Mask64> none;
  CHECK_THROWS_AS(
      FocalPointSet<1>::closure(Frame::of_size(3), none, OrderDirection::Subset),
      EmptyGenerators);
}

TEST_CASE("closure matches the fixpoint oracle on random sets") {
  std::mt19937_64 rng(9001);
  Frame frame = Frame::of_size(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng() % 9;
    auto bits = oracle::random_support(8, k, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      auto fp = FocalPointSet<1>::closure(frame, masks_of(bits), d);
      auto expect = oracle::closure(bits, d == OrderDirection::Superset);
      CHECK(sorted_bits(fp.points()) == expect);
    }
  }
}

TEST_CASE("closure operator axioms hold on random generator pairs") {
  std::mt19937_64 rng(9002);
  Frame frame = Frame::of_size(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto s2_bits = oracle::random_support(8, 2 + rng() % 8, rng);
    // S is a random subset of S2, never empty
    std::vector<std::uint64_t> s_bits;
    for (auto b : s2_bits)
      if (rng() % 2 == 0) s_bits.push_back(b);
    if (s_bits.empty()) s_bits.push_back(s2_bits.front());
    auto s = masks_of(s_bits);
    auto s2 = masks_of(s2_bits);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset})
      CHECK(closure_properties_check<1>(frame, s, s2, d));
  }
}

TEST_CASE("eta base case and closed form on the full powerset") {
  Frame frame = Frame::of_size(5);
  std::vector<Mask64> all;
  for (std::uint64_t v = 0; v < 32; ++v) all.push_back(mask(v));
  for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
    auto fp = FocalPointSet<1>::closure(frame, all, d);
    REQUIRE(fp.size() == 32);
    for (const auto& y : fp.points()) {
      auto table = eta_table(fp, y);
      CHECK(table.at(y) == 1);
      for (const auto& s : fp.points()) {
        if (!leq(s, y, d)) continue;
        const long long expect =
            std::popcount(s.low_word() ^ y.low_word()) % 2 == 0 ? 1 : -1;
        CHECK(table.at(s) == expect);
      }
    }
  }
}

TEST_CASE("eta equals the naive mobius function of the focal-point sub-poset") {
  std::mt19937_64 rng(9003);
  Frame frame = Frame::of_size(8);
  for (int trial = 0; trial < 25; ++trial) {
    auto bits = oracle::random_support(8, 2 + rng() % 7, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      auto fp = FocalPointSet<1>::closure(frame, masks_of(bits), d);
      if (fp.size() > 64) continue;
      std::vector<Mask64> domain(fp.points().begin(), fp.points().end());
      for (const auto& y : fp.points()) {
        auto table = eta_table(fp, y);
        MobiusTable<1> mu(domain, y, d);
        for (const auto& s : fp.points())
          if (leq(s, y, d)) CHECK(table.at(s) == mu.at(s));
      }
    }
  }
}

TEST_CASE("eta on the worked meet-closure at the empty target") {
  auto f = fixtures::abc_mass_values();
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  auto table = eta_table(fp, mask(0b000));
  std::vector<Mask64> domain(fp.points().begin(), fp.points().end());
  MobiusTable<1> mu(domain, mask(0b000), OrderDirection::Superset);
  for (const auto& s : fp.points()) CHECK(table.at(s) == mu.at(s));
  CHECK_THROWS_AS(eta_table(fp, mask(0b101)), NotInSet);
}

TEST_CASE("efficient mobius inverts the worked commonality") {
  auto f = fixtures::abc_mass_values();
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  auto q = zeta_on_focal_points(fp, f);
  for (auto path : {MobiusPath::Recursive, MobiusPath::ExplicitEta}) {
    auto m = efficient_mobius(fp, q, path);
    CHECK(max_abs_diff(m, f) <= 1e-12);
  }
}

TEST_CASE("efficient mobius of a single focal point returns its image") {
  Frame frame = Frame::of_size(4);
  std::vector<Mask64> gens = {mask(0b0101)};
  auto fp = FocalPointSet<1>::closure(frame, gens, OrderDirection::Subset);
  std::vector<double> g = {0.42};
  auto m = efficient_mobius(fp, g);
  CHECK(m.at(mask(0b0101)) == doctest::Approx(0.42));
  CHECK(m.support_size() == 1);
}

TEST_CASE("efficient mobius equals the naive engine on and off focal points") {
  std::mt19937_64 rng(9004);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  Frame frame = Frame::of_size(10);
  for (int trial = 0; trial < 15; ++trial) {
    auto bits = oracle::random_support(10, 2 + rng() % 10, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      SetFunction<1> f(frame, 0.0);
      for (auto b : bits) f.set(mask(b), val(rng));
      auto fp = FocalPointSet<1>::closure(frame, f.support(), d);
      auto g = zeta_on_focal_points(fp, f);
      auto recovered = efficient_mobius(fp, g);
      CHECK(max_abs_diff(recovered, f) <= 1e-12);
      // and the recursive path agrees with the explicit-eta path
      auto recovered_eta = efficient_mobius(fp, g, MobiusPath::ExplicitEta);
      CHECK(max_abs_diff(recovered, recovered_eta) <= 1e-12);
      // off the focal points the naive mobius is zero as well
      auto naive = mobius_naive(zeta_naive(f, d), d);
      CHECK(max_abs_diff(recovered, naive) <= 1e-12);
    }
  }
}

TEST_CASE("incomplete focal-point images are rejected") {
  auto f = fixtures::abc_mass_values();
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  std::vector<double> short_g(fp.size() - 1, 1.0);
  CHECK_THROWS_AS(efficient_mobius(fp, short_g), IncompleteInput);
  std::unordered_map<Mask64, double, MaskHash<1>> images;
  for (const auto& p : fp.points()) images[p] = 1.0;
  images.erase(mask(0b010));
  CHECK_THROWS_AS(aligned_values(fp, images), IncompleteInput);
}

TEST_CASE("multiplicative efficient mobius reproduces the worked weights") {
  auto f = fixtures::abc_mass_values();
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  auto q = zeta_on_focal_points(fp, f);
  auto h = efficient_mobius_multiplicative(fp, q);
  for (const auto& [bits, w] : fixtures::abc_conjunctive_weights())
    CHECK(1.0 / h.at(mask(bits)) == doctest::Approx(w).epsilon(1e-12));
}

TEST_CASE("multiplicative efficient mobius: neutral input, zero rejection") {
  Frame frame = Frame::of_size(4);
  std::vector<Mask64> gens = {mask(0b0001), mask(0b0011), mask(0b0111)};
  auto fp = FocalPointSet<1>::closure(frame, gens, OrderDirection::Subset);
  std::vector<double> ones(fp.size(), 1.0);
  auto h = efficient_mobius_multiplicative(fp, ones);
  CHECK(h.support_size() == 0);  // h identically 1
  std::vector<double> with_zero(fp.size(), 1.0);
  with_zero[1] = 0.0;
  CHECK_THROWS_AS(efficient_mobius_multiplicative(fp, with_zero), ZeroImage);
}

TEST_CASE("multiplicative round trip through the product zeta on focal points") {
  std::mt19937_64 rng(9005);
  std::uniform_real_distribution<double> val(0.25, 3.0);
  Frame frame = Frame::of_size(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto bits = oracle::random_support(8, 2 + rng() % 6, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      auto fp = FocalPointSet<1>::closure(frame, masks_of(bits), d);
      std::vector<double> h(fp.size());
      for (auto& v : h) v = val(rng);
      auto g = product_zeta_on_focal_points(fp, h);
      auto back = efficient_mobius_multiplicative(fp, g);
      for (std::size_t i = 0; i < fp.size(); ++i)
        CHECK(back.at(fp.point(i)) == doctest::Approx(h[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("extend determines every non focal point from the covering point") {
  auto f = fixtures::abc_mass_values();

  auto fpb = FocalPointSet<1>::closure(f.frame(), f.support(),
                                       OrderDirection::Subset);
  auto b = zeta_on_focal_points(fpb, f);
  CHECK(extend_zeta(fpb, b, 0.0, mask(0b101)) ==
        doctest::Approx(b[fpb.index_of(mask(0b001))]));

  auto fpq = FocalPointSet<1>::closure(f.frame(), f.support(),
                                       OrderDirection::Superset);
  auto q = zeta_on_focal_points(fpq, f);
  CHECK(extend_zeta(fpq, q, 0.0, mask(0b100)) ==
        doctest::Approx(q[fpq.index_of(mask(0b110))]));

  // nothing below: the additive neutral
  Frame frame = Frame::of_size(3);
  std::vector<Mask64> gens = {mask(0b110)};
  auto fp = FocalPointSet<1>::closure(frame, gens, OrderDirection::Subset);
  std::vector<double> g = {3.0};
  CHECK(extend_zeta(fp, g, 0.0, mask(0b001)) == 0.0);
}

TEST_CASE("extended zeta equals the dense zeta everywhere") {
  std::mt19937_64 rng(9006);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (std::size_t n : {6u, 9u, 12u}) {
    Frame frame = Frame::of_size(n);
    auto bits = oracle::random_support(n, 6, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      SetFunction<1> f(frame, 0.0);
      for (auto b : bits) f.set(mask(b), val(rng));
      auto fp = FocalPointSet<1>::closure(frame, f.support(), d);
      auto g = zeta_on_focal_points(fp, f);
      auto dense = zeta_naive(f, d);
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
        CHECK(extend_zeta(fp, g, 0.0, mask(y)) ==
              doctest::Approx(dense.at(mask(y))).epsilon(1e-12));
    }
  }
}

TEST_CASE("level partition oracle on the worked support") {
  auto f = fixtures::abc_mass_values();
  auto ids = level_partition_oracle<1>(f.frame(), f.support(),
                                       OrderDirection::Superset);
  // Partition classes with a nonempty closure must have their minima exactly
  // on the six focal points.
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  std::unordered_map<std::size_t, std::vector<Mask64>> classes;
  for (std::uint64_t y = 0; y < 8; ++y) classes[ids.at(mask(y))].push_back(mask(y));
  std::size_t parts_with_closure = 0;
  std::vector<std::uint64_t> minima;
  for (const auto& [id, members] : classes) {
    bool nonempty = false;
    for (const auto& s : f.support())
      for (const auto& y : members)
        if (leq(s, y, OrderDirection::Superset)) nonempty = true;
    if (!nonempty) continue;
    ++parts_with_closure;
    // minimum of the class in the superset order
    Mask64 best = members.front();
    for (const auto& y : members)
      if (leq(y, best, OrderDirection::Superset)) best = y;
    for (const auto& y : members) CHECK(leq(best, y, OrderDirection::Superset));
    minima.push_back(best.low_word());
  }
  CHECK(parts_with_closure == 6);
  std::sort(minima.begin(), minima.end());
  CHECK(minima == sorted_bits(fp.points()));
}

TEST_CASE("level partition of a lone top generator has two classes") {
  Frame frame = Frame::of_size(4);
  std::vector<Mask64> s = {frame.full_mask<1>()};
  auto ids = level_partition_oracle<1>(frame, s, OrderDirection::Subset);
  CHECK(ids.at(frame.full_mask<1>()) != ids.at(mask(0)));
  std::vector<std::size_t> distinct;
  for (std::uint64_t y = 0; y < 16; ++y) {
    auto id = ids.at(mask(y));
    if (std::find(distinct.begin(), distinct.end(), id) == distinct.end())
      distinct.push_back(id);
  }
  CHECK(distinct.size() == 2);
}

TEST_CASE("part minima with nonempty closure enumerate the closure") {
  std::mt19937_64 rng(9007);
  Frame frame = Frame::of_size(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto bits = oracle::random_support(8, 1 + rng() % 8, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      auto s = masks_of(bits);
      auto ids = level_partition_oracle<1>(frame, s, d);
      std::unordered_map<std::size_t, std::vector<Mask64>> classes;
      for (std::uint64_t y = 0; y < 256; ++y)
        classes[ids.at(mask(y))].push_back(mask(y));
      std::vector<std::uint64_t> minima;
      for (const auto& [id, members] : classes) {
        bool nonempty = false;
        for (const auto& g : s)
          for (const auto& y : members)
            if (leq(g, y, d)) nonempty = true;
        if (!nonempty) continue;
        Mask64 best = members.front();
        for (const auto& y : members)
          if (leq(y, best, d)) best = y;
        bool is_minimum = true;
        for (const auto& y : members)
          if (!leq(best, y, d)) is_minimum = false;
        CHECK(is_minimum);
        minima.push_back(best.low_word());
      }
      auto fp = FocalPointSet<1>::closure(frame, s, d);
      std::sort(minima.begin(), minima.end());
      CHECK(minima == sorted_bits(fp.points()));
    }
  }
}

TEST_CASE("image partition validation catches overlap and gaps") {
  Frame frame = fixtures::abc_frame();
  using Part = ImagePartition<1>::Part;
  std::vector<Part> parts;
  parts.push_back(Part{{mask(0b000)}, {mask(0b111)}, 1.0});
  parts.push_back(Part{{mask(0b001)}, {mask(0b111)}, 2.0});  // overlaps
  ImagePartition<1> bad(frame, OrderDirection::Subset, parts, 0.0);
  CHECK_THROWS_AS(bad.validate(), InvalidPartition);

  std::vector<Part> good;
  good.push_back(Part{{mask(0b000)}, {mask(0b110)}, 0.0});
  good.push_back(Part{{mask(0b001)}, {mask(0b111)}, 1.0});
  ImagePartition<1> ok(frame, OrderDirection::Subset, good, 0.0);
  ok.validate();
  CHECK(ok.image_at(mask(0b101)) == 1.0);
  CHECK(ok.image_at(mask(0b010)) == 0.0);
}

TEST_CASE("focal points recovered from the worked commonality partition") {
  auto f = fixtures::abc_mass_values();
  auto dense_q = zeta_naive(f, OrderDirection::Superset);
  auto gp = level_image_partition<1>(
      f.frame(), f.support(), OrderDirection::Superset,
      [&](const Mask64& y) { return dense_q.at(y); }, 0.0);
  auto recovered = focal_points_from_partition(gp);
  auto fp = FocalPointSet<1>::closure(f.frame(), f.support(),
                                      OrderDirection::Superset);
  for (const auto& p : fp.points()) CHECK(recovered.contains(p));
}

TEST_CASE("partition of the zero function reports empty generators") {
  Frame frame = fixtures::abc_frame();
  using Part = ImagePartition<1>::Part;
  std::vector<Part> parts = {Part{{mask(0b000)}, {mask(0b111)}, 0.0}};
  ImagePartition<1> gp(frame, OrderDirection::Subset, parts, 0.0);
  CHECK_THROWS_AS(focal_points_from_partition(gp), EmptyGenerators);
}

TEST_CASE("hidden support element recovered through the closure of part minima") {
  // Support {e0}, {e1}, {e0,e1} at N = 6 with a cancelling image on the top
  // element: the value-level partition has only three parts and never shows
  // {e0,e1} as a minimal element, yet the closure of the minima finds it.
  Frame frame = Frame::of_size(6);
  const Mask64 s1 = mask(0b000001), s3 = mask(0b000010), s4 = mask(0b000011);
  SetFunction<1> f(frame, 0.0);
  f.set(s1, 0.5);
  f.set(s3, 0.25);
  f.set(s4, -0.5);  // cancels s1 above s4

  using Part = ImagePartition<1>::Part;
  std::vector<Part> parts;
  parts.push_back(Part{{s3}, {frame.full_mask<1>()}, 0.25});
  parts.push_back(Part{{s1}, {mask(0b111101)}, 0.5});
  parts.push_back(Part{{mask(0)}, {mask(0b111100)}, 0.0});
  ImagePartition<1> gp(frame, OrderDirection::Subset, parts, 0.0);
  gp.validate();
  // the partition is consistent with the dense zeta transform
  auto dense_g = zeta_naive(f, OrderDirection::Subset);
  for (std::uint64_t y = 0; y < 64; ++y)
    CHECK(gp.image_at(mask(y)) == doctest::Approx(dense_g.at(mask(y))));

  auto recovered = focal_points_from_partition(gp);
  // brute-force support of f from the dense transform
  auto back = mobius_naive(dense_g, OrderDirection::Subset);
  for (const auto& [k, v] : back.entries()) CHECK(recovered.contains(k));
  CHECK(recovered.contains(s4));
  // and s4 is not among the part minima
  for (const auto& g : gp.all_min_elements()) CHECK(g.low_word() != 0b000011);
}

TEST_CASE("partition recovery contains the support of random signed functions") {
  std::mt19937_64 rng(9008);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  Frame frame = Frame::of_size(10);
  for (int trial = 0; trial < 15; ++trial) {
    auto bits = oracle::random_support(10, 2 + rng() % 8, rng);
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      SetFunction<1> f(frame, 0.0);
      for (auto b : bits) f.set(mask(b), val(rng));
      auto dense_g = zeta_naive(f, d);
      auto gp = level_image_partition<1>(
          frame, f.support(), d,
          [&](const Mask64& y) { return dense_g.at(y); }, 0.0);
      auto recovered = focal_points_from_partition(gp);
      for (const auto& [k, v] : f.entries()) CHECK(recovered.contains(k));
      // containment chain: recovered set sits inside the closure of all minima
      auto all_minima = gp.all_min_elements();
      auto big = FocalPointSet<1>::closure(frame, all_minima, d);
      for (const auto& p : recovered.points()) CHECK(big.contains(p));
    }
  }
}

TEST_CASE("nonnegative shortcut: part minima already contain the closure") {
  std::mt19937_64 rng(9009);
  std::uniform_real_distribution<double> val(0.05, 1.0);
  Frame frame = Frame::of_size(10);
  for (int trial = 0; trial < 50; ++trial) {
    auto bits = oracle::random_support(10, 2 + rng() % 8, rng);
    SetFunction<1> f(frame, 0.0);
    for (auto b : bits) f.set(mask(b), val(rng));
    for (auto d : {OrderDirection::Subset, OrderDirection::Superset}) {
      auto dense_g = zeta_naive(f, d);
      auto gp = level_image_partition<1>(
          frame, f.support(), d,
          [&](const Mask64& y) { return dense_g.at(y); }, 0.0);
      auto candidates = focal_points_from_partition_nonneg(gp);
      auto fp = FocalPointSet<1>::closure(frame, f.support(), d);
      for (const auto& p : fp.points())
        CHECK(std::find(candidates.begin(), candidates.end(), p) !=
              candidates.end());
    }
  }
}

TEST_CASE("single support point: the nonneg shortcut returns it") {
  Frame frame = fixtures::abc_frame();
  SetFunction<1> f(frame, 0.0);
  f.set(mask(0b011), 1.0);
  auto dense_g = zeta_naive(f, OrderDirection::Subset);
  auto gp = level_image_partition<1>(
      frame, f.support(), OrderDirection::Subset,
      [&](const Mask64& y) { return dense_g.at(y); }, 0.0);
  auto candidates = focal_points_from_partition_nonneg(gp);
  CHECK(std::find(candidates.begin(), candidates.end(), mask(0b011)) !=
        candidates.end());
}
