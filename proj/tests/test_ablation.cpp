#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "belcal/ablation.hpp"
#include "belcal/fmt.hpp"
#include "belcal/fusion.hpp"
#include "belcal/naive.hpp"
#include "belcal/random_mass.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace belcal;
using fixtures::mask;

namespace {

struct AbcDecomposition {
  MassFunction<1> m;
  CommonalityFunction<1> q;
  WeightFunction<1> w;
};

AbcDecomposition abc_decomposition() {
  auto m = MassFunction<1>(fixtures::abc_mass_values());
  auto q = mass_to_commonality(m);
  auto w = commonality_to_conjunctive_weights(q, mask(0b111));
  return {std::move(m), std::move(q), std::move(w)};
}

}  // namespace

TEST_CASE("ablating the singleton weight: blended and rescaled masses") {
  auto d = abc_decomposition();
  auto out = ablate_weight(d.m, d.q, d.w, mask(0b010), 1.0);
  CHECK(out.old_weight == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(out.mass.is_valid_mass);
  CHECK(out.mass.at(mask(0b010)) == doctest::Approx(2.0 / 15).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b000)) == doctest::Approx(3.0 / 15).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b111)) == doctest::Approx(1.0 / 15).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b011)) == doctest::Approx(1.0 / 15).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b110)) == doctest::Approx(2.0 / 15).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b001)) == doctest::Approx(6.0 / 15).epsilon(1e-12));
  CHECK(out.mass.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ablating a pair weight can push a mass negative") {
  auto d = abc_decomposition();
  auto out = ablate_weight(d.m, d.q, d.w, mask(0b011), 1.0);
  CHECK_FALSE(out.mass.is_valid_mass);
  CHECK(out.mass.at(mask(0b011)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b001)) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b010)) == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b000)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b111)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(out.mass.at(mask(0b110)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(out.mass.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ablation with the unchanged weight is the identity") {
  auto d = abc_decomposition();
  auto out = ablate_weight(d.m, d.q, d.w, mask(0b010), 1.5);
  CHECK(max_abs_diff(out.mass.values, d.m.values()) <= 1e-12);
  for (std::size_t i = 0; i < d.q.fp.size(); ++i)
    CHECK(out.q_prime[i] == doctest::Approx(d.q.values[i]).epsilon(1e-12));
}

TEST_CASE("ablation guards: top slot, foreign points, zero weights") {
  auto d = abc_decomposition();
  CHECK_THROWS_AS(ablate_weight(d.m, d.q, d.w, mask(0b111), 2.0),
                  NotAFocalPoint);
  CHECK_THROWS_AS(ablate_weight(d.m, d.q, d.w, mask(0b101), 2.0),
                  NotAFocalPoint);
  CHECK_THROWS_AS(ablate_weight(d.m, d.q, d.w, mask(0b010), 0.0), ZeroWeight);
  CHECK_THROWS_AS(ablate_weight(d.m, d.q, d.w, mask(0b010), -1.0), ZeroWeight);
}

TEST_CASE("ablated commonality scales exactly off the cone of x") {
  auto d = abc_decomposition();
  const double new_w = 0.75;
  auto out = ablate_weight(d.m, d.q, d.w, mask(0b011), new_w);
  const double ratio = new_w / 0.5;
  for (std::size_t i = 0; i < d.q.fp.size(); ++i) {
    const auto& p = d.q.fp.point(i);
    const double expect = leq(mask(0b011), p, OrderDirection::Superset)
                              ? d.q.values[i]
                              : ratio * d.q.values[i];
    CHECK(out.q_prime[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("ablation agrees with full recomputation from modified weights") {
  std::mt19937_64 rng(15001);
  std::uniform_real_distribution<double> new_weight(0.2, 2.5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 8;  // up to 10
    Frame frame = Frame::of_size(n);
    RandomMassOptions opts;
    opts.include_frame = true;
    auto m = random_mass<1>(frame, 2 + rng() % 5, rng, opts);
    auto q = mass_to_commonality(m);
    auto w = commonality_to_conjunctive_weights(q, frame.full_mask<1>());

    // pick an ablatable focal point
    std::vector<Mask64> candidates;
    for (const auto& p : w.nonneutral_points())
      if (!(p == w.top)) candidates.push_back(p);
    if (candidates.empty()) continue;
    const auto x = candidates[rng() % candidates.size()];
    const double nw = new_weight(rng);

    auto out = ablate_weight(m, q, w, x, nw);
    CHECK(out.mass.total() == doctest::Approx(1.0).epsilon(1e-9));

    // full recomputation: change w(x), renormalize through the top weight,
    // recompose q and m from scratch without mass validation
    std::vector<double> values(w.values.begin(), w.values.end());
    const std::size_t xi = w.fp.index_of(x);
    const std::size_t ti = w.fp.index_of(w.top);
    values[ti] *= w.values[xi] / nw;
    values[xi] = nw;
    WeightFunction<1> w_prime{WeightKind::Conjunctive, w.fp, values, w.top};
    auto q_prime = weights_to_commonality(w_prime);
    auto m_prime = efficient_mobius(q_prime.fp, q_prime.values);
    CHECK(max_abs_diff(out.mass.values, m_prime) <= 1e-9);
    for (std::size_t i = 0; i < q.fp.size(); ++i)
      CHECK(out.q_prime[i] ==
            doctest::Approx(q_prime.at(q.fp.point(i))).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked >= 60);
}

TEST_CASE("entries outside the cone keep their ranking") {
  auto d = abc_decomposition();
  auto out = ablate_weight(d.m, d.q, d.w, mask(0b010), 0.5);
  std::vector<Mask64> outside;
  for (const auto& p : d.q.fp.points())
    if (!leq(mask(0b010), p, OrderDirection::Superset)) outside.push_back(p);
  REQUIRE(outside.size() >= 2);
  for (std::size_t i = 0; i < outside.size(); ++i)
    for (std::size_t j = i + 1; j < outside.size(); ++j) {
      const bool before = d.m.at(outside[i]) < d.m.at(outside[j]);
      const bool after = out.mass.at(outside[i]) < out.mass.at(outside[j]);
      CHECK(before == after);
    }
}

TEST_CASE("projection cache is reused within one context") {
  auto d = abc_decomposition();
  AblationContext<1> ctx(d.m, d.q, d.w);
  const auto* first = &ctx.projection(mask(0b011));
  const auto* second = &ctx.projection(mask(0b011));
  CHECK(first == second);
  CHECK(first->at(mask(0b011)) == doctest::Approx(0.2));
  CHECK(first->at(mask(0b001)) == doctest::Approx(0.6));
  CHECK(first->at(mask(0b010)) == doctest::Approx(0.2));
  CHECK(first->at(mask(0b000)) == doctest::Approx(0.0));
}

TEST_CASE("generic perturbation: identity and untouched region") {
  std::mt19937_64 rng(15002);
  Frame frame = Frame::of_size(6);
  std::uniform_real_distribution<double> val(0.3, 2.0);
  SetFunction<1> h(frame, 1.0);
  for (auto bits : oracle::random_support(6, 4, rng)) h.set(mask(bits), val(rng));
  std::vector<Mask64> gens = h.support();
  gens.push_back(order_bottom<1>(6, OrderDirection::Subset));
  auto fp = FocalPointSet<1>::closure(frame, gens, OrderDirection::Subset);
  auto g = zeta_on_focal_points(fp, h);

  const auto x = fp.point(1 + rng() % (fp.size() - 1));
  auto same = perturb_multiplicative(h, x, h.at(x), g, fp);
  for (std::size_t i = 0; i < fp.size(); ++i)
    CHECK(same.g_prime[i] == doctest::Approx(g[i]).epsilon(1e-12));

  auto moved = perturb_multiplicative(h, x, 1.7 * h.at(x), g, fp);
  auto f = efficient_mobius(fp, g);
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (leq(x, fp.point(i), OrderDirection::Subset)) continue;
    CHECK(moved.g_prime[i] == doctest::Approx(g[i]).epsilon(1e-12));
    CHECK(moved.f_prime.at(fp.point(i)) ==
          doctest::Approx(f.at(fp.point(i))).epsilon(1e-12));
  }

  CHECK_THROWS_AS(perturb_multiplicative(h, x, 0.0, g, fp), ZeroImage);
}

TEST_CASE("generic perturbation matches a from-scratch rebuild") {
  std::mt19937_64 rng(15003);
  std::uniform_real_distribution<double> val(0.3, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 4 + trial % 7;  // up to 10
    Frame frame = Frame::of_size(n);
    for (auto dir : {OrderDirection::Subset, OrderDirection::Superset}) {
      SetFunction<1> h(frame, 1.0);
      for (auto bits : oracle::random_support(n, 3 + rng() % 3, rng))
        h.set(mask(bits), val(rng));
      std::vector<Mask64> gens = h.support();
      gens.push_back(order_bottom<1>(n, dir));
      auto fp = FocalPointSet<1>::closure(frame, gens, dir);
      auto g = zeta_on_focal_points(fp, h);

      const auto x = fp.point(rng() % fp.size());
      const double nv = val(rng);
      auto out = perturb_multiplicative(h, x, nv, g, fp);

      // rebuild h' from scratch and push it through the dense oracles
      SetFunction<1> h_prime = h;
      h_prime.set(x, nv);
      auto dense_h = to_dense(h_prime);
      auto dense_g =
          oracle::product_zeta(dense_h, n, dir == OrderDirection::Superset);
      SetFunction<1> g_prime_full(frame, 0.0);
      for (std::uint64_t y = 0; y < dense_g.size(); ++y)
        g_prime_full.set(mask(y), dense_g[y]);
      auto f_prime_full = mobius_naive(g_prime_full, dir);

      for (std::size_t i = 0; i < fp.size(); ++i)
        CHECK(out.g_prime[i] ==
              doctest::Approx(dense_g[fp.point(i).low_word()]).epsilon(1e-9));
      CHECK(max_abs_diff(out.f_prime, f_prime_full) <= 1e-9);
    }
  }
}
