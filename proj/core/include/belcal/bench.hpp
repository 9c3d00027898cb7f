#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "belcal/fmt.hpp"
#include "belcal/naive.hpp"
#include "belcal/random_mass.hpp"
#include "belcal/representations.hpp"

namespace belcal {

/// Three-engine agreement-then-timing harness: every applicable engine runs
/// the same seeded input; a row is only timed after its result matched the
/// reference within the tolerance.
struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> supports;
  std::vector<std::uint64_t> seeds;
  std::uint64_t mem_cap_bytes = kDefaultDenseCapBytes;
  double tolerance = 1e-9;
};

struct BenchRow {
  std::string engine;     // naive | fmt | focal
  std::string operation;  // m->q | q->m | m->q->w->m
  std::size_t n = 0;
  std::size_t supp = 0;
  std::size_t fp = 0;
  std::uint64_t seed = 0;
  std::uint64_t wall_ns = 0;  // 0 unless status is "1"
  std::string status;         // 1 agreed+timed | 0 disagreed | skip
};

/// The naive Mobius inversion costs O(4^N); past this it only wastes bench
/// wall time, so those cells are emitted as skipped.
inline constexpr std::size_t kNaiveMobiusBenchMax = 14;

namespace detail {

template <class Fn>
std::uint64_t time_ns(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

inline bool agrees(std::span<const double> a, std::span<const double> b,
                   double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace detail

inline std::vector<BenchRow> run_bench(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  const char* kOps[3] = {"m->q", "q->m", "m->q->w->m"};

  for (std::size_t n : config.sizes) {
    if (n > 64)
      throw FrameTooLarge("bench sizes are limited to 64 frame elements");
    Frame frame = Frame::of_size(n);
    const bool fmt_ok =
        n <= kFmtMaxFrame &&
        (std::uint64_t{1} << n) * sizeof(double) <= config.mem_cap_bytes;
    const bool naive_zeta_ok = n <= kNaiveMaxFrame;
    const bool naive_mobius_ok = n <= kNaiveMobiusBenchMax;

    for (std::size_t supp : config.supports) {
      if (n < 40 && supp + 1 >= (std::uint64_t{1} << n)) continue;
      for (std::uint64_t seed : config.seeds) {
        std::mt19937_64 rng(seed * 1000003ull + n * 101 + supp);
        RandomMassOptions opts;
        opts.include_frame = true;  // keeps every transform defined everywhere
        auto m = random_mass<1>(frame, supp, rng, opts);
        auto fp = FocalPointSet<1>::closure(frame, m.support(),
                                            OrderDirection::Superset);

        std::vector<double> m_on_fp(fp.size());
        for (std::size_t i = 0; i < fp.size(); ++i)
          m_on_fp[i] = m.at(fp.point(i));

        auto emit = [&](const char* engine, int op,
                        const std::optional<std::vector<double>>& result,
                        std::span<const double> reference,
                        const std::function<void()>& timed) {
          BenchRow row{engine, kOps[op], n,           m.support_size(),
                       fp.size(), seed,  0,           "skip"};
          if (result.has_value()) {
            if (detail::agrees(*result, reference, config.tolerance)) {
              row.status = "1";
              row.wall_ns = detail::time_ns(timed);
            } else {
              row.status = "0";
            }
          }
          rows.push_back(std::move(row));
        };

        // --- focal engine (reference) ---
        auto q_focal = zeta_on_focal_points(fp, m.values());
        emit("focal", 0, q_focal, q_focal, [&] {
          auto fp2 = FocalPointSet<1>::closure(frame, m.support(),
                                               OrderDirection::Superset);
          (void)zeta_on_focal_points(fp2, m.values());
        });

        auto at_fp = [&](const SetFunction<1>& f) {
          std::vector<double> out(fp.size());
          for (std::size_t i = 0; i < fp.size(); ++i)
            out[i] = f.at(fp.point(i));
          return out;
        };

        auto m_back_focal = at_fp(efficient_mobius(fp, q_focal));
        emit("focal", 1, m_back_focal, m_on_fp,
             [&] { (void)efficient_mobius(fp, q_focal); });

        auto focal_round = [&] {
          auto h = efficient_mobius_multiplicative(fp, q_focal);
          std::vector<double> hv(fp.size());
          for (std::size_t i = 0; i < fp.size(); ++i) hv[i] = h.at(fp.point(i));
          auto q2 = product_zeta_on_focal_points(fp, hv);
          return efficient_mobius(fp, q2);
        };
        emit("focal", 2, at_fp(focal_round()), m_on_fp,
             [&] { (void)focal_round(); });

        // --- fmt engine ---
        if (!fmt_ok) {
          for (int op = 0; op < 3; ++op)
            emit("fmt", op, std::nullopt, m_on_fp, [] {});
        } else {
          auto dense_m = to_dense(m.values(), config.mem_cap_bytes);
          auto sample = [&](const std::vector<double>& dense) {
            std::vector<double> out(fp.size());
            for (std::size_t i = 0; i < fp.size(); ++i)
              out[i] = dense[fp.point(i).low_word()];
            return out;
          };

          auto q_dense = dense_m;
          fmt(q_dense, n, TransformKind::Zeta, OrderDirection::Superset,
              config.mem_cap_bytes);
          emit("fmt", 0, sample(q_dense), q_focal, [&] {
            auto a = dense_m;
            fmt(a, n, TransformKind::Zeta, OrderDirection::Superset,
                config.mem_cap_bytes);
          });

          auto m_dense = q_dense;
          fmt(m_dense, n, TransformKind::Mobius, OrderDirection::Superset,
              config.mem_cap_bytes);
          emit("fmt", 1, sample(m_dense), m_on_fp, [&] {
            auto a = q_dense;
            fmt(a, n, TransformKind::Mobius, OrderDirection::Superset,
                config.mem_cap_bytes);
          });

          auto fmt_round = [&] {
            auto a = q_dense;
            fmt_multiplicative(a, n, TransformKind::Mobius,
                               OrderDirection::Superset, config.mem_cap_bytes);
            fmt_multiplicative(a, n, TransformKind::Zeta,
                               OrderDirection::Superset, config.mem_cap_bytes);
            fmt(a, n, TransformKind::Mobius, OrderDirection::Superset,
                config.mem_cap_bytes);
            return a;
          };
          emit("fmt", 2, sample(fmt_round()), m_on_fp,
               [&] { (void)fmt_round(); });
        }

        // --- naive engine ---
        if (!naive_zeta_ok) {
          for (int op = 0; op < 3; ++op)
            emit("naive", op, std::nullopt, m_on_fp, [] {});
        } else {
          auto q_full = zeta_naive(m.values(), OrderDirection::Superset);
          emit("naive", 0, at_fp(q_full), q_focal, [&] {
            (void)zeta_naive(m.values(), OrderDirection::Superset);
          });

          if (!naive_mobius_ok) {
            emit("naive", 1, std::nullopt, m_on_fp, [] {});
            emit("naive", 2, std::nullopt, m_on_fp, [] {});
          } else {
            auto m_full = mobius_naive(q_full, OrderDirection::Superset);
            emit("naive", 1, at_fp(m_full), m_on_fp, [&] {
              (void)mobius_naive(q_full, OrderDirection::Superset);
            });

            auto naive_round = [&] {
              SetFunction<1> q_mult(frame, 1.0);
              for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                q_mult.set(BitMask<1>::from_low_word(y),
                           q_full.at(BitMask<1>::from_low_word(y)));
              auto h = mobius_naive(q_mult, OrderDirection::Superset);
              auto q_again = zeta_naive(h, OrderDirection::Superset);
              SetFunction<1> q_add(frame, 0.0);
              for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
                q_add.set(BitMask<1>::from_low_word(y),
                          q_again.at(BitMask<1>::from_low_word(y)));
              return mobius_naive(q_add, OrderDirection::Superset);
            };
            emit("naive", 2, at_fp(naive_round()), m_on_fp,
                 [&] { (void)naive_round(); });
          }
        }
      }
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "engine,operation,N,supp,fp,seed,wall_ns,ok\n";
  for (const auto& r : rows)
    out << r.engine << ',' << r.operation << ',' << r.n << ',' << r.supp << ','
        << r.fp << ',' << r.seed << ',' << r.wall_ns << ',' << r.status << '\n';
  return out.str();
}

}  // namespace belcal
