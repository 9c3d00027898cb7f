// belcal command line tool: convert between belief representations on focal
// points, fuse sources, ablate decomposition weights, and benchmark the
// focal/fmt/naive engines against each other.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "belcal/belcal.hpp"

namespace {

using namespace belcal;

struct TransformArgs {
  std::string input;
  std::string to;
  std::string engine = "focal";
  std::string output;
  bool show_focal_points = false;
  std::uint64_t mem_cap_bytes = kDefaultDenseCapBytes;
};

struct FuseArgs {
  std::vector<std::string> inputs;
  std::string rule = "dempster";
  double alpha = 0.999;
  bool normalize = false;
  std::string output;
};

struct AblateArgs {
  std::string input;
  std::string point;
  double new_weight = 1.0;
  std::string output;
};

struct BenchArgs {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> supports;
  std::vector<std::uint64_t> seeds;
  std::uint64_t mem_cap_bytes = kDefaultDenseCapBytes;
  std::string output;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    belcal::detail::write_file_atomic(path, text);
  }
}

template <std::size_t W>
BitMask<W> parse_point(const Frame& frame, std::string spec) {
  std::erase_if(spec, [](char c) { return c == '{' || c == '}' || c == ' '; });
  std::vector<std::string> labels;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) labels.push_back(item);
  return frame.mask_of<W>(labels);
}

template <std::size_t W>
std::string focal_point_listing(const FocalPointSet<W>& fp) {
  const auto& frame = fp.frame();
  std::ostringstream out;
  out << "focal points ("
      << (fp.direction() == OrderDirection::Superset ? "superset" : "subset")
      << " order, " << fp.size() << " points, " << fp.generators().size()
      << " generators):\n";
  const char* op = fp.direction() == OrderDirection::Superset ? " ^ " : " v ";
  for (std::size_t i = 0; i < fp.size(); ++i) {
    out << "  " << frame.format_set(fp.point(i));
    const auto& origin = fp.origins()[i];
    if (origin.is_generator()) {
      out << "  generator";
    } else {
      out << "  = " << frame.format_set(fp.point(origin.left)) << op
          << frame.format_set(fp.point(origin.right));
    }
    out << "\n";
  }
  return out.str();
}

/// Remaps a mass confined to 2^domain onto a frame spanned by the domain's
/// labels, so dense engines can work in 2^|domain| instead of 2^N.
template <std::size_t W>
struct DomainReduction {
  Frame frame;
  std::vector<std::size_t> bits;  // reduced bit -> original bit

  BitMask<W> to_reduced(const BitMask<W>& original) const {
    BitMask<W> out;
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (original.test(bits[i])) out.set(i);
    return out;
  }

  BitMask<W> to_original(const BitMask<W>& reduced) const {
    BitMask<W> out;
    reduced.for_each_bit([&](std::size_t i) { out.set(bits[i]); });
    return out;
  }
};

template <std::size_t W>
DomainReduction<W> reduce_to_domain(const Frame& frame,
                                    const BitMask<W>& domain) {
  std::vector<std::string> labels;
  std::vector<std::size_t> bits;
  domain.for_each_bit([&](std::size_t i) {
    labels.push_back(frame.label(i));
    bits.push_back(i);
  });
  return DomainReduction<W>{Frame(std::move(labels)), std::move(bits)};
}

enum class Engine { Focal, Fmt, Naive };

Engine parse_engine(const std::string& s) {
  if (s == "focal") return Engine::Focal;
  if (s == "fmt") return Engine::Fmt;
  if (s == "naive") return Engine::Naive;
  throw ValidationError("unknown engine: " + s);
}

/// Zeta values (q or b) on the focal points, by engine.
template <std::size_t W>
std::vector<double> zeta_values_by_engine(const MassFunction<W>& m,
                                          const FocalPointSet<W>& fp,
                                          Engine engine,
                                          std::uint64_t mem_cap) {
  switch (engine) {
    case Engine::Focal:
      return zeta_on_focal_points(fp, m.values());
    case Engine::Naive: {
      auto dense = zeta_naive(m.values(), fp.direction());
      std::vector<double> out(fp.size());
      for (std::size_t i = 0; i < fp.size(); ++i) out[i] = dense.at(fp.point(i));
      return out;
    }
    case Engine::Fmt: {
      if constexpr (W == 1) {
        auto data = to_dense(m.values(), mem_cap);
        fmt(data, m.frame().size(), TransformKind::Zeta, fp.direction(),
            mem_cap);
        std::vector<double> out(fp.size());
        for (std::size_t i = 0; i < fp.size(); ++i)
          out[i] = data[fp.point(i).low_word()];
        return out;
      }
      throw FrameTooLarge("the fmt engine needs a single-word frame");
    }
  }
  throw ValidationError("unreachable engine");
}

/// Conjunctive weights over C = union of the support, by engine. The dense
/// engines work in the reduced frame spanned by C.
template <std::size_t W>
WeightFunction<W> weights_by_engine(const MassFunction<W>& m, Engine engine,
                                    std::uint64_t mem_cap) {
  if (engine == Engine::Focal) return generalized_conjunctive_decomposition(m);

  const auto c = m.support_union();
  if (!m.values().contains(c))
    throw MaximumMissing(
        "the union of the support carries no mass; discount first");
  auto reduction = reduce_to_domain(m.frame(), c);
  SetFunction<W> reduced_values(reduction.frame, 0.0);
  for (const auto& [s, v] : m.values().entries())
    reduced_values.set(reduction.to_reduced(s), v);
  MassFunction<W> reduced(std::move(reduced_values));

  // target shape shared with the focal engine
  auto q = mass_to_commonality(m);
  auto shape = commonality_to_conjunctive_weights(q, c);

  std::vector<double> w_values(shape.fp.size());
  if (engine == Engine::Naive) {
    auto q_dense = zeta_naive(reduced.values(), OrderDirection::Superset);
    SetFunction<W> q_mult(reduction.frame, 1.0);
    const std::uint64_t total = std::uint64_t{1} << reduction.frame.size();
    for (std::uint64_t y = 0; y < total; ++y)
      q_mult.set(BitMask<W>::from_low_word(y),
                 q_dense.at(BitMask<W>::from_low_word(y)));
    auto h = mobius_naive(q_mult, OrderDirection::Superset);
    for (std::size_t i = 0; i < shape.fp.size(); ++i)
      w_values[i] = 1.0 / h.at(reduction.to_reduced(shape.fp.point(i)));
  } else {
    if constexpr (W == 1) {
      auto data = to_dense(reduced.values(), mem_cap);
      fmt(data, reduction.frame.size(), TransformKind::Zeta,
          OrderDirection::Superset, mem_cap);
      fmt_multiplicative(data, reduction.frame.size(), TransformKind::Mobius,
                         OrderDirection::Superset, mem_cap);
      for (std::size_t i = 0; i < shape.fp.size(); ++i)
        w_values[i] =
            1.0 / data[reduction.to_reduced(shape.fp.point(i)).low_word()];
    } else {
      throw FrameTooLarge("the fmt engine needs a single-word frame");
    }
  }
  return WeightFunction<W>{WeightKind::Conjunctive, shape.fp,
                           std::move(w_values), c};
}

/// Disjunctive weights with the empty set as boundary, by engine.
template <std::size_t W>
WeightFunction<W> disjunctive_weights_by_engine(const MassFunction<W>& m,
                                                Engine engine,
                                                std::uint64_t mem_cap) {
  auto b = mass_to_implicability(m);
  if (engine == Engine::Focal)
    return implicability_to_disjunctive_weights(b, BitMask<W>::none());
  auto shape = implicability_to_disjunctive_weights(b, BitMask<W>::none());
  std::vector<double> v_values(shape.fp.size());
  if (engine == Engine::Naive) {
    auto b_dense = zeta_naive(m.values(), OrderDirection::Subset);
    SetFunction<W> b_mult(m.frame(), 1.0);
    const std::uint64_t total = std::uint64_t{1} << m.frame().size();
    for (std::uint64_t y = 0; y < total; ++y)
      b_mult.set(BitMask<W>::from_low_word(y),
                 b_dense.at(BitMask<W>::from_low_word(y)));
    auto h = mobius_naive(b_mult, OrderDirection::Subset);
    for (std::size_t i = 0; i < shape.fp.size(); ++i)
      v_values[i] = 1.0 / h.at(shape.fp.point(i));
  } else {
    if constexpr (W == 1) {
      auto data = to_dense(m.values(), mem_cap);
      fmt(data, m.frame().size(), TransformKind::Zeta, OrderDirection::Subset,
          mem_cap);
      fmt_multiplicative(data, m.frame().size(), TransformKind::Mobius,
                         OrderDirection::Subset, mem_cap);
      for (std::size_t i = 0; i < shape.fp.size(); ++i)
        v_values[i] = 1.0 / data[shape.fp.point(i).low_word()];
    } else {
      throw FrameTooLarge("the fmt engine needs a single-word frame");
    }
  }
  return WeightFunction<W>{WeightKind::Disjunctive, shape.fp,
                           std::move(v_values), BitMask<W>::none()};
}

/// Mass from a compact values file, by engine. The dense engines first
/// extend the compact images to the full (possibly reduced) lattice.
template <std::size_t W>
MassFunction<W> mass_from_values(const ValueFile<W>& file, Engine engine,
                                 std::uint64_t mem_cap) {
  const Frame& frame = file.frame;
  std::vector<BitMask<W>> points;
  points.reserve(file.values.size());
  for (const auto& [p, v] : file.values) points.push_back(p);

  switch (file.kind) {
    case ValueKind::Commonality:
    case ValueKind::Implicability: {
      const auto d = file.kind == ValueKind::Commonality
                         ? OrderDirection::Superset
                         : OrderDirection::Subset;
      auto fp = FocalPointSet<W>::from_closed_points(frame, points, d);
      std::unordered_map<BitMask<W>, double, MaskHash<W>> images;
      for (const auto& [p, v] : file.values) images[p] = v;
      auto g = aligned_values(fp, images);
      if (engine == Engine::Focal)
        return MassFunction<W>(efficient_mobius(fp, g));
      // dense engines: extend the compact definition, then invert densely
      const std::size_t n = frame.size();
      if (n > kFmtMaxFrame ||
          (std::uint64_t{1} << n) * sizeof(double) > mem_cap)
        throw FrameTooLarge("dense engines exceed the memory cap here");
      std::vector<double> dense(std::size_t{1} << n);
      for (std::uint64_t y = 0; y < dense.size(); ++y)
        dense[y] = extend_zeta(fp, g, 0.0, BitMask<W>::from_low_word(y));
      if (engine == Engine::Fmt) {
        if constexpr (W == 1) {
          fmt(dense, n, TransformKind::Mobius, d, mem_cap);
          return MassFunction<W>(from_dense<W>(frame, dense, 0.0));
        }
        throw FrameTooLarge("the fmt engine needs a single-word frame");
      }
      SetFunction<W> g_full(frame, 0.0);
      for (std::uint64_t y = 0; y < dense.size(); ++y)
        g_full.set(BitMask<W>::from_low_word(y), dense[y]);
      return MassFunction<W>(mobius_naive(g_full, d));
    }
    case ValueKind::ConjunctiveWeights: {
      auto fp = FocalPointSet<W>::from_closed_points(frame, points,
                                                     OrderDirection::Superset);
      const auto top = fp.point(0);
      for (const auto& p : fp.points())
        if (!p.subset_of(top))
          throw ValidationError(
              "conjunctive weight files need a single maximal set");
      std::unordered_map<BitMask<W>, double, MaskHash<W>> images;
      for (const auto& [p, v] : file.values) images[p] = v;
      auto values = aligned_values(fp, images);
      WeightFunction<W> w{WeightKind::Conjunctive, std::move(fp),
                          std::move(values), top};
      if (engine == Engine::Focal) return weights_to_mass(w);
      // dense route in the frame spanned by the boundary set
      auto reduction = reduce_to_domain(frame, top);
      const std::size_t n = reduction.frame.size();
      if (n > kFmtMaxFrame ||
          (std::uint64_t{1} << n) * sizeof(double) > mem_cap)
        throw FrameTooLarge("dense engines exceed the memory cap here");
      std::vector<double> dense(std::size_t{1} << n, 1.0);
      for (std::size_t i = 0; i < w.fp.size(); ++i)
        dense[reduction.to_reduced(w.fp.point(i)).low_word()] =
            1.0 / w.values[i];
      if constexpr (W == 1) {
        fmt_multiplicative(dense, n, TransformKind::Zeta,
                           OrderDirection::Superset, mem_cap);
        fmt(dense, n, TransformKind::Mobius, OrderDirection::Superset, mem_cap);
      } else {
        throw FrameTooLarge("dense engines need a single-word frame");
      }
      SetFunction<W> out(frame, 0.0);
      for (std::uint64_t y = 0; y < dense.size(); ++y)
        out.set(reduction.to_original(BitMask<W>::from_low_word(y)), dense[y]);
      return MassFunction<W>(std::move(out));
    }
    case ValueKind::DisjunctiveWeights: {
      auto fp = FocalPointSet<W>::from_closed_points(frame, points,
                                                     OrderDirection::Subset);
      const auto bottom = fp.point(0);
      for (const auto& p : fp.points())
        if (!bottom.subset_of(p))
          throw ValidationError(
              "disjunctive weight files need a single minimal set");
      std::unordered_map<BitMask<W>, double, MaskHash<W>> images;
      for (const auto& [p, v] : file.values) images[p] = v;
      auto values = aligned_values(fp, images);
      WeightFunction<W> v{WeightKind::Disjunctive, std::move(fp),
                          std::move(values), bottom};
      if (engine == Engine::Focal) return weights_to_mass(v);
      if (!bottom.empty())
        throw ValidationError(
            "dense engines support disjunctive weights anchored at {} only");
      const std::size_t n = frame.size();
      if (n > kFmtMaxFrame ||
          (std::uint64_t{1} << n) * sizeof(double) > mem_cap)
        throw FrameTooLarge("dense engines exceed the memory cap here");
      std::vector<double> dense(std::size_t{1} << n, 1.0);
      for (std::size_t i = 0; i < v.fp.size(); ++i)
        dense[v.fp.point(i).low_word()] = 1.0 / v.values[i];
      if constexpr (W == 1) {
        fmt_multiplicative(dense, n, TransformKind::Zeta,
                           OrderDirection::Subset, mem_cap);
        fmt(dense, n, TransformKind::Mobius, OrderDirection::Subset, mem_cap);
      } else {
        throw FrameTooLarge("dense engines need a single-word frame");
      }
      return MassFunction<W>(from_dense<W>(frame, dense, 0.0));
    }
    default:
      throw ValidationError("cannot recover a mass from this value kind");
  }
}

template <std::size_t W>
int run_transform(const TransformArgs& args) {
  const Engine engine = parse_engine(args.engine);
  const std::string text = belcal::detail::read_file(args.input);

  if (args.to.rfind("mass-from-", 0) == 0) {
    auto file = parse_values<W>(text);
    const std::string expect = args.to.substr(std::string("mass-from-").size());
    const std::string actual = to_string(file.kind);
    const bool matches =
        (expect == "q" && file.kind == ValueKind::Commonality) ||
        (expect == "b" && file.kind == ValueKind::Implicability) ||
        (expect == "w" && file.kind == ValueKind::ConjunctiveWeights) ||
        (expect == "v" && file.kind == ValueKind::DisjunctiveWeights);
    if (!matches)
      throw ValidationError("input file holds " + actual +
                            " values, not what --to " + args.to + " expects");
    auto mass = mass_from_values(file, engine, args.mem_cap_bytes);
    write_output(args.output, format_evidence(mass));
    return 0;
  }

  auto evidence = validate_evidence<W>(parse_evidence(text));
  for (const auto& w : evidence.warnings) std::cerr << "warning: " << w << "\n";
  const auto& m = evidence.mass;

  std::string out_text;
  std::optional<FocalPointSet<W>> listing_fp;
  if (args.to == "q" || args.to == "b" || args.to == "bel" || args.to == "pl") {
    const auto d = args.to == "q" ? OrderDirection::Superset
                                  : OrderDirection::Subset;
    auto fp = FocalPointSet<W>::closure(m.frame(), m.support(), d);
    auto values = zeta_values_by_engine(m, fp, engine, args.mem_cap_bytes);
    ValueKind kind = ValueKind::Commonality;
    if (args.to == "b") kind = ValueKind::Implicability;
    if (args.to == "bel") {
      kind = ValueKind::Belief;
      const double empty_mass = m.at(BitMask<W>::none());
      for (auto& v : values) v -= empty_mass;
    }
    if (args.to == "pl") {
      kind = ValueKind::Plausibility;
      std::vector<double> pl(values.size());
      for (std::size_t i = 0; i < fp.size(); ++i)
        pl[i] = 1.0 - extend_zeta(fp, values, 0.0,
                                  m.frame().complement(fp.point(i)));
      values = std::move(pl);
    }
    out_text = format_values(m.frame(), kind, fp.points(),
                             std::span<const double>(values));
    listing_fp = std::move(fp);
  } else if (args.to == "w") {
    auto w = weights_by_engine(m, engine, args.mem_cap_bytes);
    out_text = format_values(m.frame(), ValueKind::ConjunctiveWeights,
                             w.fp.points(), std::span<const double>(w.values));
    listing_fp = w.fp;
  } else if (args.to == "v") {
    auto v = disjunctive_weights_by_engine(m, engine, args.mem_cap_bytes);
    out_text = format_values(m.frame(), ValueKind::DisjunctiveWeights,
                             v.fp.points(), std::span<const double>(v.values));
    listing_fp = v.fp;
  } else {
    throw ValidationError("unknown --to target: " + args.to);
  }

  if (args.show_focal_points && listing_fp)
    std::cout << focal_point_listing(*listing_fp);
  write_output(args.output, out_text);
  return 0;
}

template <std::size_t W>
int run_fuse(const FuseArgs& args) {
  std::vector<Evidence<W>> sources;
  for (const auto& path : args.inputs) {
    sources.push_back(load_evidence<W>(path));
    if (!(sources.front().frame == sources.back().frame))
      throw ValidationError("all fused sources must share one frame: " + path);
  }
  for (const auto& ev : sources)
    for (const auto& w : ev.warnings) std::cerr << "warning: " << w << "\n";

  MassFunction<W> acc = sources.front().mass;
  SetFunction<W> raw = acc.values();  // carries conjunctive empty-set mass
  for (std::size_t i = 1; i < sources.size(); ++i) {
    const auto& next = sources[i].mass;
    if (args.rule == "dempster") {
      acc = dempster_combine_via_commonalities(acc, next);
      raw = acc.values();
    } else if (args.rule == "conjunctive") {
      raw = conjunctive_combine_via_commonalities(MassFunction<W>(raw), next);
    } else if (args.rule == "disjunctive") {
      acc = disjunctive_combine(acc, next);
      raw = acc.values();
    } else if (args.rule == "cautious") {
      WeightFusionOptions opts;
      opts.alpha = args.alpha;
      auto result = cautious_combine(MassFunction<W>(raw), next, opts);
      if (result.discounted1 || result.discounted2)
        std::cerr << "note: discounted source "
                  << (result.discounted1 ? "1" : "2") << " with alpha "
                  << result.alpha << " to keep weights defined\n";
      raw = result.mass.values();
    } else {
      throw ValidationError("unknown fusion rule: " + args.rule);
    }
  }

  MassFunction<W> out{raw};
  if (args.normalize) {
    const double conflict = out.at(BitMask<W>::none());
    if (1.0 - conflict <= kSupportEps)
      throw TotalConflict("cannot normalize away total conflict");
    SetFunction<W> scaled(out.frame(), 0.0);
    for (const auto& [s, v] : out.values().entries())
      if (!s.empty()) scaled.set(s, v / (1.0 - conflict));
    out = MassFunction<W>(std::move(scaled));
  }
  write_output(args.output, format_evidence(out));
  return 0;
}

template <std::size_t W>
int run_ablate(const AblateArgs& args) {
  auto evidence = load_evidence<W>(args.input);
  const auto& m = evidence.mass;
  auto point = parse_point<W>(m.frame(), args.point);
  auto q = mass_to_commonality(m);
  auto w = generalized_conjunctive_decomposition(m);
  auto result = ablate_weight(m, q, w, point, args.new_weight);

  std::ostringstream report;
  report << "ablation of w(" << m.frame().format_set(point)
         << "): " << result.old_weight << " -> " << result.new_weight << "\n";
  report << "valid mass: " << (result.mass.is_valid_mass ? "yes" : "no")
         << ", total: " << result.mass.total() << "\n";
  report << "updated q on the focal points:\n";
  for (std::size_t i = 0; i < q.fp.size(); ++i)
    report << "  " << m.frame().format_set(q.fp.point(i)) << " : "
           << result.q_prime[i] << "\n";
  report << "updated mass:\n";
  for (std::size_t i = 0; i < q.fp.size(); ++i)
    report << "  " << m.frame().format_set(q.fp.point(i)) << " : "
           << result.mass.at(q.fp.point(i)) << "\n";
  std::cout << report.str();

  if (!args.output.empty()) {
    nlohmann::ordered_json j;
    j["point"] = m.frame().labels_of(point);
    j["old_weight"] = result.old_weight;
    j["new_weight"] = result.new_weight;
    j["valid_mass"] = result.mass.is_valid_mass;
    j["total"] = result.mass.total();
    auto& mp = j["mass_prime"] = nlohmann::ordered_json::array();
    auto& qp = j["q_prime"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < q.fp.size(); ++i) {
      nlohmann::ordered_json me, qe;
      me["set"] = m.frame().labels_of(q.fp.point(i));
      me["value"] = result.mass.at(q.fp.point(i));
      mp.push_back(std::move(me));
      qe["set"] = m.frame().labels_of(q.fp.point(i));
      qe["value"] = result.q_prime[i];
      qp.push_back(std::move(qe));
    }
    belcal::detail::write_file_atomic(args.output, j.dump(2) + "\n");
  }
  return 0;
}

int run_bench_cmd(const BenchArgs& args) {
  BenchConfig config;
  config.sizes = args.sizes;
  config.supports = args.supports;
  config.seeds = args.seeds.empty() ? std::vector<std::uint64_t>{42}
                                    : args.seeds;
  config.mem_cap_bytes = args.mem_cap_bytes;
  auto rows = run_bench(config);
  write_output(args.output, bench_csv(rows));
  for (const auto& row : rows)
    if (row.status == "0")
      throw ValidationError("engines disagree on " + row.engine + " " +
                            row.operation + " at N=" + std::to_string(row.n));
  return 0;
}

template <class Fn>
int dispatch_by_width(const std::string& input_path, Fn&& fn) {
  const std::size_t n = peek_frame_size(belcal::detail::read_file(input_path));
  if (n <= 64) return fn(std::integral_constant<std::size_t, 1>{});
  if (n <= 128) return fn(std::integral_constant<std::size_t, 2>{});
  if (n <= 256) return fn(std::integral_constant<std::size_t, 4>{});
  throw ValidationError("frames beyond 256 elements are not supported");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const NotAMass*>(&e) ||
      dynamic_cast<const InvalidPartition*>(&e) ||
      dynamic_cast<const InvalidTarget*>(&e) ||
      dynamic_cast<const ValidationError*>(&e))
    return 3;
  if (dynamic_cast<const FrameTooLarge*>(&e)) return 5;
  if (dynamic_cast<const Error*>(&e)) return 4;  // math-domain family
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact belief transforms, fusion and ablation on focal points"};
  app.require_subcommand(1);

  TransformArgs targs;
  auto* transform = app.add_subcommand(
      "transform", "convert a mass file between belief representations");
  transform->add_option("input", targs.input, "evidence or values file")
      ->required();
  transform
      ->add_option("--to", targs.to,
                   "q|b|w|v|bel|pl|mass-from-q|mass-from-b|mass-from-w|"
                   "mass-from-v")
      ->required();
  transform->add_option("--engine", targs.engine, "focal|fmt|naive");
  transform->add_option("-o,--output", targs.output, "output path (stdout if absent)");
  transform->add_flag("--show-focal-points", targs.show_focal_points,
                      "print the closure with generator provenance");
  transform->add_option("--mem-cap-bytes", targs.mem_cap_bytes,
                        "dense working-array cap for the fmt engine");

  FuseArgs fargs;
  auto* fuse = app.add_subcommand("fuse", "combine evidence files");
  fuse->add_option("inputs", fargs.inputs, "evidence files")
      ->required()
      ->expected(-1);
  fuse->add_option("--rule", fargs.rule,
                   "dempster|conjunctive|disjunctive|cautious");
  fuse->add_option("--alpha", fargs.alpha,
                   "discount factor for cautious fusion fallback");
  fuse->add_flag("--normalize", fargs.normalize,
                 "move any mass on {} back onto the other sets");
  fuse->add_option("-o,--output", fargs.output, "output path");

  AblateArgs aargs;
  auto* ablate = app.add_subcommand(
      "ablate", "change one conjunctive decomposition weight");
  ablate->add_option("input", aargs.input, "evidence file")->required();
  ablate->add_option("--point", aargs.point, "focal point, e.g. 'a,b' or '{}'")
      ->required();
  ablate->add_option("--new-weight", aargs.new_weight, "replacement weight")
      ->required();
  ablate->add_option("-o,--output", aargs.output, "JSON report path");

  BenchArgs bargs;
  auto* bench = app.add_subcommand(
      "bench", "compare the naive, fmt and focal engines");
  bench->add_option("--sizes", bargs.sizes, "frame sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--supports", bargs.supports, "support sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--seed", bargs.seeds, "seeds (repeat or comma-separate)")
      ->delimiter(',');
  bench->add_option("--mem-cap-bytes", bargs.mem_cap_bytes,
                    "dense working-array cap");
  bench->add_option("-o,--output", bargs.output, "CSV path (stdout if absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*transform)
      return dispatch_by_width(targs.input, [&](auto width) {
        return run_transform<decltype(width)::value>(targs);
      });
    if (*fuse)
      return dispatch_by_width(fargs.inputs.front(), [&](auto width) {
        return run_fuse<decltype(width)::value>(fargs);
      });
    if (*ablate)
      return dispatch_by_width(aargs.input, [&](auto width) {
        return run_ablate<decltype(width)::value>(aargs);
      });
    if (*bench) return run_bench_cmd(bargs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
