#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "belcal/errors.hpp"
#include "belcal/representations.hpp"

namespace belcal {

/// Files tolerate more rounding on the mass total than in-memory values do;
/// anything within this bound is renormalized on load (with a warning).
inline constexpr double kFileMassTol = 1e-6;

struct EvidenceMetadata {
  std::optional<std::string> source;
  std::optional<std::string> timestamp;
};

/// Parsed but not yet validated evidence text: label-based sets so files
/// survive frame reordering. Bit positions always come from the file's own
/// frame order.
struct RawEvidence {
  std::vector<std::string> frame_labels;
  std::vector<std::pair<std::vector<std::string>, double>> masses;
  EvidenceMetadata metadata;
};

namespace detail {

/// Files carry 15 significant digits: comfortably finer than every stated
/// tolerance, and coarse enough that engines agreeing to 1e-12 emit
/// byte-identical output.
inline double file_round(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

inline std::vector<std::string> string_array(const nlohmann::json& j,
                                             const char* field) {
  if (!j.is_array())
    throw ParseError(std::string(field) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string())
      throw ParseError(std::string(field) + " must contain only strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline RawEvidence parse_evidence(const std::string& text) {
  auto j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("frame") || !j.contains("masses"))
    throw ParseError("evidence files need top-level 'frame' and 'masses' keys");
  RawEvidence raw;
  raw.frame_labels = detail::string_array(j["frame"], "frame");
  if (!j["masses"].is_array())
    throw ParseError("'masses' must be an array of {set, mass} objects");
  std::size_t index = 0;
  for (const auto& entry : j["masses"]) {
    if (!entry.is_object() || !entry.contains("set") || !entry.contains("mass"))
      throw ParseError("masses[" + std::to_string(index) +
                       "] needs 'set' and 'mass' fields");
    if (!entry["mass"].is_number())
      throw ParseError("masses[" + std::to_string(index) +
                       "].mass must be a number");
    raw.masses.emplace_back(detail::string_array(entry["set"], "set"),
                            entry["mass"].get<double>());
    ++index;
  }
  if (j.contains("metadata") && j["metadata"].is_object()) {
    const auto& meta = j["metadata"];
    if (meta.contains("source") && meta["source"].is_string())
      raw.metadata.source = meta["source"].get<std::string>();
    if (meta.contains("timestamp") && meta["timestamp"].is_string())
      raw.metadata.timestamp = meta["timestamp"].get<std::string>();
  }
  return raw;
}

template <std::size_t W>
struct Evidence {
  Frame frame;
  MassFunction<W> mass;
  EvidenceMetadata metadata;
  std::vector<std::string> warnings;
};

/// Turns raw file content into a validated mass function. Duplicate sets are
/// summed with a warning; totals off by at most the file tolerance are
/// renormalized with a warning; anything worse is rejected.
template <std::size_t W>
Evidence<W> validate_evidence(const RawEvidence& raw) {
  Frame frame(raw.frame_labels);
  if (raw.masses.empty())
    throw ValidationError("masses list is empty; total mass 0 is not 1");
  std::vector<std::string> warnings;
  SetFunction<W> values(frame, 0.0);
  double total = 0.0;
  for (const auto& [labels, value] : raw.masses) {
    auto set = frame.mask_of<W>(labels);
    if (value < -kFileMassTol)
      throw ValidationError("negative mass on " + frame.format_set(set));
    if (values.contains(set)) {
      warnings.push_back("duplicate set " + frame.format_set(set) +
                         "; masses were summed");
    }
    values.add(set, value);
    total += value;
  }
  if (std::abs(total - 1.0) > kFileMassTol)
    throw ValidationError("masses sum to " + std::to_string(total) +
                          ", outside the file tolerance around 1");
  auto norm = MassFunction<W>::Normalize::Off;
  if (std::abs(total - 1.0) > kMassTol) {
    warnings.push_back("masses sum to " + std::to_string(total) +
                       "; renormalized on load");
    norm = MassFunction<W>::Normalize::Renormalize;
  }
  return Evidence<W>{std::move(frame),
                     MassFunction<W>(std::move(values), norm), raw.metadata,
                     std::move(warnings)};
}

template <std::size_t W>
Evidence<W> load_evidence(const std::filesystem::path& path) {
  return validate_evidence<W>(parse_evidence(detail::read_file(path)));
}

template <std::size_t W>
std::string format_evidence(const MassFunction<W>& m,
                            const EvidenceMetadata& meta = {}) {
  nlohmann::ordered_json j;
  j["frame"] = m.frame().labels();
  auto& masses = j["masses"] = nlohmann::ordered_json::array();
  for (const auto& [set, value] : m.values().entries()) {
    nlohmann::ordered_json entry;
    entry["set"] = m.frame().labels_of(set);
    entry["mass"] = detail::file_round(value);
    masses.push_back(std::move(entry));
  }
  if (meta.source || meta.timestamp) {
    auto& mj = j["metadata"] = nlohmann::ordered_json::object();
    if (meta.source) mj["source"] = *meta.source;
    if (meta.timestamp) mj["timestamp"] = *meta.timestamp;
  }
  return j.dump(2) + "\n";
}

template <std::size_t W>
void save_evidence(const std::filesystem::path& path, const MassFunction<W>& m,
                   const EvidenceMetadata& meta = {}) {
  detail::write_file_atomic(path, format_evidence(m, meta));
}

/// Non-mass representations travel in a sibling format keyed by `kind`:
/// values listed per focal point.
enum class ValueKind {
  Commonality,
  Implicability,
  ConjunctiveWeights,
  DisjunctiveWeights,
  Belief,
  Plausibility,
};

inline std::string to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Commonality: return "commonality";
    case ValueKind::Implicability: return "implicability";
    case ValueKind::ConjunctiveWeights: return "conjunctive-weights";
    case ValueKind::DisjunctiveWeights: return "disjunctive-weights";
    case ValueKind::Belief: return "belief";
    case ValueKind::Plausibility: return "plausibility";
  }
  return "?";
}

inline ValueKind value_kind_from(const std::string& s) {
  for (auto kind : {ValueKind::Commonality, ValueKind::Implicability,
                    ValueKind::ConjunctiveWeights, ValueKind::DisjunctiveWeights,
                    ValueKind::Belief, ValueKind::Plausibility})
    if (to_string(kind) == s) return kind;
  throw ValidationError("unknown value kind: " + s);
}

template <std::size_t W>
struct ValueFile {
  Frame frame;
  ValueKind kind;
  std::vector<std::pair<BitMask<W>, double>> values;
};

template <std::size_t W>
std::string format_values(const Frame& frame, ValueKind kind,
                          std::span<const BitMask<W>> points,
                          std::span<const double> values) {
  nlohmann::ordered_json j;
  j["frame"] = frame.labels();
  j["kind"] = to_string(kind);
  auto& out = j["values"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    nlohmann::ordered_json entry;
    entry["set"] = frame.labels_of(points[i]);
    entry["value"] = detail::file_round(values[i]);
    out.push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

template <std::size_t W>
ValueFile<W> parse_values(const std::string& text) {
  auto j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("frame") || !j.contains("kind") ||
      !j.contains("values"))
    throw ParseError("value files need 'frame', 'kind' and 'values' keys");
  Frame frame(detail::string_array(j["frame"], "frame"));
  if (!j["kind"].is_string()) throw ParseError("'kind' must be a string");
  ValueKind kind = value_kind_from(j["kind"].get<std::string>());
  std::vector<std::pair<BitMask<W>, double>> values;
  for (const auto& entry : j["values"]) {
    if (!entry.is_object() || !entry.contains("set") || !entry.contains("value"))
      throw ParseError("each value entry needs 'set' and 'value'");
    if (!entry["value"].is_number())
      throw ParseError("value entries must be numeric");
    values.emplace_back(
        frame.mask_of<W>(detail::string_array(entry["set"], "set")),
        entry["value"].get<double>());
  }
  return ValueFile<W>{std::move(frame), kind, std::move(values)};
}

template <std::size_t W>
ValueFile<W> load_values(const std::filesystem::path& path) {
  return parse_values<W>(detail::read_file(path));
}

/// Peeks at the frame size so callers can pick a mask width before running
/// the templated loaders.
inline std::size_t peek_frame_size(const std::string& text) {
  auto j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("frame"))
    throw ParseError("missing top-level 'frame' key");
  return detail::string_array(j["frame"], "frame").size();
}

}  // namespace belcal
