#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "belcal/errors.hpp"
#include "belcal/mask.hpp"

namespace belcal {

/// Frame of discernment: an ordered list of distinct state labels. Label i
/// owns bit position i in every mask over this frame.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ValidationError("frame must have at least one element");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto [it, inserted] = index_.emplace(labels_[i], i);
      if (!inserted) throw ValidationError("duplicate frame label: " + labels_[i]);
    }
  }

  /// Synthetic frame e0, e1, ... for tests and benchmarks.
  static Frame of_size(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    return Frame(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t words_needed() const { return (size() + 63) / 64; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  bool has_label(const std::string& l) const { return index_.count(l) != 0; }

  std::size_t index_of(const std::string& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw ValidationError("label not in frame: " + l);
    return it->second;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.labels_ == b.labels_;
  }

  template <std::size_t W>
  BitMask<W> mask_of(std::span<const std::string> set_labels) const {
    if (size() > BitMask<W>::max_bits)
      throw FrameTooLarge("mask width too small for this frame");
    BitMask<W> m;
    for (const auto& l : set_labels) m.set(index_of(l));
    return m;
  }

  template <std::size_t W>
  std::vector<std::string> labels_of(const BitMask<W>& m) const {
    std::vector<std::string> out;
    m.for_each_bit([&](std::size_t i) { out.push_back(labels_.at(i)); });
    return out;
  }

  /// "{a,b}" rendering used by the CLI and error messages.
  template <std::size_t W>
  std::string format_set(const BitMask<W>& m) const {
    std::string out = "{";
    bool first = true;
    m.for_each_bit([&](std::size_t i) {
      if (!first) out += ",";
      out += labels_.at(i);
      first = false;
    });
    out += "}";
    return out;
  }

  template <std::size_t W>
  BitMask<W> full_mask() const {
    if (size() > BitMask<W>::max_bits)
      throw FrameTooLarge("mask width too small for this frame");
    return BitMask<W>::full(size());
  }

  template <std::size_t W>
  BitMask<W> complement(const BitMask<W>& m) const {
    return full_mask<W>() ^ m;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace belcal
