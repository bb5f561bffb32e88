#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

// A sequence over G up to order: a multiset, stored as element-index ->
// multiplicity. Zero-sum questions depend only on multiplicities.
class GSequence {
 public:
  explicit GSequence(GroupSpec spec) : spec_(std::move(spec)) {}

  static GSequence from_elements(const GroupSpec& spec,
                                 std::span<const GroupElement> elems) {
    GSequence s(spec);
    for (const GroupElement& e : elems) s.add(e);
    return s;
  }

  static GSequence single_copies(const GroupSpec& spec,
                                 std::span<const GroupElement> elems) {
    GSequence s(spec);
    for (const GroupElement& e : elems) {
      std::uint64_t idx = spec.index_of(e);
      if (s.mults_.count(idx))
        throw std::invalid_argument("duplicate element in set");
      s.add_index(idx, 1);
    }
    return s;
  }

  const GroupSpec& spec() const { return spec_; }
  std::uint64_t length() const { return length_; }
  std::size_t distinct_count() const { return mults_.size(); }
  bool empty() const { return length_ == 0; }

  void add(const GroupElement& e, std::uint64_t count = 1) {
    add_index(spec_.index_of(e), count);
  }

  void add_index(std::uint64_t idx, std::uint64_t count = 1) {
    if (count == 0) return;
    if (idx >= spec_.order()) throw std::invalid_argument("element index out of range");
    mults_[idx] += count;
    length_ += count;
  }

  std::uint64_t multiplicity_at(std::uint64_t idx) const {
    auto it = mults_.find(idx);
    return it == mults_.end() ? 0 : it->second;
  }
  std::uint64_t multiplicity(const GroupElement& e) const {
    return multiplicity_at(spec_.index_of(e));
  }

  // Ascending element index, i.e. enumeration order.
  const std::map<std::uint64_t, std::uint64_t>& entries() const { return mults_; }

  bool is_set() const {
    for (const auto& [idx, m] : mults_)
      if (m > 1) return false;
    return true;
  }

  std::vector<GroupElement> distinct_elements() const {
    std::vector<GroupElement> out;
    out.reserve(mults_.size());
    for (const auto& [idx, m] : mults_) out.push_back(spec_.element_at(idx));
    return out;
  }

  // Expanded in enumeration order with repeats.
  std::vector<GroupElement> to_elements() const {
    std::vector<GroupElement> out;
    out.reserve(length_);
    for (const auto& [idx, m] : mults_) {
      GroupElement e = spec_.element_at(idx);
      for (std::uint64_t i = 0; i < m; ++i) out.push_back(e);
    }
    return out;
  }

  GroupElement total_sum() const {
    std::uint64_t acc = 0;
    for (const auto& [idx, m] : mults_)
      for (std::uint64_t i = 0; i < m % spec_.exponent(); ++i)
        acc = spec_.add_index(acc, idx);
    return spec_.element_at(acc);
  }

  // True iff other contains this pointwise.
  bool subset_of(const GSequence& other) const {
    for (const auto& [idx, m] : mults_)
      if (other.multiplicity_at(idx) < m) return false;
    return true;
  }

  friend bool operator==(const GSequence& a, const GSequence& b) {
    return a.spec_ == b.spec_ && a.mults_ == b.mults_;
  }

 private:
  GroupSpec spec_;
  std::map<std::uint64_t, std::uint64_t> mults_;
  std::uint64_t length_ = 0;
};

}  // namespace zsum
