#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

struct ZeroSumOptions {
  std::uint64_t memory_cap_bytes = std::uint64_t{512} << 20;
};

// How many copies of each element a detected zero-sum subsequence picks.
struct ZeroSumWitness {
  std::uint64_t r = 0;
  std::map<std::uint64_t, std::uint64_t> picks;  // element index -> copies

  bool validate(const GSequence& seq) const {
    std::uint64_t total = 0;
    std::uint64_t sum = 0;
    for (const auto& [idx, c] : picks) {
      if (c == 0 || c > seq.multiplicity_at(idx)) return false;
      total += c;
      for (std::uint64_t i = 0; i < c; ++i) sum = seq.spec().add_index(sum, idx);
    }
    return total == r && sum == 0;
  }

  GSequence to_sequence(const GroupSpec& spec) const {
    GSequence s(spec);
    for (const auto& [idx, c] : picks) s.add_index(idx, c);
    return s;
  }
};

// Exact detector for a zero-sum subsequence of length exactly r.
//
// Layered reachability DP over (count chosen, partial sum), one layer per
// distinct element in enumeration order; backtracking walks the layers from
// the last element to the first taking as few copies as possible, so the
// returned witness prefers fewer copies of later elements.
inline std::optional<ZeroSumWitness> find_zero_sum_subsequence(
    const GSequence& seq, std::uint64_t r, const ZeroSumOptions& opts = {}) {
  if (r == 0) throw std::invalid_argument("r must be >= 1 (empty subsequence is degenerate)");
  const GroupSpec& spec = seq.spec();
  const std::uint64_t n = spec.order();
  const std::size_t t = seq.distinct_count();

  std::uint64_t layer_bytes = checked_mul_u64(r + 1, n);
  std::uint64_t need = checked_mul_u64(layer_bytes, t + 1);
  if (need > opts.memory_cap_bytes)
    throw capacity_error("zero-sum DP table exceeds memory cap", need, opts.memory_cap_bytes);
  if (r > seq.length()) return std::nullopt;

  std::vector<std::uint64_t> elems;
  std::vector<std::uint64_t> mults;
  elems.reserve(t);
  for (const auto& [idx, m] : seq.entries()) {
    elems.push_back(idx);
    mults.push_back(std::min<std::uint64_t>(m, r));
  }

  // reach[i][j*n + g]: some sub-multiset of the first i distinct elements has
  // size j and sum g.
  std::vector<std::vector<std::uint8_t>> reach(t + 1,
                                               std::vector<std::uint8_t>(layer_bytes, 0));
  reach[0][0] = 1;
  std::vector<std::uint64_t> sub(n);
  for (std::size_t i = 1; i <= t; ++i) {
    const std::uint64_t x = elems[i - 1];
    for (std::uint64_t g = 0; g < n; ++g) sub[g] = spec.sub_index(g, x);
    reach[i] = reach[i - 1];
    // One bounded-knapsack pass per available copy; descending j keeps each
    // pass from reusing the copy it just added.
    for (std::uint64_t c = 0; c < mults[i - 1]; ++c)
      for (std::uint64_t j = r; j >= 1; --j)
        for (std::uint64_t g = 0; g < n; ++g)
          if (reach[i][(j - 1) * n + sub[g]]) reach[i][j * n + g] = 1;
  }

  if (!reach[t][r * n + 0]) return std::nullopt;

  ZeroSumWitness w;
  w.r = r;
  std::uint64_t j = r;
  std::uint64_t g = 0;
  for (std::size_t i = t; i >= 1; --i) {
    const std::uint64_t x = elems[i - 1];
    std::uint64_t c = 0;
    std::uint64_t gg = g;
    while (true) {
      if (c <= j && reach[i - 1][(j - c) * n + gg]) break;
      ++c;
      gg = spec.sub_index(gg, x);
      if (c > mults[i - 1]) throw std::logic_error("zero-sum backtrack failed");
    }
    if (c > 0) w.picks[x] = c;
    j -= c;
    g = gg;
  }
  return w;
}

struct ZeroFreeReport {
  bool zero_free = false;
  // One violating r-subset when zero_free is false.
  std::vector<GroupElement> violation;

  explicit operator bool() const { return zero_free; }
};

// True iff no r distinct elements of A sum to the identity; the same DP
// restricted to 0/1 multiplicities.
inline ZeroFreeReport is_zero_free_set(const GroupSpec& spec,
                                       std::span<const GroupElement> A,
                                       std::uint64_t r,
                                       const ZeroSumOptions& opts = {}) {
  GSequence seq = GSequence::single_copies(spec, A);
  auto w = find_zero_sum_subsequence(seq, r, opts);
  if (!w) return ZeroFreeReport{true, {}};
  ZeroFreeReport rep;
  rep.zero_free = false;
  for (const auto& [idx, c] : w->picks) rep.violation.push_back(spec.element_at(idx));
  return rep;
}

// All sums of unordered pairs of distinct elements are pairwise distinct.
// Over Z2^d with |A| >= 4 this coincides with is_zero_free_set(A, 4).
inline bool is_sidon_set(const GroupSpec& spec, std::span<const GroupElement> A) {
  std::vector<std::uint64_t> idx;
  idx.reserve(A.size());
  for (const GroupElement& e : A) idx.push_back(spec.index_of(e));
  std::unordered_map<std::uint64_t, int> seen;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      std::uint64_t s = spec.add_index(idx[i], idx[j]);
      if (!seen.emplace(s, 1).second) return false;
    }
  return true;
}

}  // namespace zsum
