#pragma once

// Brute-force oracles for the test suites. These deliberately avoid the
// library's DP/branch-and-bound paths: plain enumeration only.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/hypergraph.hpp"
#include "zsum/sequence.hpp"

namespace oracles {

// Full-width polynomial product over GF(2) followed by textbook long
// division, independent of the in-loop reduction the library uses.
inline std::uint32_t gf2_mul_longdiv(std::uint32_t a, std::uint32_t b,
                                     std::uint32_t modulus, int k) {
  std::vector<int> prod(2 * k, 0);
  for (int i = 0; i < k; ++i)
    if (a >> i & 1)
      for (int j = 0; j < k; ++j)
        if (b >> j & 1) prod[i + j] ^= 1;
  for (int deg = 2 * k - 2; deg >= k; --deg)
    if (prod[deg])
      for (int j = 0; j <= k; ++j) prod[deg - k + j] ^= (modulus >> j) & 1;
  std::uint32_t out = 0;
  for (int i = 0; i < k; ++i)
    if (prod[i]) out |= 1u << i;
  return out;
}

inline bool gf2_is_irreducible_longdiv(std::uint32_t p, int k) {
  auto mod = [](std::uint64_t a, std::uint64_t b) {
    auto deg = [](std::uint64_t x) {
      int d = -1;
      while (x) {
        ++d;
        x >>= 1;
      }
      return d;
    };
    int db = deg(b);
    while (deg(a) >= db) a ^= b << (deg(a) - db);
    return a;
  };
  for (int m = 1; m <= k / 2; ++m)
    for (std::uint64_t q = std::uint64_t{1} << m; q < (std::uint64_t{2} << m); ++q)
      if (mod(p, q) == 0) return false;
  return true;
}

// Does some sub-multiset of size exactly r sum to the identity?
inline bool has_zero_sum(const zsum::GSequence& seq, std::uint64_t r) {
  const zsum::GroupSpec& spec = seq.spec();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> items(seq.entries().begin(),
                                                             seq.entries().end());
  std::function<bool(std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t i, std::uint64_t left, std::uint64_t sum) -> bool {
    if (left == 0) return sum == 0;
    if (i == items.size()) return false;
    std::uint64_t c_max = std::min(items[i].second, left);
    std::uint64_t s = sum;
    for (std::uint64_t c = 0; c <= c_max; ++c) {
      if (rec(i + 1, left - c, s)) return true;
      s = spec.add_index(s, items[i].first);
    }
    return false;
  };
  return rec(0, r, 0);
}

inline bool subset_is_zero_free(const zsum::GroupSpec& spec,
                                const std::vector<std::uint64_t>& idx, std::uint64_t r) {
  zsum::GSequence seq(spec);
  for (std::uint64_t i : idx) seq.add_index(i);
  return !has_zero_sum(seq, r);
}

// Largest zero-free set of rank r by enumerating every subset of G.
inline std::uint64_t beta_r(const zsum::GroupSpec& spec, std::uint64_t r) {
  std::uint64_t n = spec.order();
  if (n > 20) throw std::logic_error("brute beta oracle limited to |G| <= 20");
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (idx.size() <= best) continue;
    if (subset_is_zero_free(spec, idx, r)) best = idx.size();
  }
  return best;
}

// Longest zero-sum-free sequence by enumerating every multiplicity vector
// with entries < r; s_r is this plus one.
inline std::uint64_t longest_zero_sum_free(const zsum::GroupSpec& spec, std::uint64_t r) {
  std::uint64_t n = spec.order();
  std::uint64_t best = 0;
  std::vector<std::uint64_t> mult(n, 0);
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t i) {
    if (i == n) {
      zsum::GSequence seq(spec);
      for (std::uint64_t e = 0; e < n; ++e)
        if (mult[e]) seq.add_index(e, mult[e]);
      if (!has_zero_sum(seq, r)) best = std::max(best, seq.length());
      return;
    }
    for (std::uint64_t c = 0; c < r; ++c) {
      mult[i] = c;
      rec(i + 1);
    }
    mult[i] = 0;
  };
  rec(0);
  return best;
}

// Every multiset over G with the given total length, in deterministic order.
inline void for_each_multiset(const zsum::GroupSpec& spec, std::uint64_t length,
                              const std::function<void(const zsum::GSequence&)>& fn) {
  std::uint64_t n = spec.order();
  zsum::GSequence seq(spec);
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t i,
                                                              std::uint64_t left) {
    if (i + 1 == n) {
      zsum::GSequence full = seq;
      if (left) full.add_index(i, left);
      fn(full);
      return;
    }
    for (std::uint64_t c = 0; c <= left; ++c) {
      zsum::GSequence saved = seq;
      if (c) seq.add_index(i, c);
      rec(i + 1, left - c);
      seq = saved;
    }
  };
  rec(0, length);
}

inline std::uint64_t delta_l(const zsum::RGraph& h, int l) {
  std::uint64_t best = 0;
  zsum::RGraph::for_each_subset(h.n(), l, [&](std::span<const int> sub) {
    std::uint64_t count = 0;
    for (const auto& e : h.edges()) {
      bool contains = true;
      for (int v : sub)
        if (!std::binary_search(e.begin(), e.end(), v)) contains = false;
      if (contains) ++count;
    }
    best = std::max(best, count);
  });
  if (l == 0) best = h.edges().size();
  return best;
}

inline std::uint64_t alpha(const zsum::RGraph& h) {
  int n = h.n();
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> verts;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) verts.push_back(i);
    bool independent = true;
    for (const auto& e : h.edges()) {
      bool inside = true;
      for (int v : e)
        if (!std::binary_search(verts.begin(), verts.end(), v)) inside = false;
      if (inside) independent = false;
    }
    if (independent) best = std::max<std::uint64_t>(best, verts.size());
  }
  return best;
}

inline std::uint64_t matching(const zsum::RGraph& h) {
  const auto& edges = h.edges();
  std::uint64_t best = 0;
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t i, std::uint64_t used, std::uint64_t size) {
        best = std::max(best, size);
        if (i == edges.size()) return;
        std::uint64_t mask = 0;
        for (int v : edges[i]) mask |= std::uint64_t{1} << v;
        if ((mask & used) == 0) rec(i + 1, used | mask, size + 1);
        rec(i + 1, used, size);
      };
  rec(0, 0, 0);
  return best;
}

inline zsum::RGraph random_rgraph(std::mt19937& rng, int n, int r, double p) {
  std::vector<std::vector<int>> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  zsum::RGraph::for_each_subset(n, r, [&](std::span<const int> s) {
    if (coin(rng) < p) edges.emplace_back(s.begin(), s.end());
  });
  return zsum::RGraph::explicit_graph(n, r, std::move(edges));
}

// Random family in which every pair of edges meets: edges through a common
// vertex plus occasional extras that happen to intersect everything.
inline zsum::RGraph random_intersecting_family(std::mt19937& rng, int n, int r,
                                               int target_edges) {
  std::set<std::vector<int>> edges;
  std::uniform_int_distribution<int> pick(0, n - 1);
  int guard = 0;
  while (static_cast<int>(edges.size()) < target_edges && ++guard < 400) {
    std::set<int> e{0};  // vertex 0 keeps the family intersecting
    while (static_cast<int>(e.size()) < r) e.insert(pick(rng));
    edges.insert(std::vector<int>(e.begin(), e.end()));
  }
  return zsum::RGraph::explicit_graph(
      n, r, std::vector<std::vector<int>>(edges.begin(), edges.end()));
}

inline zsum::GSequence random_sequence(std::mt19937& rng, const zsum::GroupSpec& spec,
                                       std::uint64_t length) {
  std::uniform_int_distribution<std::uint64_t> pick(0, spec.order() - 1);
  zsum::GSequence seq(spec);
  for (std::uint64_t i = 0; i < length; ++i) seq.add_index(pick(rng));
  return seq;
}

inline std::vector<zsum::GroupElement> random_subset(std::mt19937& rng,
                                                     const zsum::GroupSpec& spec,
                                                     std::size_t size) {
  std::set<std::uint64_t> idx;
  std::uniform_int_distribution<std::uint64_t> pick(0, spec.order() - 1);
  int guard = 0;
  while (idx.size() < size && ++guard < 10000) idx.insert(pick(rng));
  std::vector<zsum::GroupElement> out;
  for (std::uint64_t i : idx) out.push_back(spec.element_at(i));
  return out;
}

}  // namespace oracles
