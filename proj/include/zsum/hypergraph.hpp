#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "zsum/common.hpp"
#include "zsum/rational.hpp"

namespace zsum {

struct HypergraphCaps {
  std::uint64_t max_subset_enumeration = std::uint64_t{1} << 26;
  unsigned alpha_max_n = 40;
};

// An r-graph with either an explicit sorted edge list or an implicit
// membership predicate (enumeration order over r-subsets is colex of the
// sorted vertex tuple). Implicit graphs may carry a codegree closure so
// Delta_{r-1} never materializes the edge list.
class RGraph {
 public:
  using Membership = std::function<bool(std::span<const int>)>;
  using CodegreeFn = std::function<std::uint64_t(std::span<const int>)>;

  static RGraph explicit_graph(int n, int r, std::vector<std::vector<int>> edges) {
    RGraph g(n, r);
    for (auto& e : edges) {
      if (static_cast<int>(e.size()) != r)
        throw std::invalid_argument("edge arity != r");
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("vertex out of range");
        if (i > 0 && e[i] <= e[i - 1])
          throw std::invalid_argument("edge must be strictly increasing");
      }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge");
    g.edges_ = std::move(edges);
    g.explicit_ = true;
    return g;
  }

  static RGraph implicit_graph(int n, int r, Membership member,
                               CodegreeFn codegree = nullptr) {
    RGraph g(n, r);
    g.member_ = std::move(member);
    g.codegree_ = std::move(codegree);
    g.explicit_ = false;
    return g;
  }

  int n() const { return n_; }
  int r() const { return r_; }
  bool is_explicit() const { return explicit_; }
  const std::vector<std::vector<int>>& edges() const {
    if (!explicit_) throw std::logic_error("implicit graph has no edge list");
    return edges_;
  }
  bool has_codegree_closure() const { return static_cast<bool>(codegree_); }
  std::uint64_t codegree_closure(std::span<const int> s) const { return codegree_(s); }

  bool is_edge(std::span<const int> verts) const {
    if (static_cast<int>(verts.size()) != r_) return false;
    if (explicit_) {
      std::vector<int> key(verts.begin(), verts.end());
      return std::binary_search(edges_.begin(), edges_.end(), key);
    }
    return member_(verts);
  }

  std::uint64_t edge_count(const HypergraphCaps& caps = {}) const {
    if (explicit_) return edges_.size();
    std::uint64_t total = binomial_u64(n_, r_);
    if (total > caps.max_subset_enumeration)
      throw capacity_error("edge enumeration too large", total, caps.max_subset_enumeration);
    std::uint64_t count = 0;
    for_each_subset(n_, r_, [&](std::span<const int> s) {
      if (member_(s)) ++count;
    });
    return count;
  }

  // Calls fn for every k-subset of [0, n) in lexicographic order.
  template <typename Fn>
  static void for_each_subset(int n, int k, Fn&& fn) {
    if (k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      fn(std::span<const int>(idx));
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) return;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

 private:
  RGraph(int n, int r) : n_(n), r_(r) {
    if (n < 0 || r < 1 || r > 16) throw std::invalid_argument("bad RGraph parameters");
  }

  int n_;
  int r_;
  bool explicit_ = true;
  std::vector<std::vector<int>> edges_;
  Membership member_;
  CodegreeFn codegree_;
};

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace detail

// Delta_l: the maximum number of edges containing a fixed l-subset.
// Delta_0 = e(H); l = r is allowed and reports whether any edge exists.
inline std::uint64_t delta_l(const RGraph& h, unsigned l, const HypergraphCaps& caps = {}) {
  if (l > static_cast<unsigned>(h.r())) throw std::invalid_argument("delta_l: l > r");
  if (l == 0) return h.edge_count(caps);
  std::uint64_t subsets = binomial_u64(h.n(), l);
  if (subsets > caps.max_subset_enumeration)
    throw capacity_error("l-subset enumeration too large", subsets,
                         caps.max_subset_enumeration);

  if (!h.is_explicit() && h.has_codegree_closure() &&
      l + 1 == static_cast<unsigned>(h.r())) {
    std::uint64_t best = 0;
    RGraph::for_each_subset(h.n(), static_cast<int>(l), [&](std::span<const int> s) {
      best = std::max(best, h.codegree_closure(s));
    });
    return best;
  }

  std::unordered_map<std::vector<int>, std::uint64_t, detail::VecHash> counts;
  auto tally = [&](std::span<const int> edge) {
    std::vector<int> key(l);
    RGraph::for_each_subset(h.r(), static_cast<int>(l), [&](std::span<const int> pick) {
      for (unsigned i = 0; i < l; ++i) key[i] = edge[pick[i]];
      ++counts[key];
    });
  };
  if (h.is_explicit()) {
    for (const auto& e : h.edges()) tally(e);
  } else {
    std::uint64_t total = binomial_u64(h.n(), h.r());
    if (total > caps.max_subset_enumeration)
      throw capacity_error("edge enumeration too large", total, caps.max_subset_enumeration);
    RGraph::for_each_subset(h.n(), h.r(), [&](std::span<const int> s) {
      if (h.is_edge(s)) tally(s);
    });
  }
  std::uint64_t best = 0;
  for (const auto& [key, c] : counts) best = std::max(best, c);
  return best;
}

struct AlphaResult {
  std::uint64_t alpha = 0;
  std::vector<int> witness;
};

namespace detail {

class AlphaSearch {
 public:
  AlphaSearch(const RGraph& h) : h_(h), n_(h.n()), r_(h.r()) {
    order_.resize(n_);
    for (int i = 0; i < n_; ++i) order_[i] = i;
    if (h.is_explicit()) {
      inc_.resize(n_);
      for (std::size_t ei = 0; ei < h.edges().size(); ++ei)
        for (int v : h.edges()[ei]) inc_[v].push_back(ei);
      // Highest degree first: conflicts surface early.
      std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
        return inc_[a].size() > inc_[b].size();
      });
      edge_hits_.assign(h.edges().size(), 0);
      edge_excluded_.assign(h.edges().size(), 0);
    }
  }

  AlphaResult run() {
    dfs(0);
    std::sort(best_.begin(), best_.end());
    return AlphaResult{best_.size(), best_};
  }

 private:
  void dfs(int pos) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    if (pos >= n_) return;
    if (chosen_.size() + remaining_bound(pos) <= best_.size()) return;
    int v = order_[pos];
    if (can_take(v)) {
      take(v);
      dfs(pos + 1);
      untake(v);
    }
    exclude(v);
    dfs(pos + 1);
    unexclude(v);
  }

  // At most |R| minus a greedy packing of disjoint residual edges can still
  // be taken: each live edge fully inside the unprocessed region forfeits at
  // least one vertex.
  std::size_t remaining_bound(int pos) const {
    std::size_t remaining = static_cast<std::size_t>(n_ - pos);
    if (!h_.is_explicit() || n_ > 64) return remaining;
    std::uint64_t used = 0;
    std::size_t packed = 0;
    for (std::size_t ei = 0; ei < edge_hits_.size(); ++ei) {
      if (edge_excluded_[ei] != 0) continue;
      std::uint64_t residual = 0;
      bool disjoint = true;
      for (int v : h_.edges()[ei]) {
        if (chosen_mask_ >> v & 1) continue;
        if (used >> v & 1) {
          disjoint = false;
          break;
        }
        residual |= std::uint64_t{1} << v;
      }
      if (disjoint && residual) {
        used |= residual;
        ++packed;
      }
    }
    return remaining - std::min(packed, remaining);
  }

  bool can_take(int v) {
    if (h_.is_explicit()) {
      for (std::size_t ei : inc_[v])
        if (edge_hits_[ei] == r_ - 1) return false;
      return true;
    }
    if (static_cast<int>(chosen_.size()) < r_ - 1) return true;
    // Any (r-1)-subset of the chosen set completing to an edge with v?
    bool ok = true;
    std::vector<int> sorted = chosen_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> probe(r_);
    RGraph::for_each_subset(static_cast<int>(sorted.size()), r_ - 1,
                            [&](std::span<const int> pick) {
                              if (!ok) return;
                              for (int i = 0; i < r_ - 1; ++i) probe[i] = sorted[pick[i]];
                              probe[r_ - 1] = v;
                              std::sort(probe.begin(), probe.end());
                              if (h_.is_edge(probe)) ok = false;
                            });
    return ok;
  }

  void take(int v) {
    chosen_.push_back(v);
    if (h_.is_explicit()) {
      if (n_ <= 64) chosen_mask_ |= std::uint64_t{1} << v;
      for (std::size_t ei : inc_[v]) ++edge_hits_[ei];
    }
  }

  void untake(int v) {
    chosen_.pop_back();
    if (h_.is_explicit()) {
      if (n_ <= 64) chosen_mask_ &= ~(std::uint64_t{1} << v);
      for (std::size_t ei : inc_[v]) --edge_hits_[ei];
    }
  }

  void exclude(int v) {
    if (h_.is_explicit())
      for (std::size_t ei : inc_[v]) ++edge_excluded_[ei];
  }

  void unexclude(int v) {
    if (h_.is_explicit())
      for (std::size_t ei : inc_[v]) --edge_excluded_[ei];
  }

  const RGraph& h_;
  int n_;
  int r_;
  std::vector<int> order_;
  std::vector<std::vector<std::size_t>> inc_;
  std::vector<int> edge_hits_;
  std::vector<int> edge_excluded_;
  std::uint64_t chosen_mask_ = 0;
  std::vector<int> chosen_;
  std::vector<int> best_;
};

}  // namespace detail

// Exact independence number with an extremal independent set. Refuses above
// the cap rather than falling back to a heuristic.
inline AlphaResult independence_number(const RGraph& h, const HypergraphCaps& caps = {}) {
  if (static_cast<unsigned>(h.n()) > caps.alpha_max_n)
    throw capacity_error("independence search above exact cap", h.n(), caps.alpha_max_n);
  return detail::AlphaSearch(h).run();
}

// Maximum number of pairwise disjoint edges, exact search over the edge list.
inline std::uint64_t matching_number(const RGraph& h, const HypergraphCaps& = {}) {
  const auto& edges = h.edges();
  if (h.n() > 64 || edges.size() > 4096)
    throw capacity_error("matching search too large", edges.size(), 4096);
  std::uint64_t best = 0;
  std::vector<std::uint64_t> masks;
  masks.reserve(edges.size());
  for (const auto& e : edges) {
    std::uint64_t m = 0;
    for (int v : e) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  // DFS over edges in order: take if disjoint, or skip.
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> dfs =
      [&](std::size_t i, std::uint64_t used, std::uint64_t size) {
        best = std::max(best, size);
        if (i >= masks.size()) return;
        if (size + (masks.size() - i) <= best) return;
        if ((masks[i] & used) == 0) dfs(i + 1, used | masks[i], size + 1);
        dfs(i + 1, used, size);
      };
  dfs(0, 0, 0);
  return best;
}

struct ChainReport {
  bool non_decreasing = false;
  std::vector<Rational> values;  // Delta_l / C(n-l, r-l) for l = 0..r-1

  explicit operator bool() const { return non_decreasing; }
};

// Normalized degree chain Delta_l / C(n-l, r-l), l = 0..r-1; always
// non-decreasing (a violation indicates an implementation bug).
inline ChainReport check_monotonicity_chain(const RGraph& h,
                                            const HypergraphCaps& caps = {}) {
  ChainReport rep;
  for (int l = 0; l < h.r(); ++l) {
    std::uint64_t d = delta_l(h, static_cast<unsigned>(l), caps);
    std::uint64_t denom = binomial_u64(h.n() - l, h.r() - l);
    rep.values.emplace_back(static_cast<std::int64_t>(d), static_cast<std::int64_t>(denom));
  }
  rep.non_decreasing = std::is_sorted(rep.values.begin(), rep.values.end());
  return rep;
}

// e(H) <= nu(H) * (1 + r * (Delta_1(H) - 1)).
inline bool check_lemma_bound(const RGraph& h, const HypergraphCaps& caps = {}) {
  std::uint64_t e = h.edge_count(caps);
  if (e == 0) return true;
  std::uint64_t lambda = matching_number(h, caps);
  std::uint64_t d1 = delta_l(h, 1, caps);
  return e <= lambda * (1 + static_cast<std::uint64_t>(h.r()) * (d1 - 1));
}

// Erdos--Ko--Rado: an intersecting family on n >= 2r vertices has at most
// C(n-1, r-1) edges. Vacuously true when the family is not intersecting.
inline bool check_ekr_bound(const RGraph& h, const HypergraphCaps& caps = {}) {
  if (h.n() < 2 * h.r()) throw std::invalid_argument("EKR check requires n >= 2r");
  if (h.edge_count(caps) == 0) return true;
  if (matching_number(h, caps) > 1) return true;
  return h.edge_count(caps) <= binomial_u64(h.n() - 1, h.r() - 1);
}

}  // namespace zsum
