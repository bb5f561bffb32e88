#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"
#include "zsum/zerosum.hpp"

namespace zsum {

enum class SymmetryMode { kOff, kOn, kAuto };

struct SearchBudget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
  unsigned threads = 1;
  SymmetryMode symmetry = SymmetryMode::kAuto;
  std::uint64_t memory_cap_bytes = std::uint64_t{256} << 20;
};

enum class Constant { kBetaR, kSR, kHarborth, kCap };

inline const char* constant_name(Constant c) {
  switch (c) {
    case Constant::kBetaR: return "beta_r";
    case Constant::kSR: return "s_r";
    case Constant::kHarborth: return "g";
    case Constant::kCap: return "cap";
  }
  return "?";
}

// An exactly computed constant plus the extremal witness that certifies its
// lower-bound half. Only exhaustive results may be labeled exact.
struct SearchResult {
  Constant constant;
  GroupSpec spec;
  std::uint64_t r = 0;
  std::uint64_t value = 0;
  GSequence witness;
  bool exhaustive = false;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

namespace detail {

// Coordinate-permutation index maps for Z_k^d (identity excluded).
inline std::vector<std::vector<std::uint32_t>> coordinate_perm_maps(const GroupSpec& spec) {
  std::vector<std::vector<std::uint32_t>> maps;
  const auto& mods = spec.moduli();
  const std::size_t d = mods.size();
  if (d < 2 || d > 6) return maps;
  for (std::size_t i = 1; i < d; ++i)
    if (mods[i] != mods[0]) return maps;
  const std::uint64_t n = spec.order();
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<std::uint32_t> map(n);
    GroupElement img{std::vector<std::uint32_t>(d)};
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      GroupElement e = spec.element_at(idx);
      for (std::size_t i = 0; i < d; ++i) img.coords[perm[i]] = e.coords[i];
      map[idx] = static_cast<std::uint32_t>(spec.index_of(img));
    }
    maps.push_back(std::move(map));
  }
  return maps;
}

struct BnbShared {
  std::mutex mu;
  std::uint64_t best_size = 0;            // guarded by mu
  std::vector<std::uint32_t> best;        // guarded by mu
  std::atomic<std::uint64_t> best_hint{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::uint64_t max_nodes = 0;
  bool has_deadline = false;
  std::chrono::steady_clock::time_point deadline;
};

// Index arithmetic precomputed for the search hot loops: negation always,
// dense g - x rows for small non-binary groups (binary groups just XOR).
struct IndexOps {
  explicit IndexOps(const GroupSpec& spec)
      : binary(spec.is_binary()), n(static_cast<std::uint32_t>(spec.order())) {
    neg.resize(n);
    for (std::uint32_t g = 0; g < n; ++g)
      neg[g] = static_cast<std::uint32_t>(spec.neg_index(g));
    if (!binary && n <= 2048) {
      sub_dense.resize(static_cast<std::size_t>(n) * n);
      for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t g = 0; g < n; ++g)
          sub_dense[static_cast<std::size_t>(x) * n + g] =
              static_cast<std::uint32_t>(spec.sub_index(g, x));
    } else if (!binary) {
      spec_for_slow_path = &spec;
    }
  }

  // Row such that row[g] = g - x; scratch is used only on the slow path.
  const std::uint32_t* sub_row(std::uint32_t x, std::vector<std::uint32_t>& scratch) const {
    if (!sub_dense.empty()) return sub_dense.data() + static_cast<std::size_t>(x) * n;
    for (std::uint32_t g = 0; g < n; ++g)
      scratch[g] = static_cast<std::uint32_t>(spec_for_slow_path->sub_index(g, x));
    return scratch.data();
  }

  bool binary;
  std::uint32_t n;
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> sub_dense;
  const GroupSpec* spec_for_slow_path = nullptr;
};

struct EngineResult {
  std::uint64_t best_size = 0;
  std::vector<std::uint32_t> witness;
  std::uint64_t nodes = 0;
  bool exhaustive = true;
  double seconds = 0.0;
};

// Depth-first max search shared by the beta and s_r solvers: extend a
// non-decreasing index sequence, each element up to max_mult copies, an
// extension x being legal iff no (r-1)-sublist of the current state sums to
// -x. cnt[j][g] counts j-sublists with sum g and is updated incrementally.
//
// Ties with the incumbent are explored and resolved toward the
// lexicographically least witness, so parallel and serial runs emit
// identical certificates.
class BnbWorker {
 public:
  BnbWorker(const IndexOps& ops, std::uint64_t r, std::uint32_t max_mult,
            const std::vector<std::vector<std::uint32_t>>* perms, bool translate,
            BnbShared& shared)
      : ops_(ops),
        n_(ops.n),
        r_(r),
        max_mult_(max_mult),
        perms_(perms),
        translate_(translate),
        shared_(shared),
        cnt_(r * n_, 0),
        mult_(n_, 0),
        scratch_(n_) {
    cnt_[0] = 1;  // the empty sublist
  }

  void replay(const std::vector<std::uint32_t>& prefix) {
    for (std::uint32_t x : prefix) push(x);
  }

  void dfs(std::uint32_t start, bool visit_current = true) {
    if (shared_.aborted.load(std::memory_order_relaxed)) return;
    if (visit_current && !visit()) return;
    for (std::uint32_t x = start; x < n_; ++x) {
      if (shared_.aborted.load(std::memory_order_relaxed)) return;
      std::uint64_t bs = shared_.best_hint.load(std::memory_order_relaxed);
      std::uint64_t ub = chosen_.size() +
                         static_cast<std::uint64_t>(max_mult_) * (n_ - x) - mult_[x];
      if (ub < bs) break;
      if (!extendable(x)) continue;
      push(x);
      dfs(x);
      pop(x);
    }
  }

  bool extendable(std::uint32_t x) const {
    if (translate_ && chosen_.empty() && x != 0) return false;
    if (mult_[x] >= max_mult_) return false;
    if (cnt_[(r_ - 1) * n_ + ops_.neg[x]] != 0) return false;
    return canonical_child(x);
  }

  // Children of the current node, for frontier expansion.
  std::vector<std::uint32_t> extendable_children(std::uint32_t start) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = start; x < n_; ++x)
      if (extendable(x)) out.push_back(x);
    return out;
  }

  void push(std::uint32_t x) {
    if (ops_.binary) {
      for (std::uint64_t j = r_ - 1; j >= 1; --j)
        for (std::uint32_t g = 0; g < n_; ++g)
          cnt_[j * n_ + g] += cnt_[(j - 1) * n_ + (g ^ x)];
    } else {
      const std::uint32_t* row = ops_.sub_row(x, scratch_);
      for (std::uint64_t j = r_ - 1; j >= 1; --j)
        for (std::uint32_t g = 0; g < n_; ++g)
          cnt_[j * n_ + g] += cnt_[(j - 1) * n_ + row[g]];
    }
    ++mult_[x];
    chosen_.push_back(x);
  }

  void pop(std::uint32_t x) {
    if (ops_.binary) {
      for (std::uint64_t j = 1; j <= r_ - 1; ++j)
        for (std::uint32_t g = 0; g < n_; ++g)
          cnt_[j * n_ + g] -= cnt_[(j - 1) * n_ + (g ^ x)];
    } else {
      const std::uint32_t* row = ops_.sub_row(x, scratch_);
      for (std::uint64_t j = 1; j <= r_ - 1; ++j)
        for (std::uint32_t g = 0; g < n_; ++g)
          cnt_[j * n_ + g] -= cnt_[(j - 1) * n_ + row[g]];
    }
    --mult_[x];
    chosen_.pop_back();
  }

  const std::vector<std::uint32_t>& chosen() const { return chosen_; }

  // Counts the node against the budgets and offers it as incumbent.
  bool visit() {
    std::uint64_t seen = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (seen > shared_.max_nodes) {
      shared_.aborted.store(true, std::memory_order_relaxed);
      return false;
    }
    if (shared_.has_deadline && (seen & 1023) == 0 &&
        std::chrono::steady_clock::now() > shared_.deadline)
      shared_.aborted.store(true, std::memory_order_relaxed);

    std::uint64_t size = chosen_.size();
    std::uint64_t bs = shared_.best_hint.load(std::memory_order_relaxed);
    if (size > bs || size == bs) {
      std::lock_guard<std::mutex> lock(shared_.mu);
      if (size > shared_.best_size ||
          (size == shared_.best_size && chosen_ < shared_.best)) {
        shared_.best_size = size;
        shared_.best = chosen_;
        shared_.best_hint.store(size, std::memory_order_relaxed);
      }
    }
    return !shared_.aborted.load(std::memory_order_relaxed);
  }

 private:
  bool canonical_child(std::uint32_t x) const {
    if (!perms_ || perms_->empty()) return true;
    cand_.assign(chosen_.begin(), chosen_.end());
    cand_.push_back(x);
    for (const auto& map : *perms_) {
      mapped_.clear();
      for (std::uint32_t v : cand_) mapped_.push_back(map[v]);
      std::sort(mapped_.begin(), mapped_.end());
      if (mapped_ < cand_) return false;
    }
    return true;
  }

  const IndexOps& ops_;
  std::uint32_t n_;
  std::uint64_t r_;
  std::uint32_t max_mult_;
  const std::vector<std::vector<std::uint32_t>>* perms_;
  bool translate_;
  BnbShared& shared_;
  std::vector<std::uint64_t> cnt_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> mult_;
  mutable std::vector<std::uint32_t> scratch_;
  mutable std::vector<std::uint32_t> cand_;
  mutable std::vector<std::uint32_t> mapped_;
};

inline EngineResult run_max_search(const GroupSpec& spec, std::uint64_t r,
                                   std::uint32_t max_mult, const SearchBudget& budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t n = spec.order();
  if (n > default_element_cap())
    throw capacity_error("group exceeds element cap", n, default_element_cap());
  std::uint64_t need = checked_mul_u64(checked_mul_u64(r, n), 8);
  if (need > budget.memory_cap_bytes)
    throw capacity_error("search state exceeds memory cap", need, budget.memory_cap_bytes);

  bool symmetry = budget.symmetry != SymmetryMode::kOff;
  std::vector<std::vector<std::uint32_t>> perms;
  if (symmetry) perms = coordinate_perm_maps(spec);
  IndexOps ops(spec);

  BnbShared shared;
  shared.max_nodes = budget.max_nodes;
  if (budget.max_seconds < std::numeric_limits<double>::infinity()) {
    shared.has_deadline = true;
    shared.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(budget.max_seconds));
  }

  const unsigned threads = std::max(1u, budget.threads);
  if (threads == 1) {
    BnbWorker w(ops, r, max_mult, &perms, symmetry, shared);
    w.dfs(0);
  } else {
    // Expand a frontier of disjoint subtree roots, then fan out.
    struct Task {
      std::vector<std::uint32_t> prefix;
      std::uint32_t start;
    };
    std::deque<Task> frontier;
    frontier.push_back(Task{{}, 0});
    {
      BnbWorker w(ops, r, max_mult, &perms, symmetry, shared);
      while (!frontier.empty() && frontier.size() < std::size_t{4} * threads &&
             frontier.front().prefix.size() < 4 &&
             !shared.aborted.load(std::memory_order_relaxed)) {
        Task t = std::move(frontier.front());
        frontier.pop_front();
        w.replay(t.prefix);
        if (w.visit()) {
          for (std::uint32_t x : w.extendable_children(t.start)) {
            Task child{t.prefix, x};
            child.prefix.push_back(x);
            frontier.push_back(std::move(child));
          }
        }
        for (std::size_t i = t.prefix.size(); i-- > 0;) w.pop(t.prefix[i]);
      }
    }
    std::mutex queue_mu;
    auto worker_fn = [&]() {
      BnbWorker w(ops, r, max_mult, &perms, symmetry, shared);
      while (true) {
        Task task;
        {
          std::lock_guard<std::mutex> lock(queue_mu);
          if (frontier.empty()) return;
          task = std::move(frontier.front());
          frontier.pop_front();
        }
        w.replay(task.prefix);
        w.dfs(task.start);
        for (std::size_t i = task.prefix.size(); i-- > 0;) w.pop(task.prefix[i]);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }

  EngineResult res;
  res.best_size = shared.best_size;
  res.witness = shared.best;
  res.nodes = shared.nodes.load();
  res.exhaustive = !shared.aborted.load();
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline GSequence indices_to_sequence(const GroupSpec& spec,
                                     const std::vector<std::uint32_t>& idx) {
  GSequence s(spec);
  for (std::uint32_t i : idx) s.add_index(i);
  return s;
}

inline void require_r_multiple_of_exponent(const GroupSpec& spec, std::uint64_t r) {
  if (r == 0 || r % spec.exponent() != 0)
    throw std::invalid_argument("r must be a positive multiple of exp(G) = " +
                                std::to_string(spec.exponent()));
}

}  // namespace detail

// beta_r(G): the largest size of a zero-free set of rank r.
inline SearchResult solve_beta_r(const GroupSpec& spec, std::uint64_t r,
                                 const SearchBudget& budget = {}) {
  detail::require_r_multiple_of_exponent(spec, r);
  auto er = detail::run_max_search(spec, r, 1, budget);
  return SearchResult{Constant::kBetaR, spec,          r,
                      er.best_size,     detail::indices_to_sequence(spec, er.witness),
                      er.exhaustive,    er.nodes,       er.seconds};
}

// s_r(G): one more than the length of the longest sequence with no zero-sum
// subsequence of length r. Per-element multiplicity is capped at r-1 since
// r copies of any x already form a zero-sum subsequence.
inline SearchResult solve_s_r(const GroupSpec& spec, std::uint64_t r,
                              const SearchBudget& budget = {}) {
  detail::require_r_multiple_of_exponent(spec, r);
  auto er = detail::run_max_search(spec, r, static_cast<std::uint32_t>(r - 1), budget);
  return SearchResult{Constant::kSR,  spec,          r,
                      er.best_size + 1, detail::indices_to_sequence(spec, er.witness),
                      er.exhaustive,  er.nodes,       er.seconds};
}

// Harborth constant g(G) = beta_{exp(G)}(G) + 1.
inline SearchResult solve_harborth(const GroupSpec& spec, const SearchBudget& budget = {}) {
  SearchResult b = solve_beta_r(spec, spec.exponent(), budget);
  b.constant = Constant::kHarborth;
  b.value += 1;
  return b;
}

// a_d: the maximum size of a cap in AG(d,3), i.e. beta_3(Z3^d). Dimensions
// beyond the limit are refused; d >= 4 is a long run and means raising the
// limit explicitly.
inline SearchResult solve_cap(unsigned d, const SearchBudget& budget = {},
                              unsigned dimension_limit = 4) {
  if (d < 1 || d > dimension_limit)
    throw std::invalid_argument("cap search limited to d <= " +
                                std::to_string(dimension_limit) +
                                " (raise the limit to opt in)");
  GroupSpec spec(std::vector<std::uint32_t>(d, 3));
  SearchResult b = solve_beta_r(spec, 3, budget);
  b.constant = Constant::kCap;
  return b;
}

struct VerifyReport {
  bool ok = false;
  bool lower_bound_certified = false;
  std::string detail;
  std::vector<GroupElement> violation;

  explicit operator bool() const { return ok; }
};

// Re-validates the witness independently of the search, certifying the
// lower-bound half of the result; the exhaustive flag carries the matching
// upper bound on trust in the search metadata.
inline VerifyReport verify_certificate(const SearchResult& result) {
  VerifyReport rep;
  const GroupSpec& spec = result.spec;
  switch (result.constant) {
    case Constant::kBetaR:
    case Constant::kHarborth:
    case Constant::kCap: {
      std::uint64_t expected_size =
          result.constant == Constant::kHarborth ? result.value - 1 : result.value;
      if (!result.witness.is_set()) {
        rep.detail = "witness is not a set";
        return rep;
      }
      auto elems = result.witness.distinct_elements();
      if (elems.size() != expected_size) {
        rep.detail = "witness size " + std::to_string(elems.size()) +
                     " != " + std::to_string(expected_size);
        return rep;
      }
      auto zf = is_zero_free_set(spec, elems, result.r);
      if (!zf.zero_free) {
        rep.detail = "witness has a zero-sum " + std::to_string(result.r) + "-subset";
        rep.violation = zf.violation;
        return rep;
      }
      break;
    }
    case Constant::kSR: {
      if (result.witness.length() != result.value - 1) {
        rep.detail = "witness length " + std::to_string(result.witness.length()) +
                     " != " + std::to_string(result.value - 1);
        return rep;
      }
      auto w = find_zero_sum_subsequence(result.witness, result.r);
      if (w) {
        rep.detail = "witness has a zero-sum subsequence of length " +
                     std::to_string(result.r);
        for (const auto& [idx, c] : w->picks)
          for (std::uint64_t i = 0; i < c; ++i)
            rep.violation.push_back(spec.element_at(idx));
        return rep;
      }
      break;
    }
  }
  rep.ok = true;
  rep.lower_bound_certified = true;
  rep.detail = result.exhaustive
                   ? "lower bound re-validated; exhaustive search asserts the matching upper bound"
                   : "lower bound re-validated; search was not exhaustive (no upper bound)";
  return rep;
}

}  // namespace zsum
