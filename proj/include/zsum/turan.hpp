#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/hypergraph.hpp"
#include "zsum/rational.hpp"

namespace zsum {

// The zero-sum basket construction: n vertices dealt round-robin into |G|
// baskets (vertex i gets element i mod |G| in enumeration order, so basket
// sizes differ by at most one); an r-subset is an edge iff its labels sum to
// the identity. Witnesses tau(s_r(G), r) <= 1/|G|.
class BasketWitness {
 public:
  BasketWitness(GroupSpec spec, std::uint64_t r, std::uint32_t n)
      : spec_(std::move(spec)), r_(r), n_(n) {
    if (r_ == 0 || r_ % spec_.exponent() != 0)
      throw std::invalid_argument("witness requires r to be a multiple of exp(G)");
    if (n_ < r_) throw std::invalid_argument("witness requires n >= r");
  }

  const GroupSpec& spec() const { return spec_; }
  std::uint64_t r() const { return r_; }
  std::uint32_t n() const { return n_; }

  std::uint64_t label(std::uint32_t vertex) const { return vertex % spec_.order(); }

  std::uint64_t basket_size(std::uint64_t element_index) const {
    if (element_index >= spec_.order()) throw std::invalid_argument("bad element index");
    std::uint64_t g = spec_.order();
    return element_index < n_ % g ? n_ / g + 1 : n_ / g;
  }

  bool is_edge(std::span<const int> verts) const {
    if (verts.size() != r_) return false;
    std::uint64_t sum = 0;
    for (int v : verts) sum = spec_.add_index(sum, label(static_cast<std::uint32_t>(v)));
    return sum == 0;
  }

  RGraph to_rgraph() const {
    return RGraph::implicit_graph(
        static_cast<int>(n_), static_cast<int>(r_),
        [*this](std::span<const int> verts) { return is_edge(verts); },
        [*this](std::span<const int> s) { return codegree(s); });
  }

  // Exact degree of an (r-1)-subset in closed form: the missing vertex must
  // carry label -sum(S), so the degree is that basket minus the overlap.
  std::uint64_t codegree(std::span<const int> S) const {
    if (S.size() != r_ - 1) throw std::invalid_argument("codegree wants an (r-1)-subset");
    std::uint64_t sum = 0;
    std::uint64_t overlap = 0;
    for (int v : S) {
      if (v < 0 || static_cast<std::uint32_t>(v) >= n_)
        throw std::invalid_argument("vertex out of range");
      sum = spec_.add_index(sum, label(static_cast<std::uint32_t>(v)));
    }
    std::uint64_t target = spec_.neg_index(sum);
    for (int v : S)
      if (label(static_cast<std::uint32_t>(v)) == target) ++overlap;
    return basket_size(target) - overlap;
  }

 private:
  GroupSpec spec_;
  std::uint64_t r_;
  std::uint32_t n_;
};

inline BasketWitness build_witness(const GroupSpec& spec, std::uint64_t r, std::uint32_t n) {
  return BasketWitness(spec, r, n);
}

inline std::uint64_t witness_codegree(const BasketWitness& w, std::span<const int> S) {
  return w.codegree(S);
}

struct WitnessCertificate {
  std::uint64_t min_codegree = 0;
  std::uint64_t max_codegree = 0;
  std::uint64_t s = 0;
  bool alpha_exact = false;            // false: cap exceeded, alpha omitted
  std::optional<std::uint64_t> alpha;
  std::vector<int> alpha_witness;
  std::optional<bool> verdict;         // alpha < s
};

// Certificate: extreme codegrees over all (r-1)-subsets (closed form), exact
// independence number with witness, and the verdict alpha < s.
inline WitnessCertificate certify_witness(const BasketWitness& w, std::uint64_t s,
                                          const HypergraphCaps& caps = {}) {
  WitnessCertificate cert;
  cert.s = s;
  bool first = true;
  RGraph::for_each_subset(static_cast<int>(w.n()), static_cast<int>(w.r() - 1),
                          [&](std::span<const int> subset) {
                            std::uint64_t d = w.codegree(subset);
                            if (first || d < cert.min_codegree) cert.min_codegree = d;
                            if (first || d > cert.max_codegree) cert.max_codegree = d;
                            first = false;
                          });
  try {
    AlphaResult a = independence_number(w.to_rgraph(), caps);
    cert.alpha = a.alpha;
    cert.alpha_witness = a.witness;
    cert.alpha_exact = true;
    cert.verdict = a.alpha < s;
  } catch (const capacity_error&) {
    cert.alpha_exact = false;  // partial certificate, alpha omitted
  }
  return cert;
}

// ----------------------------------------------------------------------
// Codegree density bound ledger.

enum class FactSource { kSolved, kPaperTable, kExternal, kClassical };

inline const char* fact_source_name(FactSource s) {
  switch (s) {
    case FactSource::kSolved: return "solved";
    case FactSource::kPaperTable: return "paper-table";
    case FactSource::kExternal: return "external";
    case FactSource::kClassical: return "classical";
  }
  return "?";
}

// A certified (or cited) value of s_r(G); an upper bound on s_r is enough,
// since tau(k, r) is non-increasing in k.
struct BaseFact {
  std::string group;
  std::uint64_t r = 0;
  std::uint64_t s_value = 0;
  bool exact = true;  // false: s_value is an upper bound on s_r
  FactSource source = FactSource::kSolved;
  std::string note;
};

struct ProvenanceStep {
  enum class Kind { kBase, kShift, kClassical, kExternal, kMonotone };
  Kind kind = Kind::kBase;
  // kBase
  std::string group;
  std::uint64_t base_r = 0;
  std::uint64_t s_value = 0;
  bool exact = true;
  FactSource source = FactSource::kSolved;
  // kShift
  std::uint64_t j = 0;
  // kClassical: t(k,2) = 1/(k-1)
  std::uint64_t classical_k = 0;
  // kExternal: tau(r+d, r) <= 2^-d for r >= 2*ceil(d/2)
  std::uint64_t external_d = 0;
  std::uint64_t external_r = 0;
  // kMonotone
  std::uint64_t to_k = 0;
};

// A codegree density inequality tau(k, r) <= bound with a replayable
// provenance chain; superseded or duplicate derivations are retained as
// alternates.
struct BoundFact {
  std::uint64_t k = 0;
  std::uint64_t r = 0;
  Rational bound;
  std::vector<ProvenanceStep> chain;
  std::vector<std::vector<ProvenanceStep>> alternates;
};

// Re-derives (k, r, bound) from a provenance chain; throws on malformed
// chains. Replaying a serialized fact must reproduce it exactly.
inline BoundFact replay_chain(const std::vector<ProvenanceStep>& chain) {
  BoundFact f;
  bool seeded = false;
  for (const ProvenanceStep& step : chain) {
    switch (step.kind) {
      case ProvenanceStep::Kind::kBase: {
        if (seeded) throw validation_error("chain has two seed steps");
        GroupSpec spec = GroupSpec::parse(step.group);
        if (step.base_r == 0 || step.base_r % spec.exponent() != 0)
          throw validation_error("base fact r is not a multiple of exp(G)");
        if (step.s_value <= step.base_r)
          throw validation_error("base fact needs s_r > r");
        f.k = step.s_value;
        f.r = step.base_r;
        f.bound = Rational(1, static_cast<std::int64_t>(spec.order()));
        seeded = true;
        break;
      }
      case ProvenanceStep::Kind::kClassical: {
        if (seeded) throw validation_error("chain has two seed steps");
        if (step.classical_k < 3) throw validation_error("classical fact needs k >= 3");
        f.k = step.classical_k;
        f.r = 2;
        f.bound = Rational(1, static_cast<std::int64_t>(step.classical_k - 1));
        seeded = true;
        break;
      }
      case ProvenanceStep::Kind::kExternal: {
        if (seeded) throw validation_error("chain has two seed steps");
        std::uint64_t d = step.external_d;
        std::uint64_t r = step.external_r;
        if (d < 1 || d > 62) throw validation_error("external fact d out of range");
        // The cited zero-sum formula needs an even subsequence length strictly
        // above d, so the smallest valid base is r = d+1 rounded up to even;
        // shifting then covers every larger r.
        if (r < 2 * ((d + 2) / 2) || r < 2)
          throw validation_error("external fact requires r > d (rounded up to even)");
        f.k = r + d;
        f.r = r;
        f.bound = Rational(1, static_cast<std::int64_t>(std::uint64_t{1} << d));
        seeded = true;
        break;
      }
      case ProvenanceStep::Kind::kShift: {
        if (!seeded) throw validation_error("shift before seed");
        f.k += step.j;
        f.r += step.j;
        break;
      }
      case ProvenanceStep::Kind::kMonotone: {
        if (!seeded) throw validation_error("monotone step before seed");
        if (step.to_k < f.k) throw validation_error("monotone step must not decrease k");
        f.k = step.to_k;
        break;
      }
    }
  }
  if (!seeded) throw validation_error("empty provenance chain");
  if (f.k <= f.r) throw validation_error("derived fact has k <= r");
  f.chain = chain;
  return f;
}

inline std::string provenance_string(const std::vector<ProvenanceStep>& chain) {
  std::string out;
  for (const ProvenanceStep& step : chain) {
    if (!out.empty()) out += "; ";
    switch (step.kind) {
      case ProvenanceStep::Kind::kBase:
        out += "base[" + std::string(fact_source_name(step.source)) + "] s_" +
               std::to_string(step.base_r) + "(" + step.group + ")" +
               (step.exact ? "=" : "<=") + std::to_string(step.s_value);
        break;
      case ProvenanceStep::Kind::kClassical:
        out += "classical t(" + std::to_string(step.classical_k) + ",2)=1/" +
               std::to_string(step.classical_k - 1);
        break;
      case ProvenanceStep::Kind::kExternal:
        out += "external[Sidorenko 2018] d=" + std::to_string(step.external_d) +
               " r=" + std::to_string(step.external_r);
        break;
      case ProvenanceStep::Kind::kShift:
        out += "shift+" + std::to_string(step.j);
        break;
      case ProvenanceStep::Kind::kMonotone:
        out += "k-monotone to k=" + std::to_string(step.to_k);
        break;
    }
  }
  return out;
}

// Keeps the strongest bound per (k, r); weaker or equal derivations become
// alternates so no provenance is dropped silently.
class BoundLedger {
 public:
  void insert(BoundFact fact) {
    auto key = std::make_pair(fact.k, fact.r);
    auto it = facts_.find(key);
    if (it == facts_.end()) {
      facts_.emplace(key, std::move(fact));
      return;
    }
    BoundFact& present = it->second;
    if (fact.bound < present.bound) {
      fact.alternates.push_back(present.chain);
      for (auto& alt : present.alternates) fact.alternates.push_back(std::move(alt));
      present = std::move(fact);
    } else {
      present.alternates.push_back(std::move(fact.chain));
      for (auto& alt : fact.alternates) present.alternates.push_back(std::move(alt));
    }
  }

  // Rows in (k, r) order with the k-monotone dedup rule applied: a stronger
  // bound at smaller k (same r) overrides, recording the monotone step.
  std::vector<BoundFact> rows() const {
    std::map<std::uint64_t, std::vector<const BoundFact*>> by_r;
    for (const auto& [key, fact] : facts_) by_r[fact.r].push_back(&fact);
    std::map<std::pair<std::uint64_t, std::uint64_t>, BoundFact> out;
    for (const auto& [r, facts] : by_r) {
      const BoundFact* best_so_far = nullptr;  // facts are already k-ascending
      for (const BoundFact* f : facts) {
        BoundFact row = *f;
        if (best_so_far && best_so_far->bound < row.bound) {
          row.alternates.insert(row.alternates.begin(), row.chain);
          row.chain = best_so_far->chain;
          ProvenanceStep mono;
          mono.kind = ProvenanceStep::Kind::kMonotone;
          mono.to_k = f->k;
          row.chain.push_back(mono);
          row.bound = best_so_far->bound;
        }
        if (!best_so_far || row.bound < best_so_far->bound) best_so_far = f;
        out.emplace(std::make_pair(row.k, row.r), std::move(row));
      }
    }
    std::vector<BoundFact> rows;
    rows.reserve(out.size());
    for (auto& [key, fact] : out) rows.push_back(std::move(fact));
    return rows;
  }

  std::string to_csv() const {
    std::string csv = "k,r,bound_num,bound_den,provenance\n";
    for (const BoundFact& f : rows()) {
      csv += std::to_string(f.k) + "," + std::to_string(f.r) + "," +
             std::to_string(f.bound.num()) + "," + std::to_string(f.bound.den()) + "," +
             provenance_string(f.chain) + "\n";
    }
    return csv;
  }

  std::size_t size() const { return facts_.size(); }

  std::optional<BoundFact> strongest_at(std::uint64_t k, std::uint64_t r) const {
    std::optional<BoundFact> best;
    for (const auto& [key, fact] : facts_)
      if (fact.r == r && fact.k <= k)
        if (!best || fact.bound < best->bound) best = fact;
    return best;
  }

 private:
  std::map<std::pair<std::uint64_t, std::uint64_t>, BoundFact> facts_;
};

// Each base fact tau(s, r) <= 1/|G| plus its shifted images
// tau(s+j, r+j) <= 1/|G| for j = 1..max_shift (the codegree instance of the
// degree-shifting inequality).
inline std::vector<BoundFact> derive_bounds(std::span<const BaseFact> bases,
                                            std::uint64_t max_shift) {
  std::vector<BoundFact> out;
  for (const BaseFact& base : bases) {
    ProvenanceStep seed;
    seed.kind = ProvenanceStep::Kind::kBase;
    seed.group = base.group;
    seed.base_r = base.r;
    seed.s_value = base.s_value;
    seed.exact = base.exact;
    seed.source = base.source;
    out.push_back(replay_chain({seed}));
    for (std::uint64_t j = 1; j <= max_shift; ++j) {
      ProvenanceStep shift;
      shift.kind = ProvenanceStep::Kind::kShift;
      shift.j = j;
      out.push_back(replay_chain({seed, shift}));
    }
  }
  return out;
}

// Ledger seeds that are not derived from solver runs: the classical complete
// r=2 densities t(k,2) = 1/(k-1) (Mantel 1907, Turan 1941) and the
// externally cited family tau(r+d, r) <= 2^-d for r > d (Sidorenko 2018;
// the even-d boundary r = d is outside the cited formula's range, and at
// d = 2 it would even contradict t(4,2) = 1/3).
inline std::vector<BoundFact> reference_facts(std::uint64_t max_k = 12,
                                              std::uint64_t max_external_d = 6) {
  std::vector<BoundFact> out;
  for (std::uint64_t k = 3; k <= max_k; ++k) {
    ProvenanceStep step;
    step.kind = ProvenanceStep::Kind::kClassical;
    step.classical_k = k;
    out.push_back(replay_chain({step}));
  }
  for (std::uint64_t d = 1; d <= max_external_d; ++d)
    for (std::uint64_t r = std::max<std::uint64_t>(2, 2 * ((d + 2) / 2)); r <= max_k; ++r) {
      ProvenanceStep step;
      step.kind = ProvenanceStep::Kind::kExternal;
      step.external_d = d;
      step.external_r = r;
      out.push_back(replay_chain({step}));
    }
  return out;
}

// Non-numeric ledger annotations: asymptotics with no desk-scale content.
inline std::vector<std::string> ledger_annotations() {
  return {
      "asymptotics: c1*ln(k)/k^(r-1) <= tau(k,r) <= c2*ln(k)/k^(r-1) for fixed r >= 3 "
      "(Lo-Zhao 2018); recorded as prose only, no rows derived",
      "classical Turan densities t(k,r) for k > r > 2 have no known values; "
      "the ledger stores r = 2 seeds only",
  };
}

}  // namespace zsum
