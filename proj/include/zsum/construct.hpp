#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zsum/bignat.hpp"
#include "zsum/gf2k.hpp"
#include "zsum/group.hpp"
#include "zsum/sequence.hpp"
#include "zsum/zerosum.hpp"

namespace zsum {

enum class ConstructionKind {
  kSidonBasis,
  kSidonD4,
  kMomentCurve,
  kExtremalSequence,
  kS4LowerSequence,
};

// Machine-checkable predicate the payload claims to satisfy.
struct ClaimedProperty {
  enum class Kind {
    kSidon,
    kZeroFreeOfRank,        // no r distinct elements sum to zero
    kZeroFreeEvenRanks,     // zero-free of every even rank 2..r
    kNoZeroSumOfLength,     // no zero-sum subsequence of length r
  };
  Kind kind = Kind::kSidon;
  std::uint64_t r = 0;
};

struct ConstructionOutput {
  ConstructionKind kind;
  GroupSpec spec;
  GSequence payload;
  ClaimedProperty claim;
};

// No construction is trusted: every output re-checks its claim through the
// zero-sum module.
inline bool revalidate(const ConstructionOutput& out) {
  const GroupSpec& spec = out.spec;
  switch (out.claim.kind) {
    case ClaimedProperty::Kind::kSidon:
      return is_sidon_set(spec, out.payload.distinct_elements());
    case ClaimedProperty::Kind::kZeroFreeOfRank: {
      auto elems = out.payload.distinct_elements();
      return out.payload.is_set() &&
             is_zero_free_set(spec, elems, out.claim.r).zero_free;
    }
    case ClaimedProperty::Kind::kZeroFreeEvenRanks: {
      if (!out.payload.is_set()) return false;
      auto elems = out.payload.distinct_elements();
      for (std::uint64_t rank = 2; rank <= out.claim.r; rank += 2)
        if (!is_zero_free_set(spec, elems, rank).zero_free) return false;
      return true;
    }
    case ClaimedProperty::Kind::kNoZeroSumOfLength:
      return !find_zero_sum_subsequence(out.payload, out.claim.r).has_value();
  }
  return false;
}

// The d+1 vectors of Hamming weight <= 1 in Z2^d; a Sidon set, maximum for
// d <= 3.
inline ConstructionOutput sidon_basis(unsigned d) {
  if (d < 1) throw std::invalid_argument("sidon_basis: d >= 1");
  GroupSpec spec(std::vector<std::uint32_t>(d, 2));
  GSequence payload(spec);
  payload.add_index(0);
  for (unsigned i = 0; i < d; ++i) payload.add_index(std::uint64_t{1} << i);
  return ConstructionOutput{ConstructionKind::kSidonBasis, spec, std::move(payload),
                            ClaimedProperty{ClaimedProperty::Kind::kSidon, 0}};
}

// The maximum 6-element Sidon set in Z2^4: weight-<=1 vectors plus (1,1,1,1).
inline ConstructionOutput sidon_d4() {
  ConstructionOutput out = sidon_basis(4);
  out.kind = ConstructionKind::kSidonD4;
  out.payload.add_index(0xF);
  return out;
}

namespace detail {

inline GroupElement curve_point(const FieldContext& field, unsigned m, FieldElement x) {
  const unsigned k = static_cast<unsigned>(field.degree());
  GroupElement e{std::vector<std::uint32_t>(m * k, 0)};
  for (unsigned block = 0; block < m; ++block) {
    FieldElement p = field.pow(x, 2 * block + 1);
    for (unsigned j = 0; j < k; ++j)
      e.coords[block * k + j] = (p.value >> j) & 1;
  }
  return e;
}

}  // namespace detail

// The 2^k vectors (x, x^3, x^5, ..., x^{2m-1}) over GF(2^k), blocked into m
// field coordinates of Z2^{mk}; block i holds x^{2i+1}, little-endian within
// the block. Zero-free of rank 2n for every n = 1..m.
inline ConstructionOutput moment_curve(unsigned m, unsigned k,
                                       std::optional<std::uint32_t> modulus = {},
                                       std::uint64_t element_cap = default_element_cap()) {
  if (m < 1 || k < 1) throw std::invalid_argument("moment_curve: m, k >= 1");
  if (m * k >= 63 || (std::uint64_t{1} << (m * k)) > element_cap)
    throw capacity_error("moment curve group too large",
                         m * k < 64 ? (std::uint64_t{1} << (m * k)) : UINT64_MAX,
                         element_cap);
  FieldContext field = modulus ? FieldContext(static_cast<int>(k), *modulus)
                               : FieldContext(static_cast<int>(k));
  GroupSpec spec(std::vector<std::uint32_t>(m * k, 2));
  GSequence payload(spec);
  for (std::uint64_t v = 0; v < field.field_size(); ++v)
    payload.add(detail::curve_point(field, m, field.element(static_cast<std::uint32_t>(v))));
  return ConstructionOutput{
      ConstructionKind::kMomentCurve, spec, std::move(payload),
      ClaimedProperty{ClaimedProperty::Kind::kZeroFreeEvenRanks, 2 * m}};
}

// Length 2^k + 2m - 2 sequence over Z2^{mk}: one curve element repeated
// 2m - 1 times, every other curve element once. Contains no zero-sum
// subsequence of length 2m, certifying s_{2m}(Z2^{mk}) >= 2^k + 2m - 1.
inline ConstructionOutput extremal_sequence_s2m(
    unsigned m, unsigned k, std::optional<std::uint32_t> modulus = {},
    std::uint64_t element_cap = default_element_cap()) {
  ConstructionOutput curve = moment_curve(m, k, modulus, element_cap);
  GSequence payload(curve.spec);
  bool first = true;
  for (const auto& [idx, mult] : curve.payload.entries()) {
    payload.add_index(idx, first ? 2 * m - 1 : 1);
    first = false;
  }
  return ConstructionOutput{
      ConstructionKind::kExtremalSequence, curve.spec, std::move(payload),
      ClaimedProperty{ClaimedProperty::Kind::kNoZeroSumOfLength, 2 * m}};
}

// Sidon set with its last element appearing three times in total: length
// beta(Z2^d) + 2, no zero-sum subsequence of length 4. Certifies
// s_4(Z2^d) >= beta(Z2^d) + 3.
inline ConstructionOutput s4_lower_sequence_from(const GroupSpec& spec,
                                                 const GSequence& sidon_set) {
  if (!sidon_set.is_set() || sidon_set.empty())
    throw std::invalid_argument("s4_lower_sequence: need a non-empty Sidon set");
  GSequence payload = sidon_set;
  payload.add_index(sidon_set.entries().rbegin()->first, 2);
  return ConstructionOutput{
      ConstructionKind::kS4LowerSequence, spec, std::move(payload),
      ClaimedProperty{ClaimedProperty::Kind::kNoZeroSumOfLength, 4}};
}

inline ConstructionOutput s4_lower_sequence(unsigned d) {
  if (d < 1 || d > 4)
    throw std::invalid_argument("s4_lower_sequence: built-in Sidon sets cover d <= 4");
  ConstructionOutput sidon = d == 4 ? sidon_d4() : sidon_basis(d);
  return s4_lower_sequence_from(sidon.spec, sidon.payload);
}

struct SidonBound {
  double value = 0.0;           // sqrt(2^{d+1} - 7/4) + 1/2
  std::uint64_t floor_value = 0;  // usable integer bound, exact arithmetic
};

inline SidonBound sidon_upper_bound(unsigned d) {
  if (d < 1 || d > 60) throw std::invalid_argument("sidon_upper_bound: d in [1, 60]");
  std::uint64_t x = (std::uint64_t{1} << (d + 3)) - 7;  // 4*(2^{d+1}) - 7
  SidonBound b;
  b.value = std::sqrt(std::ldexp(1.0, static_cast<int>(d) + 1) - 1.75) + 0.5;
  b.floor_value = (isqrt_u64(x) + 1) / 2;
  return b;
}

// b_d = floor(sqrt(2^{d+1} - 7/4) - 1/2), via integer square root of
// 2^{d+3} - 7 so boundary values never hit floating-point floor error.
inline std::uint64_t b_d(unsigned d) {
  if (d < 1 || d > 60) throw std::invalid_argument("b_d: d in [1, 60]");
  std::uint64_t x = (std::uint64_t{1} << (d + 3)) - 7;
  return (isqrt_u64(x) - 1) / 2;
}

// q, lambda, N tables of the recursive counting bound, plus
// C_m = (m! * N_m)^{1/m}. Arrays are indexed by r; entries below the first
// valid r are zero.
struct CmTable {
  unsigned m = 0;
  std::vector<std::uint64_t> q;       // q[r], r = 2..m
  std::vector<std::uint64_t> lambda;  // lambda[r], r = 2..m
  std::vector<BigNat> n_table;        // N[r], r = 1..m
  BigNat radicand;                    // m! * N_m, exact
  double c_m = 0.0;
  bool lambda_coarse_bound_ok = true;  // lambda_r < 2(m/r + r) for all r
};

inline CmTable cm_constant(unsigned m) {
  if (m < 2) throw std::invalid_argument("cm_constant: m >= 2");
  CmTable t;
  t.m = m;
  t.q.assign(m + 1, 0);
  t.lambda.assign(m + 1, 0);
  t.n_table.assign(m + 1, BigNat(0));
  t.n_table[1] = BigNat(1);
  for (std::uint64_t r = 2; r <= m; ++r) {
    std::uint64_t q = (r - m % r) % r;
    t.q[r] = q;
    t.lambda[r] = q > 0 ? 2 * (m + q) / r + 2 * r - q - 3 : 2 * m / r - 1;
    // lambda_r < 2(m/r + r), with m/r as exact rational: r*lambda_r < 2(m + r^2)
    if (r * t.lambda[r] >= 2 * (m + r * r)) t.lambda_coarse_bound_ok = false;
    BigNat n = t.n_table[r - 1];   // N_r = lambda_r * (1 + r*(N_{r-1} - 1))
    n.sub_u64(1);
    n.mul_u64(r);
    n.add_u64(1);
    n.mul_u64(t.lambda[r]);
    t.n_table[r] = std::move(n);
  }
  t.radicand = t.n_table[m];
  for (std::uint64_t i = 2; i <= m; ++i) t.radicand.mul_u64(i);
  t.c_m = std::pow(t.radicand.to_double(), 1.0 / m);
  return t;
}

struct EgzUpper {
  double eta = 0.0;    // (3/8) * cbrt(207 + 33*sqrt(33)), < 2.756
  double bound = 0.0;  // 2*eta^d + 1
};

inline EgzUpper z3_egz_upper(unsigned d) {
  if (d < 1) throw std::invalid_argument("z3_egz_upper: d >= 1");
  EgzUpper u;
  u.eta = 0.375 * std::cbrt(207.0 + 33.0 * std::sqrt(33.0));
  u.bound = 2.0 * std::pow(u.eta, static_cast<double>(d)) + 1.0;
  return u;
}

}  // namespace zsum
