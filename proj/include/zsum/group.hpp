#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/common.hpp"

namespace zsum {

// Element of a finite abelian product group, as one residue per cyclic
// factor. Immutable value; equality and hashing are structural.
struct GroupElement {
  std::vector<std::uint32_t> coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords < b.coords;
  }
};

// A finite abelian group presented as a product of cyclic factors Z_{m_i}.
//
// Elements are addressed either as GroupElement coordinate vectors or by
// their index in mixed-radix lexicographic order (first coordinate most
// significant): Z2^2 enumerates (0,0),(0,1),(1,0),(1,1). For Z2^d the index
// doubles as the packed bit encoding, so index addition is a word XOR.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("GroupSpec: no factors");
    unsigned __int128 order = 1;
    std::uint64_t exponent = 1;
    binary_ = true;
    for (std::uint32_t m : moduli_) {
      if (m < 2) throw std::invalid_argument("GroupSpec: modulus must be >= 2");
      order *= m;
      if (order > UINT64_MAX) throw std::overflow_error("GroupSpec: order overflows u64");
      exponent = std::lcm(exponent, static_cast<std::uint64_t>(m));
      binary_ &= (m == 2);
    }
    order_ = static_cast<std::uint64_t>(order);
    exponent_ = exponent;
    weights_.resize(moduli_.size());
    std::uint64_t w = 1;
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      weights_[i] = w;
      w = checked_mul_u64(w, moduli_[i]);
    }
  }

  // Accepts "Z2^5", "Z3", "Z2xZ4", products joined by 'x'.
  static GroupSpec parse(std::string_view text) {
    std::vector<std::uint32_t> moduli;
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] != 'Z' && text[pos] != 'z')
        throw std::invalid_argument("bad group spec: " + std::string(text));
      ++pos;
      std::uint64_t m = parse_number(text, pos);
      std::uint64_t e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = parse_number(text, pos);
      }
      if (m < 2 || m > UINT32_MAX || e == 0 || e > 1024)
        throw std::invalid_argument("bad group spec: " + std::string(text));
      for (std::uint64_t i = 0; i < e; ++i) moduli.push_back(static_cast<std::uint32_t>(m));
      if (pos < text.size()) {
        if (text[pos] != 'x' && text[pos] != 'X')
          throw std::invalid_argument("bad group spec: " + std::string(text));
        ++pos;
      }
    }
    return GroupSpec(std::move(moduli));
  }

  std::string to_string() const {
    std::string out;
    std::size_t i = 0;
    while (i < moduli_.size()) {
      std::size_t j = i;
      while (j < moduli_.size() && moduli_[j] == moduli_[i]) ++j;
      if (!out.empty()) out += 'x';
      out += 'Z' + std::to_string(moduli_[i]);
      if (j - i > 1) out += '^' + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t exponent() const { return exponent_; }
  bool is_binary() const { return binary_; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.moduli_ == b.moduli_;
  }

  GroupElement identity() const {
    return GroupElement{std::vector<std::uint32_t>(moduli_.size(), 0)};
  }

  bool conforms(const GroupElement& a) const {
    if (a.coords.size() != moduli_.size()) return false;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      if (a.coords[i] >= moduli_[i]) return false;
    return true;
  }

  void require(const GroupElement& a) const {
    if (!conforms(a)) throw std::invalid_argument("element does not conform to " + to_string());
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    require(a);
    require(b);
    if (binary_) return from_packed(packed_of(a) ^ packed_of(b));
    GroupElement r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      r.coords[i] += b.coords[i];
      if (r.coords[i] >= moduli_[i]) r.coords[i] -= moduli_[i];
    }
    return r;
  }

  GroupElement neg(const GroupElement& a) const {
    require(a);
    GroupElement r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      if (r.coords[i] != 0) r.coords[i] = moduli_[i] - r.coords[i];
    return r;
  }

  std::uint64_t index_of(const GroupElement& a) const {
    require(a);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      idx += weights_[i] * a.coords[i];
    return idx;
  }

  GroupElement element_at(std::uint64_t idx) const {
    if (idx >= order_) throw std::invalid_argument("element index out of range");
    GroupElement e{std::vector<std::uint32_t>(moduli_.size())};
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      e.coords[i] = static_cast<std::uint32_t>(idx / weights_[i]);
      idx %= weights_[i];
    }
    return e;
  }

  // Packed word encoding for Z2^d: bit weight of coordinate i is 2^(d-1-i),
  // i.e. the packed word equals the element's enumeration index.
  std::uint64_t packed_of(const GroupElement& a) const {
    if (!binary_) throw std::logic_error("packed encoding requires Z2^d");
    std::uint64_t p = 0;
    for (std::uint32_t c : a.coords) p = p << 1 | c;
    return p;
  }

  GroupElement from_packed(std::uint64_t p) const {
    if (!binary_) throw std::logic_error("packed encoding requires Z2^d");
    GroupElement e{std::vector<std::uint32_t>(moduli_.size())};
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      e.coords[i] = p & 1;
      p >>= 1;
    }
    return e;
  }

  std::uint64_t add_index(std::uint64_t i, std::uint64_t j) const {
    if (binary_) return i ^ j;
    std::uint64_t idx = 0;
    for (std::size_t c = 0; c < moduli_.size(); ++c) {
      std::uint64_t a = i / weights_[c];
      std::uint64_t b = j / weights_[c];
      i %= weights_[c];
      j %= weights_[c];
      std::uint64_t s = a + b;
      if (s >= moduli_[c]) s -= moduli_[c];
      idx += s * weights_[c];
    }
    return idx;
  }

  std::uint64_t neg_index(std::uint64_t i) const {
    if (binary_) return i;
    std::uint64_t idx = 0;
    for (std::size_t c = 0; c < moduli_.size(); ++c) {
      std::uint64_t a = i / weights_[c];
      i %= weights_[c];
      if (a != 0) a = moduli_[c] - a;
      idx += a * weights_[c];
    }
    return idx;
  }

  std::uint64_t sub_index(std::uint64_t i, std::uint64_t j) const {
    return binary_ ? i ^ j : add_index(i, neg_index(j));
  }

 private:
  static std::uint64_t parse_number(std::string_view text, std::size_t& pos) {
    std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      if (v > UINT32_MAX) throw std::invalid_argument("bad group spec: " + std::string(text));
      ++pos;
    }
    if (pos == start) throw std::invalid_argument("bad group spec: " + std::string(text));
    return v;
  }

  std::vector<std::uint32_t> moduli_;
  std::vector<std::uint64_t> weights_;
  std::uint64_t order_ = 1;
  std::uint64_t exponent_ = 1;
  bool binary_ = false;
};

// Every element exactly once, in mixed-radix lexicographic order. Guards the
// configurable element cap before materializing anything.
inline std::vector<GroupElement> enumerate_elements(
    const GroupSpec& spec, std::uint64_t cap = default_element_cap()) {
  if (spec.order() > cap)
    throw capacity_error("group too large to enumerate", spec.order(), cap);
  std::vector<GroupElement> out;
  out.reserve(spec.order());
  for (std::uint64_t i = 0; i < spec.order(); ++i) out.push_back(spec.element_at(i));
  return out;
}

}  // namespace zsum

template <>
struct std::hash<zsum::GroupElement> {
  std::size_t operator()(const zsum::GroupElement& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t c : e.coords) h = (h ^ c) * 0x100000001b3ULL;
    return h;
  }
};
