#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "zsum/common.hpp"

namespace zsum {

// An element of GF(2^k): polynomial coefficients packed little-endian
// (bit j = coefficient of x^j), no bits at position >= k.
struct FieldElement {
  std::uint32_t value = 0;
  friend bool operator==(FieldElement a, FieldElement b) { return a.value == b.value; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.value != b.value; }
};

namespace detail {

inline int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a))
    a ^= b << (da - db);
  return a;
}

// Carry-less 64-bit product of two width-<=32 polynomials.
inline std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t r = 0;
  std::uint64_t aa = a;
  while (b) {
    if (b & 1) r ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return r;
}

}  // namespace detail

// GF(2^k) arithmetic behind a fixed irreducible modulus. Default moduli are
// the numerically least irreducible polynomial of each degree, e.g.
//   k=1: x          (0x2)      k=5: x^5+x^2+1      (0x25)
//   k=2: x^2+x+1    (0x7)      k=6: x^6+x+1        (0x43)
//   k=3: x^3+x+1    (0xb)      k=7: x^7+x+1        (0x83)
//   k=4: x^4+x+1    (0x13)     k=8: x^8+x^4+x^3+x+1 (0x11b)
// and so on up to k=16; any irreducible modulus yields an isomorphic field.
class FieldContext {
 public:
  explicit FieldContext(int k) : FieldContext(k, default_modulus(k)) {}

  FieldContext(int k, std::uint32_t modulus) : k_(k), modulus_(modulus) {
    if (k < 1 || k > kMaxDegree)
      throw std::invalid_argument("FieldContext: degree must be in [1, 24]");
    if (detail::poly_degree(modulus) != k)
      throw std::invalid_argument("FieldContext: modulus degree != k");
    if (!is_irreducible(modulus))
      throw std::invalid_argument("FieldContext: modulus is reducible");
  }

  static constexpr int kMaxDegree = 24;

  // Trial division against every polynomial of degree <= k/2.
  static bool is_irreducible(std::uint32_t p) {
    int k = detail::poly_degree(p);
    if (k < 1) return false;
    for (int m = 1; m <= k / 2; ++m)
      for (std::uint64_t q = std::uint64_t{1} << m; q < (std::uint64_t{2} << m); ++q)
        if (detail::poly_mod(p, q) == 0) return false;
    return true;
  }

  static std::uint32_t default_modulus(int k) {
    if (k < 1 || k > kMaxDegree)
      throw std::invalid_argument("FieldContext: degree must be in [1, 24]");
    for (std::uint64_t p = std::uint64_t{1} << k; p < (std::uint64_t{2} << k); ++p)
      if (is_irreducible(static_cast<std::uint32_t>(p)))
        return static_cast<std::uint32_t>(p);
    throw std::logic_error("no irreducible polynomial found");  // unreachable
  }

  int degree() const { return k_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint64_t field_size() const { return std::uint64_t{1} << k_; }

  FieldElement element(std::uint32_t value) const {
    if (value >> k_) throw std::invalid_argument("FieldElement out of range");
    return FieldElement{value};
  }
  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }

  FieldElement add(FieldElement a, FieldElement b) const {
    return FieldElement{a.value ^ b.value};
  }

  // Carry-less multiply, then reduce by the modulus.
  FieldElement mul(FieldElement a, FieldElement b) const {
    std::uint64_t p = detail::clmul(a.value, b.value);
    for (int bit = 2 * k_ - 2; bit >= k_; --bit)
      if (p >> bit & 1) p ^= static_cast<std::uint64_t>(modulus_) << (bit - k_);
    return FieldElement{static_cast<std::uint32_t>(p)};
  }

  // Square-and-multiply; a^0 = 1 for every a, including 0^0 = 1, so that the
  // curve vector at x = 0 is well defined.
  FieldElement pow(FieldElement a, std::uint64_t e) const {
    FieldElement r = one();
    FieldElement base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

 private:
  int k_;
  std::uint32_t modulus_;
};

inline std::uint32_t parse_hex_modulus(const std::string& text) {
  std::size_t pos = 0;
  unsigned long v = std::stoul(text, &pos, 16);
  if (pos != text.size() || v == 0 || v > 0xffffffffUL)
    throw std::invalid_argument("bad hex modulus: " + text);
  return static_cast<std::uint32_t>(v);
}

}  // namespace zsum
