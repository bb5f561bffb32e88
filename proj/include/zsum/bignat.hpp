#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zsum {

// Minimal arbitrary-precision unsigned integer. Only the scalar operations
// the N_r recurrence needs: multiply/add/subtract by a machine word, compare,
// and conversion to double/decimal. Little-endian 32-bit limbs.
class BigNat {
 public:
  BigNat() : limbs_{0} {}
  explicit BigNat(std::uint64_t v) {
    limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }

  BigNat& mul_u64(std::uint64_t f) {
    if (f == 0) {
      limbs_.assign(1, 0);
      return *this;
    }
    std::uint32_t lo = static_cast<std::uint32_t>(f);
    std::uint32_t hi = static_cast<std::uint32_t>(f >> 32);
    BigNat r = mul_u32_copy(lo);
    if (hi) {
      BigNat h = mul_u32_copy(hi);
      h.shift_limbs(1);
      r.add(h);
    }
    *this = std::move(r);
    return *this;
  }

  BigNat& add_u64(std::uint64_t v) {
    add(BigNat(v));
    return *this;
  }

  BigNat& sub_u64(std::uint64_t v) {
    BigNat b(v);
    if (cmp(b) < 0) throw std::underflow_error("BigNat subtraction underflow");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < b.limbs_.size() ? b.limbs_[i] : 0);
      borrow = cur < 0;
      if (cur < 0) cur += (std::int64_t{1} << 32);
      limbs_[i] = static_cast<std::uint32_t>(cur);
    }
    trim();
    return *this;
  }

  int cmp(const BigNat& o) const {
    if (limbs_.size() != o.limbs_.size())
      return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
  }
  friend bool operator==(const BigNat& a, const BigNat& b) { return a.cmp(b) == 0; }

  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigNat does not fit u64");
    std::uint64_t v = limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return v;
  }

  double to_double() const {
    double v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return v;
  }

  std::string to_string() const {
    std::vector<std::uint32_t> tmp = limbs_;
    std::string out;
    while (tmp.size() > 1 || tmp[0] != 0) {
      std::uint64_t rem = 0;
      for (std::size_t i = tmp.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | tmp[i];
        tmp[i] = static_cast<std::uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (tmp.size() > 1 && tmp.back() == 0) tmp.pop_back();
      std::string chunk = std::to_string(rem);
      if (tmp.size() == 1 && tmp[0] == 0) {
        out.insert(0, chunk);
      } else {
        out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  BigNat mul_u32_copy(std::uint32_t f) const {
    BigNat r;
    r.limbs_.assign(limbs_.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * f + carry;
      r.limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    r.limbs_[limbs_.size()] = static_cast<std::uint32_t>(carry);
    r.trim();
    return r;
  }

  void add(const BigNat& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t cur = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  void shift_limbs(std::size_t n) {
    if (limbs_.size() == 1 && limbs_[0] == 0) return;
    limbs_.insert(limbs_.begin(), n, 0);
  }

  void trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<std::uint32_t> limbs_;
};

}  // namespace zsum
