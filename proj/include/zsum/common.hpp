#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace zsum {

// Thrown when an input would exceed a configured memory or enumeration cap.
class capacity_error : public std::runtime_error {
 public:
  capacity_error(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           ", cap " + std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}
  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

// Thrown when a witness or certificate fails re-validation.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("u64 multiplication overflow");
  return static_cast<std::uint64_t>(p);
}

inline std::uint64_t isqrt_u64(std::uint64_t x) {
  if (x == 0) return 0;
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (s > 0 && static_cast<unsigned __int128>(s) * s > x) --s;
  while (static_cast<unsigned __int128>(s + 1) * (s + 1) <= x) ++s;
  return s;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // divides exactly at every step
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

// Group enumeration cap; ZEROSUM_ELEMENT_CAP overrides the 2^24 default.
inline std::uint64_t default_element_cap() {
  if (const char* env = std::getenv("ZEROSUM_ELEMENT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 24;
}

}  // namespace zsum
