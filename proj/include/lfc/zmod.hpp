#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

// Helpers for arithmetic in Z/mZ with m < 2^62.
namespace lfc::zmod {

inline std::int64_t reduce(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline std::int64_t reduce128(__int128 a, std::int64_t m) {
  a %= m;
  return static_cast<std::int64_t>(a < 0 ? a + m : a);
}

inline std::int64_t add(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t r = a + b;
  return r >= m ? r - m : r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t r = a - b;
  return r < 0 ? r + m : r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t pow(std::int64_t a, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  a = reduce(a, m);
  while (e > 0) {
    if (e & 1)
      r = mul(r, a, m);
    a = mul(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a unit modulo m (extended Euclid).
inline std::int64_t inv(std::int64_t a, std::int64_t m) {
  a = reduce(a, m);
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1)
    throw std::domain_error("zmod::inv: not a unit");
  return reduce(old_s, m);
}

// p-adic valuation of a (a != 0), capped at `cap` for a == 0.
inline int val(std::int64_t a, std::int64_t p, int cap) {
  if (a == 0)
    return cap;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

} // namespace lfc::zmod
