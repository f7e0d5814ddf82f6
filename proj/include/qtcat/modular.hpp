#pragma once

#include <cstdint>
#include <random>

#include "qtcat/rational.hpp"

namespace qtcat {

/// Arithmetic mod a prime that fits in 63 bits (products go through
/// unsigned __int128).
namespace modp {

inline uint64_t add(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint64_t sub(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint64_t mul(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((unsigned __int128)a * b % p);
}

inline uint64_t pow(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t inv(uint64_t a, uint64_t p) { return pow(a, p - 2, p); }

}  // namespace modp

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

/// Next prime >= n (n odd-stepped upward).
uint64_t next_prime_u64(uint64_t n);

/// Draw a prime uniformly-ish from [2^61, 2^62).
uint64_t random_prime_62(std::mt19937_64& rng);

/// Default dual elimination primes; chosen once, ~62 bits each.
inline constexpr uint64_t kDefaultPrimeA = 0x3fffffffffffffc7ull;
inline constexpr uint64_t kDefaultPrimeB = 0x3fffffffffffffa9ull;

/// Residue of an exact scalar; throws BackendFailure when the denominator
/// vanishes mod p (unlucky prime).
uint64_t residue_of(const Rational& r, uint64_t p);
uint64_t residue_of(const BigInt& v, uint64_t p);
uint64_t residue_of_ll(long long v, uint64_t p);

}  // namespace qtcat
