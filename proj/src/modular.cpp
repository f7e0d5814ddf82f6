#include "qtcat/modular.hpp"

#include "qtcat/errors.hpp"

namespace qtcat {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // this base set decides primality for every n < 2^64
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = modp::pow(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = modp::mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t next_prime_u64(uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime_u64(n)) n += 2;
  return n;
}

uint64_t random_prime_62(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(uint64_t(1) << 61,
                                               (uint64_t(1) << 62) - 1);
  while (true) {
    uint64_t c = dist(rng) | 1;
    if (is_prime_u64(c)) return c;
  }
}

uint64_t residue_of(const BigInt& v, uint64_t p) { return v.mod_u64(p); }

uint64_t residue_of(const Rational& r, uint64_t p) {
  uint64_t den = r.den().mod_u64(p);
  if (den == 0)
    throw BackendFailure("denominator vanishes mod chosen prime");
  return modp::mul(r.num().mod_u64(p), modp::inv(den, p), p);
}

uint64_t residue_of_ll(long long v, uint64_t p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return static_cast<uint64_t>(m);
}

}  // namespace qtcat
