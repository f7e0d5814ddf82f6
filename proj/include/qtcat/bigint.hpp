#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qtcat {

/// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
/// Covers what exact elimination needs: ring ops, divmod, gcd, residues.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);

  static BigInt from_string(std::string_view s);
  std::string to_string() const;

  int signum() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool odd() const { return !mag_.empty() && (mag_[0] & 1u); }

  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  /// Truncated division: q rounds toward zero, r keeps the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt operator/(const BigInt& b) const;
  BigInt operator%(const BigInt& b) const;

  static BigInt gcd(const BigInt& a, const BigInt& b);

  bool operator==(const BigInt& o) const {
    return sign_ == o.sign_ && mag_ == o.mag_;
  }
  std::strong_ordering operator<=>(const BigInt& o) const;

  /// Value mod m, normalized into [0, m).
  uint64_t mod_u64(uint64_t m) const;

  bool fits_ll() const;
  long long to_ll() const;

  size_t limb_count() const { return mag_.size(); }

 private:
  int sign_ = 0;                // -1, 0, +1
  std::vector<uint32_t> mag_;   // little-endian, no leading zeros

  void trim();
  static int cmp_mag(const std::vector<uint32_t>& a,
                     const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace qtcat
