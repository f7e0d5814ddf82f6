#include "qtcat/bigint.hpp"

#include <algorithm>
#include <cstdlib>

#include "qtcat/errors.hpp"

namespace qtcat {

namespace {
constexpr uint64_t kBase = uint64_t(1) << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v > 0 ? 1 : -1;
  // avoid UB on LLONG_MIN
  unsigned long long u =
      v > 0 ? static_cast<unsigned long long>(v)
            : ~static_cast<unsigned long long>(v) + 1ull;
  while (u != 0) {
    mag_.push_back(static_cast<uint32_t>(u & 0xffffffffu));
    u >>= 32;
  }
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a,
                    const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  const auto& lo = a.size() >= b.size() ? b : a;
  const auto& hi = a.size() >= b.size() ? a : b;
  std::vector<uint32_t> out;
  out.reserve(hi.size() + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < hi.size(); ++i) {
    uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    out.push_back(static_cast<uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) out.push_back(static_cast<uint32_t>(carry));
  return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = int64_t(a[i]) - borrow - (i < b.size() ? int64_t(b[i]) : 0);
    if (s < 0) {
      s += int64_t(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<uint32_t>(s));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> out(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = out[i + j] + uint64_t(a[i]) * b[j] + carry;
      out[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = out[k] + carry;
      out[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

void BigInt::divmod_mag(const std::vector<uint32_t>& a,
                        const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  q.clear();
  r.clear();
  if (b.empty()) throw Error("BigInt: division by zero");
  if (cmp_mag(a, b) < 0) {
    r = a;
    return;
  }
  if (b.size() == 1) {
    // single-limb fast path
    uint64_t d = b[0];
    q.assign(a.size(), 0);
    uint64_t rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (rem) r.push_back(static_cast<uint32_t>(rem));
    return;
  }
  // bitwise shift-subtract long division; adequate for our operand sizes
  size_t bits = a.size() * 32;
  while (bits > 0) {
    size_t i = (bits - 1) / 32, s = (bits - 1) % 32;
    if ((a[i] >> s) & 1u) break;
    --bits;
  }
  q.assign(a.size(), 0);
  std::vector<uint32_t> rem;
  rem.reserve(b.size() + 1);
  for (size_t bit = bits; bit-- > 0;) {
    // rem = rem*2 + bit(a, bit)
    uint32_t carry = (a[bit / 32] >> (bit % 32)) & 1u;
    for (size_t i = 0; i < rem.size(); ++i) {
      uint32_t nc = rem[i] >> 31;
      rem[i] = (rem[i] << 1) | carry;
      carry = nc;
    }
    if (carry) rem.push_back(carry);
    if (cmp_mag(rem, b) >= 0) {
      rem = sub_mag(rem, b);
      q[bit / 32] |= (uint32_t(1) << (bit % 32));
    }
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  r = std::move(rem);
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt out;
  if (a.sign_ == b.sign_) {
    out.sign_ = a.sign_;
    out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    return out;
  }
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  if (c == 0) return BigInt();
  if (c > 0) {
    out.sign_ = a.sign_;
    out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
  } else {
    out.sign_ = b.sign_;
    out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
  }
  return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt out;
  if (a.sign_ == 0 || b.sign_ == 0) return out;
  out.sign_ = a.sign_ * b.sign_;
  out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
  return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  std::vector<uint32_t> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q.mag_ = std::move(qm);
  r.mag_ = std::move(rm);
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& b) const {
  BigInt q, r;
  divmod(*this, b, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
  BigInt q, r;
  divmod(*this, b, q, r);
  return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  // binary gcd on magnitudes
  BigInt x = a.abs(), y = b.abs();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  auto twos = [](BigInt& v) {
    int k = 0;
    size_t limb = 0;
    while (limb < v.mag_.size() && v.mag_[limb] == 0) ++limb;
    k = int(limb) * 32;
    uint32_t w = v.mag_[limb];
    while (!(w & 1u)) {
      w >>= 1;
      ++k;
    }
    // shift right by k
    if (k > 0) {
      size_t drop = size_t(k) / 32;
      int s = k % 32;
      std::vector<uint32_t> out;
      out.reserve(v.mag_.size() - drop);
      for (size_t i = drop; i < v.mag_.size(); ++i) {
        uint64_t cur = v.mag_[i] >> s;
        if (s && i + 1 < v.mag_.size())
          cur |= (uint64_t(v.mag_[i + 1]) << (32 - s)) & 0xffffffffu;
        out.push_back(static_cast<uint32_t>(cur));
      }
      v.mag_ = std::move(out);
      v.trim();
    }
    return k;
  };
  int ka = twos(x), kb = twos(y);
  int k = std::min(ka, kb);
  while (true) {
    if (cmp_mag(x.mag_, y.mag_) < 0) std::swap(x, y);
    x.mag_ = sub_mag(x.mag_, y.mag_);
    x.trim();
    if (x.is_zero()) break;
    twos(x);
  }
  // y << k
  if (k > 0) {
    size_t limbs = size_t(k) / 32;
    int s = k % 32;
    std::vector<uint32_t> out(limbs, 0);
    uint32_t carry = 0;
    for (uint32_t w : y.mag_) {
      out.push_back(s ? ((w << s) | carry) : w);
      carry = s ? static_cast<uint32_t>(uint64_t(w) >> (32 - s)) : 0;
    }
    if (carry) out.push_back(carry);
    y.mag_ = std::move(out);
  }
  y.sign_ = 1;
  y.trim();
  return y;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
  if (sign_ != o.sign_)
    return sign_ < o.sign_ ? std::strong_ordering::less
                           : std::strong_ordering::greater;
  int c = cmp_mag(mag_, o.mag_) * (sign_ < 0 ? -1 : 1);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

uint64_t BigInt::mod_u64(uint64_t m) const {
  if (m == 0) throw Error("BigInt: mod by zero");
  unsigned __int128 r = 0;
  for (size_t i = mag_.size(); i-- > 0;) {
    r = ((r << 32) | mag_[i]) % m;
  }
  uint64_t v = static_cast<uint64_t>(r);
  if (sign_ < 0 && v != 0) v = m - v;
  return v;
}

bool BigInt::fits_ll() const {
  if (mag_.size() > 2) return false;
  if (mag_.size() < 2) return true;
  uint64_t u = (uint64_t(mag_[1]) << 32) | mag_[0];
  if (sign_ > 0) return u <= uint64_t(0x7fffffffffffffffull);
  return u <= uint64_t(1) << 63;
}

long long BigInt::to_ll() const {
  if (!fits_ll()) throw Error("BigInt: value does not fit in long long");
  uint64_t u = 0;
  if (!mag_.empty()) u = mag_[0];
  if (mag_.size() == 2) u |= uint64_t(mag_[1]) << 32;
  if (sign_ >= 0) return static_cast<long long>(u);
  return -static_cast<long long>(u - 1) - 1;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> cur = mag_;
  std::string digits;
  while (!cur.empty()) {
    // divide by 10^9 to peel nine digits at a time
    uint64_t rem = 0;
    for (size_t i = cur.size(); i-- > 0;) {
      uint64_t v = (rem << 32) | cur[i];
      cur[i] = static_cast<uint32_t>(v / 1000000000u);
      rem = v % 1000000000u;
    }
    while (!cur.empty() && cur.back() == 0) cur.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(char('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out;
  if (sign_ < 0) out.push_back('-');
  out.append(digits.rbegin(), digits.rend());
  return out;
}

BigInt BigInt::from_string(std::string_view s) {
  BigInt out;
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw Error("BigInt: empty numeral");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error("BigInt: bad digit");
    // out = out*10 + digit
    uint64_t carry = uint64_t(s[i] - '0');
    for (size_t j = 0; j < out.mag_.size(); ++j) {
      uint64_t v = uint64_t(out.mag_[j]) * 10 + carry;
      out.mag_[j] = static_cast<uint32_t>(v & 0xffffffffu);
      carry = v >> 32;
    }
    if (carry) out.mag_.push_back(static_cast<uint32_t>(carry));
  }
  out.sign_ = out.mag_.empty() ? 0 : (neg ? -1 : 1);
  out.trim();
  return out;
}

}  // namespace qtcat
