#pragma once

// Sign-magnitude arbitrary-precision integer, base 2^32 limbs.
//
// Sized for exact number theory at desk scale: densities, reciprocal sums
// and coprime products whose numerators outgrow 64 bits but stay within a
// few hundred. Schoolbook multiplication and bitwise long division are
// deliberate; asymptotics never matter at these magnitudes.

#include <algorithm>
#include <compare>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfp/errors.hpp"

namespace bfp {

class bigint {
public:
  bigint() = default;

  bigint(long long v) {  // NOLINT: implicit by design, mirrors int literals
    if (v == 0) return;
    neg_ = v < 0;
    // Avoid UB on LLONG_MIN by working in unsigned space.
    unsigned long long m =
        neg_ ? ~static_cast<unsigned long long>(v) + 1ULL
             : static_cast<unsigned long long>(v);
    push_u64(m);
  }

  bigint(long v) : bigint(static_cast<long long>(v)) {}  // NOLINT
  bigint(int v) : bigint(static_cast<long long>(v)) {}   // NOLINT

  bigint(unsigned long long v) {  // NOLINT
    push_u64(v);
  }

  bigint(unsigned long v) : bigint(static_cast<unsigned long long>(v)) {}  // NOLINT
  bigint(unsigned v) : bigint(static_cast<unsigned long long>(v)) {}       // NOLINT

  static bigint from_string(std::string_view s) {
    if (s.empty()) throw invalid_argument_error("empty integer literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size())
      throw invalid_argument_error("sign without digits in integer literal");
    bigint r;
    for (; i < s.size();) {
      // Consume up to 9 digits per step so each step is one small multiply.
      std::uint32_t chunk = 0;
      std::uint32_t scale = 1;
      for (int k = 0; k < 9 && i < s.size(); ++k, ++i) {
        char c = s[i];
        if (c < '0' || c > '9')
          throw invalid_argument_error(std::string("bad digit '") + c +
                                       "' in integer literal");
        chunk = chunk * 10 + static_cast<std::uint32_t>(c - '0');
        scale *= 10;
      }
      r.mul_small(scale);
      r.add_small(chunk);
    }
    r.neg_ = neg && !r.is_zero();
    return r;
  }

  bool is_zero() const noexcept { return limbs_.empty(); }
  bool is_negative() const noexcept { return neg_; }
  bool is_even() const noexcept {
    return limbs_.empty() || (limbs_[0] & 1u) == 0;
  }
  int sign() const noexcept { return is_zero() ? 0 : (neg_ ? -1 : 1); }

  bigint abs() const {
    bigint r = *this;
    r.neg_ = false;
    return r;
  }

  friend bool operator==(const bigint& a, const bigint& b) noexcept {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }

  friend std::strong_ordering operator<=>(const bigint& a,
                                          const bigint& b) noexcept {
    if (a.neg_ != b.neg_)
      return a.neg_ ? std::strong_ordering::less
                    : std::strong_ordering::greater;
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (a.neg_) c = -c;
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  bigint operator-() const {
    bigint r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
  }

  friend bigint operator+(const bigint& a, const bigint& b) {
    bigint r;
    if (a.neg_ == b.neg_) {
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_;
    } else {
      int c = cmp_mag(a.limbs_, b.limbs_);
      if (c == 0) return bigint{};
      if (c > 0) {
        r.limbs_ = sub_mag(a.limbs_, b.limbs_);
        r.neg_ = a.neg_;
      } else {
        r.limbs_ = sub_mag(b.limbs_, a.limbs_);
        r.neg_ = b.neg_;
      }
    }
    r.normalize();
    return r;
  }

  friend bigint operator-(const bigint& a, const bigint& b) { return a + (-b); }

  friend bigint operator*(const bigint& a, const bigint& b) {
    if (a.is_zero() || b.is_zero()) return bigint{};
    bigint r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      std::uint64_t ai = a.limbs_[i];
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.neg_ = a.neg_ != b.neg_;
    r.normalize();
    return r;
  }

  // Truncated division (C semantics): quotient rounds toward zero and the
  // remainder carries the dividend's sign.
  static std::pair<bigint, bigint> divmod(const bigint& a, const bigint& b) {
    if (b.is_zero()) throw invalid_argument_error("division by zero");
    bigint q, r;
    divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
    q.neg_ = (a.neg_ != b.neg_) && !q.limbs_.empty();
    r.neg_ = a.neg_ && !r.limbs_.empty();
    q.normalize();
    r.normalize();
    return {std::move(q), std::move(r)};
  }

  friend bigint operator/(const bigint& a, const bigint& b) {
    return divmod(a, b).first;
  }
  friend bigint operator%(const bigint& a, const bigint& b) {
    return divmod(a, b).second;
  }

  bigint& operator+=(const bigint& o) { return *this = *this + o; }
  bigint& operator-=(const bigint& o) { return *this = *this - o; }
  bigint& operator*=(const bigint& o) { return *this = *this * o; }
  bigint& operator/=(const bigint& o) { return *this = *this / o; }
  bigint& operator%=(const bigint& o) { return *this = *this % o; }

  bigint operator<<(unsigned k) const {
    if (is_zero()) return bigint{};
    bigint r;
    unsigned limb_shift = k / 32, bit_shift = k % 32;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
      r.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(v);
      r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    r.neg_ = neg_;
    r.normalize();
    return r;
  }

  bigint operator>>(unsigned k) const {
    unsigned limb_shift = k / 32, bit_shift = k % 32;
    if (limb_shift >= limbs_.size()) return bigint{};
    bigint r;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
      std::uint64_t v = limbs_[i + limb_shift];
      if (bit_shift && i + limb_shift + 1 < limbs_.size())
        v |= static_cast<std::uint64_t>(limbs_[i + limb_shift + 1]) << 32;
      r.limbs_[i] = static_cast<std::uint32_t>(v >> bit_shift);
    }
    r.neg_ = neg_;
    r.normalize();
    return r;
  }

  std::size_t bit_length() const noexcept {
    if (limbs_.empty()) return 0;
    std::uint32_t top = limbs_.back();
    std::size_t bits = 32 * (limbs_.size() - 1);
    while (top) {
      ++bits;
      top >>= 1;
    }
    return bits;
  }

  unsigned count_trailing_zero_bits() const {
    if (is_zero())
      throw invalid_argument_error("trailing zeros of zero are unbounded");
    unsigned n = 0;
    std::size_t i = 0;
    while (limbs_[i] == 0) {
      n += 32;
      ++i;
    }
    std::uint32_t v = limbs_[i];
    while ((v & 1u) == 0) {
      ++n;
      v >>= 1;
    }
    return n;
  }

  static bigint gcd(bigint a, bigint b) {
    a.neg_ = false;
    b.neg_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    unsigned sa = a.count_trailing_zero_bits();
    unsigned sb = b.count_trailing_zero_bits();
    unsigned common = std::min(sa, sb);
    a = a >> sa;
    b = b >> sb;
    // Binary gcd: both odd on entry to every iteration.
    while (true) {
      if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a, b);
      b = b - a;
      if (b.is_zero()) break;
      b = b >> b.count_trailing_zero_bits();
    }
    return a << common;
  }

  static bigint lcm(const bigint& a, const bigint& b) {
    if (a.is_zero() || b.is_zero()) return bigint{};
    return (a / gcd(a, b) * b).abs();
  }

  std::optional<std::uint64_t> to_u64() const {
    if (neg_ || limbs_.size() > 2) return std::nullopt;
    std::uint64_t v = 0;
    if (limbs_.size() == 2) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    double d = 0.0;
    std::size_t n = limbs_.size();
    std::size_t take = std::min<std::size_t>(n, 3);  // 96 bits > double mantissa
    for (std::size_t i = 0; i < take; ++i)
      d = d * 4294967296.0 + limbs_[n - 1 - i];
    d = std::ldexp(d, 32 * static_cast<int>(n - take));
    return neg_ ? -d : d;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> mag = limbs_;
    std::string out;
    while (!mag.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = mag.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | mag[i];
        mag[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
        rem = cur % 1000000000ULL;
      }
      while (!mag.empty() && mag.back() == 0) mag.pop_back();
      std::string chunk = std::to_string(rem);
      if (mag.empty()) {
        out.insert(0, chunk);
      } else {
        out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
      }
    }
    return neg_ ? "-" + out : out;
  }

private:
  bool neg_ = false;
  std::vector<std::uint32_t> limbs_;  // little-endian, no leading zero limbs

  void push_u64(unsigned long long m) {
    if (m == 0) return;
    limbs_.push_back(static_cast<std::uint32_t>(m));
    if (m >> 32) limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
  }

  void normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
  }

  void mul_small(std::uint32_t f) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  void add_small(std::uint32_t v) {
    std::uint64_t carry = v;
    for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
      std::uint64_t cur = limbs_[i] + carry;
      limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<std::uint32_t> r(hi.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
      std::uint64_t cur = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
      r[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    r[hi.size()] = static_cast<std::uint32_t>(carry);
    return r;
  }

  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(a[i]) -
                         (i < b.size() ? b[i] : 0) - borrow;
      borrow = cur < 0;
      if (cur < 0) cur += (1LL << 32);
      r[i] = static_cast<std::uint32_t>(cur);
    }
    return r;
  }

  static void divmod_mag(const std::vector<std::uint32_t>& u,
                         const std::vector<std::uint32_t>& v,
                         std::vector<std::uint32_t>& q,
                         std::vector<std::uint32_t>& r) {
    q.clear();
    r.clear();
    if (cmp_mag(u, v) < 0) {
      r = u;
      return;
    }
    if (v.size() == 1) {
      std::uint64_t d = v[0];
      q.assign(u.size(), 0);
      std::uint64_t rem = 0;
      for (std::size_t i = u.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | u[i];
        q[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
      }
      while (!q.empty() && q.back() == 0) q.pop_back();
      if (rem) r.push_back(static_cast<std::uint32_t>(rem));
      return;
    }
    // Bitwise restoring division; plenty fast at library magnitudes.
    std::size_t ubits = 32 * (u.size() - 1);
    for (std::uint32_t top = u.back(); top; top >>= 1) ++ubits;
    q.assign(u.size(), 0);
    r.reserve(v.size() + 1);
    for (std::size_t i = ubits; i-- > 0;) {
      // r = (r << 1) | bit_i(u)
      std::uint32_t carry = (u[i / 32] >> (i % 32)) & 1u;
      for (auto& limb : r) {
        std::uint32_t next = limb >> 31;
        limb = (limb << 1) | carry;
        carry = next;
      }
      if (carry) r.push_back(carry);
      if (cmp_mag(r, v) >= 0) {
        r = sub_mag(r, v);
        while (!r.empty() && r.back() == 0) r.pop_back();
        q[i / 32] |= 1u << (i % 32);
      }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
  }
};

}  // namespace bfp
