#pragma once

// Exact rational over bigint. Always reduced, denominator > 0, zero is 0/1.
// Serializes as "p/q" (the denominator is kept even when it is 1 so the
// wire form stays schema-stable).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "bfp/bigint.hpp"
#include "bfp/errors.hpp"

namespace bfp {

class rational {
public:
  rational() : num_(0), den_(1) {}
  rational(long long v) : num_(v), den_(1) {}  // NOLINT
  rational(int v) : num_(v), den_(1) {}        // NOLINT

  rational(bigint num, bigint den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  static rational parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
      return rational(bigint::from_string(s), 1);
    return rational(bigint::from_string(s.substr(0, slash)),
                    bigint::from_string(s.substr(slash + 1)));
  }

  const bigint& num() const noexcept { return num_; }
  const bigint& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_negative() const noexcept { return num_.is_negative(); }
  bool is_integer() const noexcept { return den_ == bigint(1); }

  rational operator-() const {
    rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend rational operator+(const rational& a, const rational& b) {
    return rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend rational operator-(const rational& a, const rational& b) {
    return rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend rational operator*(const rational& a, const rational& b) {
    return rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend rational operator/(const rational& a, const rational& b) {
    if (b.is_zero()) throw invalid_argument_error("rational division by zero");
    return rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  rational& operator+=(const rational& o) { return *this = *this + o; }
  rational& operator-=(const rational& o) { return *this = *this - o; }
  rational& operator*=(const rational& o) { return *this = *this * o; }
  rational& operator/=(const rational& o) { return *this = *this / o; }

  friend bool operator==(const rational& a, const rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const rational& a,
                                          const rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  rational reciprocal() const {
    if (is_zero()) throw invalid_argument_error("reciprocal of zero");
    return rational(den_, num_);
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    bigint n = num_, d = den_;
    // Keep at least 64 significant bits on both sides before dividing so the
    // quotient never degenerates to inf/inf.
    std::size_t nb = n.bit_length(), db = d.bit_length();
    std::size_t floor_bits = std::min(nb, db);
    if (floor_bits > 512) {
      unsigned shift = static_cast<unsigned>(floor_bits - 64);
      n = n >> shift;
      d = d >> shift;
    }
    return n.to_double() / d.to_double();
  }

  std::string to_string() const {
    return num_.to_string() + "/" + den_.to_string();
  }

private:
  bigint num_;
  bigint den_;

  void reduce() {
    if (den_.is_zero()) throw invalid_argument_error("zero denominator");
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    bigint g = bigint::gcd(num_, den_);
    if (g > bigint(1)) {
      num_ /= g;
      den_ /= g;
    }
  }
};

}  // namespace bfp
