#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elimvote {

/// Exact rational number on 64-bit components. Always kept normalized:
/// den > 0 and gcd(|num|, den) == 1. Comparisons cross-multiply in 128
/// bits so they cannot overflow; arithmetic whose normalized result
/// leaves the 64-bit range throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long value) : num_(value), den_(1) {}

  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational operator+(const Rational& o) const {
    __int128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    __int128 d = i128(den_) * o.den_;
    return from_i128(n, d);
  }
  Rational operator-(const Rational& o) const { return *this + (-o); }

  Rational operator*(const Rational& o) const {
    return from_i128(i128(num_) * o.num_, i128(den_) * o.den_);
  }

  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("rational: division by zero");
    return from_i128(i128(num_) * o.den_, i128(den_) * o.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  std::strong_ordering operator<=>(const Rational& o) const {
    __int128 lhs = i128(num_) * o.den_;
    __int128 rhs = i128(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Parses "p" or "p/q" with optional sign on p.
  static Rational from_string(std::string_view text);

  /// "p" when integral, "p/q" otherwise.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  static Rational from_i128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_;
  long long den_;
};

inline Rational Rational::from_string(std::string_view text) {
  auto slash = text.find('/');
  auto parse_ll = [](std::string_view s) -> long long {
    if (s.empty()) throw std::invalid_argument("rational: empty component");
    size_t pos = 0;
    long long v = std::stoll(std::string(s), &pos);
    if (pos != s.size())
      throw std::invalid_argument("rational: trailing characters in '" +
                                  std::string(s) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return Rational(parse_ll(text));
  return Rational(parse_ll(text.substr(0, slash)),
                  parse_ll(text.substr(slash + 1)));
}

}  // namespace elimvote
