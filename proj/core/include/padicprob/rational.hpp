#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace padicprob {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class; every constructor canonicalizes,
/// so two equal values always have identical numerator and denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(unsigned long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(unsigned value) : value_(value) {}       // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : value_(value) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  /// Parses "[+-]digits[/digits]". Throws Error(Parse) on malformed input or
  /// a zero denominator.
  static Rational parse(std::string_view text);

  Integer num() const { return value_.get_num(); }
  Integer den() const { return value_.get_den(); }
  const mpq_class& mpq() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// "n" for integers, "n/d" otherwise.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& base, long exponent);
Integer ipow(const Integer& base, unsigned long exponent);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace padicprob
