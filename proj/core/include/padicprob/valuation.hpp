#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"

namespace padicprob {

/// A p-adic valuation: an integer, or +infinity for zero.
class Valuation {
 public:
  constexpr Valuation() noexcept = default;
  constexpr Valuation(std::int64_t v) noexcept : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Valuation infinity() noexcept {
    Valuation v;
    v.value_ = kInfinity;
    return v;
  }

  constexpr bool is_infinite() const noexcept { return value_ == kInfinity; }
  /// Finite value; meaningless when is_infinite().
  constexpr std::int64_t value() const noexcept { return value_; }

  friend constexpr bool operator==(Valuation a, Valuation b) noexcept = default;
  friend constexpr auto operator<=>(Valuation a, Valuation b) noexcept { return a.value_ <=> b.value_; }

  /// "inf" or the decimal integer.
  std::string str() const;

 private:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();
  std::int64_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, Valuation v);

/// |x|_p = p^exponent. A negative-infinite exponent encodes |0|_p = 0.
///
/// Ordering follows the real value of the absolute value, so comparisons
/// between values for different primes are meaningless.
class PadicAbs {
 public:
  PadicAbs(Prime p, std::int64_t exponent) : prime_(p), exponent_(exponent) {}
  static PadicAbs zero(Prime p) { return PadicAbs(p, kNegInfinity); }
  static PadicAbs one(Prime p) { return PadicAbs(p, 0); }
  static PadicAbs from_valuation(Prime p, Valuation v) {
    return v.is_infinite() ? zero(p) : PadicAbs(p, -v.value());
  }

  Prime prime() const noexcept { return prime_; }
  bool is_zero() const noexcept { return exponent_ == kNegInfinity; }
  std::int64_t exponent() const noexcept { return exponent_; }
  Valuation valuation() const noexcept {
    return is_zero() ? Valuation::infinity() : Valuation(-exponent_);
  }

  /// p^exponent as an exact rational (0 for the zero value).
  Rational value() const;
  /// "0", or p^e rendered exactly, e.g. "1/3", "16".
  std::string str() const { return value().str(); }

  friend PadicAbs operator*(PadicAbs a, PadicAbs b);
  friend bool operator==(PadicAbs a, PadicAbs b) noexcept {
    return a.prime_ == b.prime_ && a.exponent_ == b.exponent_;
  }
  friend auto operator<=>(PadicAbs a, PadicAbs b) noexcept { return a.exponent_ <=> b.exponent_; }

 private:
  static constexpr std::int64_t kNegInfinity = std::numeric_limits<std::int64_t>::min();
  Prime prime_;
  std::int64_t exponent_;
};

/// Exponent of p in a nonzero integer; infinity for 0.
Valuation vp(const Integer& n, Prime p);
/// v_p(num) - v_p(den); infinity for 0.
Valuation vp(const Rational& x, Prime p);

PadicAbs abs_p(const Rational& x, Prime p);
PadicAbs dist_p(const Rational& x, const Rational& y, Prime p);

/// v_p(n!) by Legendre's formula (n - s_p(n)) / (p - 1).
std::int64_t legendre_vp_factorial(std::uint64_t n, Prime p);
/// Sum of the base-p digits of n.
std::uint64_t digit_sum(std::uint64_t n, Prime p);

/// Closed ball U_{p^{-l}}(center) = { x : |x - center|_p <= p^{-l} }.
struct Ball {
  Rational center;
  std::int64_t radius_exponent;  // l: the radius is p^{-l}
  Prime prime;

  bool contains(const Rational& x) const;
  Rational radius() const;
};

/// Sphere S_{p^{-l}}(center) = { x : |x - center|_p = p^{-l} }.
struct Sphere {
  Rational center;
  std::int64_t radius_exponent;
  Prime prime;

  bool contains(const Rational& x) const;
};

inline bool in_ball(const Rational& x, const Ball& b) { return b.contains(x); }
inline bool in_sphere(const Rational& x, const Sphere& s) { return s.contains(x); }

}  // namespace padicprob
