#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"
#include "padicprob/valuation.hpp"

namespace padicprob {

/// Default number of p-adic digits carried by approximations.
inline constexpr std::int64_t kDefaultPrecision = 32;

/// A p-adic number known to finite precision:
///   p^valuation * (d_0 + d_1 p + ... + d_{N-1} p^{N-1}) + O(p^{valuation + N}).
///
/// Three shapes exist:
///  * nonzero: d_0 != 0, relative precision N >= 1;
///  * exactly zero (a flag, no precision attached);
///  * indistinguishable from zero: every known digit vanished, only the
///    absolute precision A survives (the value is O(p^A)).
///
/// Arithmetic tracks worst-case precision: sums keep the smaller absolute
/// precision, products and quotients the smaller relative precision.
class PadicApprox {
 public:
  /// Exact zero.
  static PadicApprox zero(Prime p);
  /// O(p^absolute_precision).
  static PadicApprox indistinguishable_zero(Prime p, std::int64_t absolute_precision);
  /// Hensel expansion of x with N relative digits. Denominators divisible by
  /// p move into a negative valuation. x = 0 gives the exact zero.
  static PadicApprox from_rational(const Rational& x, Prime p, std::int64_t relative_precision);
  /// Expansion of x known modulo p^absolute_precision.
  static PadicApprox from_rational_abs(const Rational& x, Prime p, std::int64_t absolute_precision);
  /// Throws Error(DigitRange) for digits >= p or a zero leading digit.
  static PadicApprox from_digits(Prime p, std::int64_t valuation, const std::vector<std::uint64_t>& digits);
  /// Inverse of str().
  static PadicApprox parse(std::string_view text);

  Prime prime() const noexcept { return prime_; }
  bool is_exact_zero() const noexcept { return kind_ == Kind::ExactZero; }
  /// True for the exact zero and for values indistinguishable from zero.
  bool is_zero() const noexcept { return kind_ != Kind::Nonzero; }

  /// Exact valuation for nonzero values, infinity for the exact zero, and
  /// the absolute precision (a lower bound) for an indistinguishable zero.
  Valuation valuation() const noexcept;
  /// Number of known digits past the leading one (0 for any zero).
  std::int64_t precision() const noexcept { return kind_ == Kind::Nonzero ? precision_ : 0; }
  /// valuation + precision; infinity for the exact zero.
  Valuation absolute_precision() const noexcept;

  /// Unit part in [0, p^N).
  const Integer& unit() const noexcept { return unit_; }
  std::vector<std::uint64_t> digits() const;
  /// Canonical rational representative p^v * unit.
  Rational to_rational() const;
  /// |x|_p; for an indistinguishable zero this is an upper bound.
  PadicAbs abs() const { return PadicAbs::from_valuation(prime_, valuation()); }

  /// True when x - y vanishes at the precision both sides share.
  bool agrees_with(const PadicApprox& other) const;
  /// True when x agrees with the rational at x's own precision.
  bool agrees_with(const Rational& value) const;

  PadicApprox operator-() const;
  friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) { return a + (-b); }
  friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
  /// Throws Error(Domain) when b is (indistinguishable from) zero.
  friend PadicApprox operator/(const PadicApprox& a, const PadicApprox& b);

  /// Exact integer factors: precision relative to the value is preserved.
  PadicApprox times_integer(const Integer& k) const;
  PadicApprox divided_by_integer(const Integer& k) const;

  /// "p^<v> * (d0,d1,...) base <p> prec <N>"; the exact zero is "0 base <p>".
  std::string str() const;

  friend bool operator==(const PadicApprox& a, const PadicApprox& b) = default;

 private:
  enum class Kind { Nonzero, ExactZero, IndistinguishableZero };

  PadicApprox(Prime p, Kind kind) : prime_(p), kind_(kind) {}
  /// Value p^base_valuation * s known modulo p^absolute_precision.
  static PadicApprox from_scaled(Prime p, std::int64_t base_valuation, Integer s, std::int64_t absolute_precision);

  Prime prime_;
  Kind kind_ = Kind::ExactZero;
  std::int64_t valuation_ = 0;  // absolute precision for an indistinguishable zero
  std::int64_t precision_ = 0;
  Integer unit_ = 0;
};

/// to_approx: Hensel digit expansion with N relative digits.
inline PadicApprox to_approx(const Rational& x, Prime p, std::int64_t relative_precision = kDefaultPrecision) {
  return PadicApprox::from_rational(x, p, relative_precision);
}

/// C(a, m) = a (a-1) ... (a-m+1) / m! for a in Z_p.
///
/// The division by m! costs v_p(m!) digits (Legendre); throws
/// Error(PrecisionExhausted) when fewer than one digit survives and
/// Error(Domain) when v_p(a) < 0.
PadicApprox padic_binomial_C(const PadicApprox& a, std::uint64_t m);

/// Modular inverse of a unit modulo `modulus`.
Integer inverse_mod(const Integer& a, const Integer& modulus);

std::ostream& operator<<(std::ostream& os, const PadicApprox& x);

}  // namespace padicprob
