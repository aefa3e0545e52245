#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "padicprob/errors.hpp"
#include "padicprob/padic_approx.hpp"
#include "padicprob/rational.hpp"

namespace padicprob {

// Coefficient-ring hooks. A coefficient type needs +, -, * and these.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_exact_zero(const Rational& x) { return x.is_zero(); }
inline bool is_exact_one(const Rational& x) { return x == Rational(1); }
inline Rational scale_by_integer(const Rational& x, const Integer& k) { return x * Rational(k); }
inline Rational divide_by_integer(const Rational& x, const Integer& k) { return x / Rational(k); }

inline PadicApprox zero_like(const PadicApprox& x) { return PadicApprox::zero(x.prime()); }
inline PadicApprox one_like(const PadicApprox& x) {
  return PadicApprox::from_rational(Rational(1), x.prime(), kDefaultPrecision);
}
inline bool is_exact_zero(const PadicApprox& x) { return x.is_exact_zero(); }
inline bool is_exact_one(const PadicApprox& x) { return x.agrees_with(Rational(1)) && !x.is_zero(); }
inline PadicApprox scale_by_integer(const PadicApprox& x, const Integer& k) { return x.times_integer(k); }
inline PadicApprox divide_by_integer(const PadicApprox& x, const Integer& k) { return x.divided_by_integer(k); }

/// Power series c_0 + c_1 z + ... + c_D z^D truncated at an explicit order D.
///
/// Binary operations require equal orders and throw Error(Order) otherwise.
template <class T>
class Series {
 public:
  explicit Series(std::vector<T> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) fail(ErrorKind::Order, "series needs at least the constant coefficient");
  }

  static Series constant(const T& value, std::size_t order) {
    std::vector<T> c(order + 1, zero_like(value));
    c[0] = value;
    return Series(std::move(c));
  }
  /// The series z (order >= 1) over the ring of `like`.
  static Series variable(const T& like, std::size_t order) {
    std::vector<T> c(order + 1, zero_like(like));
    if (order >= 1) c[1] = one_like(like);
    return Series(std::move(c));
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const T& operator[](std::size_t k) const { return c_.at(k); }
  const std::vector<T>& coefficients() const noexcept { return c_; }

  Series truncated(std::size_t order) const {
    if (order > this->order()) fail(ErrorKind::Order, "cannot extend a truncated series");
    return Series(std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
  }

  Series operator-() const {
    std::vector<T> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(zero_like(x) - x);
    return Series(std::move(c));
  }

  friend Series operator+(const Series& a, const Series& b) {
    check_orders(a, b);
    std::vector<T> c;
    c.reserve(a.c_.size());
    for (std::size_t k = 0; k < a.c_.size(); ++k) c.push_back(a.c_[k] + b.c_[k]);
    return Series(std::move(c));
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    check_orders(a, b);
    const std::size_t n = a.c_.size();
    std::vector<T> c(n, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < n; ++i) {
      if (is_exact_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (is_exact_zero(b.c_[j])) continue;
        c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return Series(std::move(c));
  }

  friend Series operator*(const T& s, const Series& a) {
    std::vector<T> c;
    c.reserve(a.c_.size());
    for (const auto& x : a.c_) c.push_back(s * x);
    return Series(std::move(c));
  }

  friend bool operator==(const Series& a, const Series& b) = default;

 private:
  static void check_orders(const Series& a, const Series& b) {
    if (a.order() != b.order()) {
      fail(ErrorKind::Order, "truncation orders differ: " + std::to_string(a.order()) + " vs " + std::to_string(b.order()));
    }
  }

  std::vector<T> c_;
};

using FormalSeries = Series<Rational>;
using PadicSeries = Series<PadicApprox>;

/// outer(inner(z)); the inner series must have a zero constant term.
template <class T>
Series<T> compose(const Series<T>& outer, const Series<T>& inner) {
  if (outer.order() != inner.order()) fail(ErrorKind::Order, "compose needs equal truncation orders");
  if (!is_exact_zero(inner[0])) fail(ErrorKind::Domain, "compose needs an inner series with zero constant term");
  // Horner: c_D, then result * inner + c_j.
  Series<T> result = Series<T>::constant(outer[outer.order()], outer.order());
  for (std::size_t j = outer.order(); j-- > 0;) {
    result = result * inner + Series<T>::constant(outer[j], outer.order());
  }
  return result;
}

/// Multiplicative inverse; the constant term must be invertible.
template <class T>
Series<T> inverse(const Series<T>& s) {
  if (is_exact_zero(s[0])) fail(ErrorKind::Domain, "series with zero constant term is not invertible");
  const T inv0 = one_like(s[0]) / s[0];
  std::vector<T> b{inv0};
  for (std::size_t k = 1; k <= s.order(); ++k) {
    T acc = zero_like(s[0]);
    for (std::size_t i = 1; i <= k; ++i) acc = acc + s[i] * b[k - i];
    b.push_back(zero_like(s[0]) - acc * inv0);
  }
  return Series<T>(std::move(b));
}

/// s^n for any integer n (negative exponents go through inverse()).
template <class T>
Series<T> integer_power(const Series<T>& s, std::int64_t n) {
  if (n < 0) return integer_power(inverse(s), -n);
  Series<T> result = Series<T>::constant(one_like(s[0]), s.order());
  Series<T> base = s;
  auto e = static_cast<std::uint64_t>(n);
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

/// Coefficientwise Hensel expansion of a rational series.
PadicSeries to_padic(const FormalSeries& s, Prime p, std::int64_t relative_precision = kDefaultPrecision);

/// s^a = sum_k C(a, k) (s - 1)^k for a in Z_p; s must have constant term 1.
PadicSeries padic_power(const PadicSeries& s, const PadicApprox& a);
PadicSeries padic_power(const FormalSeries& s, const PadicApprox& a);

namespace series {

/// e^z
FormalSeries exp(std::size_t order);
/// e^z - 1
FormalSeries expm1(std::size_t order);
FormalSeries cosh(std::size_t order);
FormalSeries sinh(std::size_t order);
/// log(1 + z)
FormalSeries log1p(std::size_t order);
/// e^{k z}
FormalSeries exp_scaled(const Rational& k, std::size_t order);

}  // namespace series

}  // namespace padicprob
