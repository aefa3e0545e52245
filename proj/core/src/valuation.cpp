#include "padicprob/valuation.hpp"

#include <ostream>

#include "padicprob/errors.hpp"

namespace padicprob {

std::string Valuation::str() const { return is_infinite() ? "inf" : std::to_string(value_); }

std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.str(); }

Rational PadicAbs::value() const {
  if (is_zero()) return Rational(0);
  return pow(Rational(Integer(prime_.value())), exponent_);
}

PadicAbs operator*(PadicAbs a, PadicAbs b) {
  if (a.prime_ != b.prime_) fail(ErrorKind::InvalidArgument, "multiplying absolute values for different primes");
  if (a.is_zero() || b.is_zero()) return PadicAbs::zero(a.prime_);
  return PadicAbs(a.prime_, a.exponent_ + b.exponent_);
}

Valuation vp(const Integer& n, Prime p) {
  if (n == 0) return Valuation::infinity();
  Integer rest;
  const Integer prime(p.value());
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Valuation vp(const Rational& x, Prime p) {
  if (x.is_zero()) return Valuation::infinity();
  return vp(x.num(), p).value() - vp(x.den(), p).value();
}

PadicAbs abs_p(const Rational& x, Prime p) { return PadicAbs::from_valuation(p, vp(x, p)); }

PadicAbs dist_p(const Rational& x, const Rational& y, Prime p) { return abs_p(x - y, p); }

std::uint64_t digit_sum(std::uint64_t n, Prime p) {
  std::uint64_t s = 0;
  while (n > 0) {
    s += n % p.value();
    n /= p.value();
  }
  return s;
}

std::int64_t legendre_vp_factorial(std::uint64_t n, Prime p) {
  return static_cast<std::int64_t>((n - digit_sum(n, p)) / (p.value() - 1));
}

bool Ball::contains(const Rational& x) const { return vp(x - center, prime) >= Valuation(radius_exponent); }

Rational Ball::radius() const { return pow(Rational(Integer(prime.value())), -radius_exponent); }

bool Sphere::contains(const Rational& x) const { return vp(x - center, prime) == Valuation(radius_exponent); }

}  // namespace padicprob
