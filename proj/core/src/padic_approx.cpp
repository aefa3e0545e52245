#include "padicprob/padic_approx.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "padicprob/errors.hpp"

namespace padicprob {

namespace {

Integer prime_power(Prime p, std::int64_t k) {
  return ipow(Integer(p.value()), static_cast<unsigned long>(std::max<std::int64_t>(k, 0)));
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Lower bound on the valuation: the exact value, or the absolute precision
// for zeros. Infinity for the exact zero.
std::int64_t low_valuation(const PadicApprox& x) { return x.valuation().value(); }

}  // namespace

Integer inverse_mod(const Integer& a, const Integer& modulus) {
  Integer out;
  if (modulus == 1) return Integer(0);
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    fail(ErrorKind::NotInvertible, a.get_str() + " is not invertible modulo " + modulus.get_str());
  }
  return out;
}

PadicApprox PadicApprox::zero(Prime p) { return PadicApprox(p, Kind::ExactZero); }

PadicApprox PadicApprox::indistinguishable_zero(Prime p, std::int64_t absolute_precision) {
  PadicApprox out(p, Kind::IndistinguishableZero);
  out.valuation_ = absolute_precision;
  return out;
}

PadicApprox PadicApprox::from_scaled(Prime p, std::int64_t base_valuation, Integer s,
                                     std::int64_t absolute_precision) {
  const std::int64_t room = absolute_precision - base_valuation;
  if (room <= 0) return indistinguishable_zero(p, absolute_precision);
  s = mod_floor(s, prime_power(p, room));
  if (s == 0) return indistinguishable_zero(p, absolute_precision);
  Integer unit;
  const Integer prime(p.value());
  const auto shift = static_cast<std::int64_t>(mpz_remove(unit.get_mpz_t(), s.get_mpz_t(), prime.get_mpz_t()));
  PadicApprox out(p, Kind::Nonzero);
  out.valuation_ = base_valuation + shift;
  out.precision_ = absolute_precision - out.valuation_;
  out.unit_ = mod_floor(unit, prime_power(p, out.precision_));
  return out;
}

PadicApprox PadicApprox::from_rational(const Rational& x, Prime p, std::int64_t relative_precision) {
  if (relative_precision < 1) fail(ErrorKind::InvalidArgument, "precision must be at least 1");
  if (x.is_zero()) return zero(p);
  const std::int64_t v = vp(x, p).value();
  return from_rational_abs(x, p, v + relative_precision);
}

PadicApprox PadicApprox::from_rational_abs(const Rational& x, Prime p, std::int64_t absolute_precision) {
  if (x.is_zero()) return indistinguishable_zero(p, absolute_precision);
  const std::int64_t v = vp(x, p).value();
  if (v >= absolute_precision) return indistinguishable_zero(p, absolute_precision);
  const std::int64_t n = absolute_precision - v;
  const Integer prime(p.value());
  Integer num = x.num();
  Integer den = x.den();
  Integer scratch;
  mpz_remove(scratch.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t());
  num = scratch;
  mpz_remove(scratch.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t());
  den = scratch;
  const Integer modulus = prime_power(p, n);
  PadicApprox out(p, Kind::Nonzero);
  out.valuation_ = v;
  out.precision_ = n;
  out.unit_ = mod_floor(num * inverse_mod(den, modulus), modulus);
  return out;
}

PadicApprox PadicApprox::from_digits(Prime p, std::int64_t valuation, const std::vector<std::uint64_t>& digits) {
  if (digits.empty()) return indistinguishable_zero(p, valuation);
  if (digits.front() == 0) fail(ErrorKind::DigitRange, "leading p-adic digit must be nonzero");
  Integer unit = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it >= p.value()) fail(ErrorKind::DigitRange, "digit " + std::to_string(*it) + " out of range for base " + std::to_string(p.value()));
    unit = unit * Integer(p.value()) + Integer(*it);
  }
  PadicApprox out(p, Kind::Nonzero);
  out.valuation_ = valuation;
  out.precision_ = static_cast<std::int64_t>(digits.size());
  out.unit_ = unit;
  return out;
}

Valuation PadicApprox::valuation() const noexcept {
  if (kind_ == Kind::ExactZero) return Valuation::infinity();
  return valuation_;
}

Valuation PadicApprox::absolute_precision() const noexcept {
  switch (kind_) {
    case Kind::ExactZero: return Valuation::infinity();
    case Kind::IndistinguishableZero: return valuation_;
    case Kind::Nonzero: break;
  }
  return valuation_ + precision_;
}

std::vector<std::uint64_t> PadicApprox::digits() const {
  std::vector<std::uint64_t> out;
  if (kind_ != Kind::Nonzero) return out;
  Integer rest = unit_;
  const Integer prime(prime_.value());
  out.reserve(static_cast<std::size_t>(precision_));
  for (std::int64_t i = 0; i < precision_; ++i) {
    Integer d;
    mpz_fdiv_qr(rest.get_mpz_t(), d.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
    out.push_back(d.get_ui());
  }
  return out;
}

Rational PadicApprox::to_rational() const {
  if (kind_ != Kind::Nonzero) return Rational(0);
  return Rational(unit_) * pow(Rational(Integer(prime_.value())), valuation_);
}

bool PadicApprox::agrees_with(const PadicApprox& other) const { return (*this - other).is_zero(); }

bool PadicApprox::agrees_with(const Rational& value) const {
  if (kind_ == Kind::ExactZero) return value.is_zero();
  return vp(value - to_rational(), prime_) >= absolute_precision();
}

PadicApprox PadicApprox::operator-() const {
  if (kind_ != Kind::Nonzero) return *this;
  PadicApprox out = *this;
  out.unit_ = mod_floor(-unit_, prime_power(prime_, precision_));
  return out;
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
  if (a.prime_ != b.prime_) fail(ErrorKind::InvalidArgument, "adding p-adic numbers for different primes");
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const std::int64_t abs_prec = std::min(a.absolute_precision().value(), b.absolute_precision().value());
  const std::int64_t base = std::min(low_valuation(a), low_valuation(b));
  if (abs_prec <= base) return PadicApprox::indistinguishable_zero(a.prime_, abs_prec);
  Integer s = 0;
  if (a.kind_ == PadicApprox::Kind::Nonzero) s += a.unit_ * prime_power(a.prime_, a.valuation_ - base);
  if (b.kind_ == PadicApprox::Kind::Nonzero) s += b.unit_ * prime_power(b.prime_, b.valuation_ - base);
  return PadicApprox::from_scaled(a.prime_, base, s, abs_prec);
}

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
  if (a.prime_ != b.prime_) fail(ErrorKind::InvalidArgument, "multiplying p-adic numbers for different primes");
  if (a.is_exact_zero() || b.is_exact_zero()) return PadicApprox::zero(a.prime_);
  if (a.kind_ == PadicApprox::Kind::IndistinguishableZero || b.kind_ == PadicApprox::Kind::IndistinguishableZero) {
    return PadicApprox::indistinguishable_zero(a.prime_, low_valuation(a) + low_valuation(b));
  }
  PadicApprox out(a.prime_, PadicApprox::Kind::Nonzero);
  out.valuation_ = a.valuation_ + b.valuation_;
  out.precision_ = std::min(a.precision_, b.precision_);
  out.unit_ = mod_floor(a.unit_ * b.unit_, prime_power(a.prime_, out.precision_));
  return out;
}

PadicApprox operator/(const PadicApprox& a, const PadicApprox& b) {
  if (a.prime_ != b.prime_) fail(ErrorKind::InvalidArgument, "dividing p-adic numbers for different primes");
  if (b.is_zero()) fail(ErrorKind::Domain, "division by a p-adic zero");
  if (a.is_exact_zero()) return a;
  if (a.kind_ == PadicApprox::Kind::IndistinguishableZero) {
    return PadicApprox::indistinguishable_zero(a.prime_, a.valuation_ - b.valuation_);
  }
  PadicApprox out(a.prime_, PadicApprox::Kind::Nonzero);
  out.valuation_ = a.valuation_ - b.valuation_;
  out.precision_ = std::min(a.precision_, b.precision_);
  const Integer modulus = prime_power(a.prime_, out.precision_);
  out.unit_ = mod_floor(a.unit_ * inverse_mod(b.unit_, modulus), modulus);
  return out;
}

PadicApprox PadicApprox::times_integer(const Integer& k) const {
  if (k == 0) return zero(prime_);
  if (kind_ == Kind::ExactZero) return *this;
  const std::int64_t shift = vp(k, prime_).value();
  if (kind_ == Kind::IndistinguishableZero) return indistinguishable_zero(prime_, valuation_ + shift);
  Integer rest;
  const Integer prime(prime_.value());
  mpz_remove(rest.get_mpz_t(), k.get_mpz_t(), prime.get_mpz_t());
  PadicApprox out = *this;
  out.valuation_ += shift;
  out.unit_ = mod_floor(unit_ * rest, prime_power(prime_, precision_));
  return out;
}

PadicApprox PadicApprox::divided_by_integer(const Integer& k) const {
  if (k == 0) fail(ErrorKind::Domain, "division by zero");
  if (kind_ == Kind::ExactZero) return *this;
  const std::int64_t shift = vp(k, prime_).value();
  if (kind_ == Kind::IndistinguishableZero) return indistinguishable_zero(prime_, valuation_ - shift);
  Integer rest;
  const Integer prime(prime_.value());
  mpz_remove(rest.get_mpz_t(), k.get_mpz_t(), prime.get_mpz_t());
  PadicApprox out = *this;
  out.valuation_ -= shift;
  const Integer modulus = prime_power(prime_, precision_);
  out.unit_ = mod_floor(unit_ * inverse_mod(rest, modulus), modulus);
  return out;
}

std::string PadicApprox::str() const {
  std::ostringstream os;
  if (kind_ == Kind::ExactZero) {
    os << "0 base " << prime_.value();
    return os.str();
  }
  os << "p^" << valuation_ << " * (";
  const auto ds = digits();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i > 0) os << ',';
    os << ds[i];
  }
  os << ") base " << prime_.value() << " prec " << precision();
  return os.str();
}

PadicApprox PadicApprox::parse(std::string_view text) {
  const std::string s(text);
  std::istringstream in(s);
  auto bad = [&]() -> PadicApprox { fail(ErrorKind::Parse, "malformed p-adic value '" + s + "'"); };
  std::string head;
  in >> head;
  if (head == "0") {
    std::string word;
    std::uint64_t p = 0;
    if (!(in >> word >> p) || word != "base") return bad();
    return zero(Prime(p));
  }
  if (head.rfind("p^", 0) != 0) return bad();
  std::int64_t v = 0;
  try {
    v = std::stoll(head.substr(2));
  } catch (const std::exception&) {
    return bad();
  }
  std::string star;
  if (!(in >> star) || star != "*") return bad();
  std::string rest;
  std::getline(in, rest);
  const auto open = rest.find('(');
  const auto close = rest.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open) return bad();
  std::vector<std::uint64_t> digits;
  std::string body = rest.substr(open + 1, close - open - 1);
  std::istringstream digit_stream(body);
  std::string token;
  while (std::getline(digit_stream, token, ',')) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) return bad();
    digits.push_back(std::stoull(token));
  }
  std::istringstream tail(rest.substr(close + 1));
  std::string base_word, prec_word;
  std::uint64_t p = 0;
  std::int64_t n = -1;
  if (!(tail >> base_word >> p >> prec_word >> n) || base_word != "base" || prec_word != "prec") return bad();
  if (n != static_cast<std::int64_t>(digits.size())) return bad();
  return from_digits(Prime(p), v, digits);
}

PadicApprox padic_binomial_C(const PadicApprox& a, std::uint64_t m) {
  if (a.valuation() < Valuation(0)) fail(ErrorKind::Domain, "C(a, m) needs a in Z_p");
  const Prime p = a.prime();
  if (a.is_exact_zero()) return m == 0 ? PadicApprox::from_rational(Rational(1), p, kDefaultPrecision) : a;
  const std::int64_t abs_prec = a.absolute_precision().value();
  PadicApprox numerator = PadicApprox::from_rational(Rational(1), p, std::max<std::int64_t>(abs_prec, 1));
  for (std::uint64_t j = 0; j < m; ++j) {
    numerator = numerator * (a - PadicApprox::from_rational_abs(Rational(Integer(j)), p, abs_prec));
  }
  Integer factorial;
  mpz_fac_ui(factorial.get_mpz_t(), m);
  PadicApprox result = numerator.divided_by_integer(factorial);
  const bool exhausted = result.is_zero() ? result.absolute_precision() < Valuation(1) : result.precision() < 1;
  if (exhausted) {
    fail(ErrorKind::PrecisionExhausted, "C(a, " + std::to_string(m) + ") lost all digits dividing by m! (v_p(m!) = " +
                                            std::to_string(legendre_vp_factorial(m, p)) + ")");
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const PadicApprox& x) { return os << x.str(); }

}  // namespace padicprob
