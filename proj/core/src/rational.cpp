#include "padicprob/rational.hpp"

#include <cctype>
#include <ostream>

#include "padicprob/errors.hpp"

namespace padicprob {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) : value_(num, den) {
  if (den == 0) fail(ErrorKind::Domain, "rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num_part = s;
  std::string_view den_part = "1";
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num_part = s.substr(0, slash);
    den_part = s.substr(slash + 1);
  }
  if (!all_digits(num_part) || !all_digits(den_part)) {
    fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  }
  Integer num(std::string(num_part), 10);
  Integer den(std::string(den_part), 10);
  if (den == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorKind::Domain, "division by zero");
  value_ /= o.value_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) fail(ErrorKind::Domain, "zero raised to a negative power");
    return Rational(ipow(base.den(), static_cast<unsigned long>(-exponent)),
                    ipow(base.num(), static_cast<unsigned long>(-exponent)));
  }
  return Rational(ipow(base.num(), static_cast<unsigned long>(exponent)),
                  ipow(base.den(), static_cast<unsigned long>(exponent)));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace padicprob
