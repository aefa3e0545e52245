#include "padicprob/formal_series.hpp"

namespace padicprob {

PadicSeries to_padic(const FormalSeries& s, Prime p, std::int64_t relative_precision) {
  std::vector<PadicApprox> c;
  c.reserve(s.order() + 1);
  for (const auto& x : s.coefficients()) c.push_back(PadicApprox::from_rational(x, p, relative_precision));
  return PadicSeries(std::move(c));
}

PadicSeries padic_power(const PadicSeries& s, const PadicApprox& a) {
  if (!is_exact_one(s[0])) fail(ErrorKind::Domain, "p-adic power needs a series with constant term 1");
  std::vector<PadicApprox> shifted = s.coefficients();
  shifted[0] = PadicApprox::zero(a.prime());
  const PadicSeries t(std::move(shifted));
  PadicSeries result = PadicSeries::constant(PadicApprox::from_rational(Rational(1), a.prime(), kDefaultPrecision), s.order());
  PadicSeries t_power = result;
  for (std::size_t k = 1; k <= s.order(); ++k) {
    t_power = t_power * t;
    result = result + padic_binomial_C(a, k) * t_power;
  }
  return result;
}

PadicSeries padic_power(const FormalSeries& s, const PadicApprox& a) {
  return padic_power(to_padic(s, a.prime()), a);
}

namespace series {

FormalSeries exp_scaled(const Rational& k, std::size_t order) {
  std::vector<Rational> c;
  c.reserve(order + 1);
  Rational term(1);
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) term = term * k / Rational(Integer(static_cast<unsigned long>(n)));
    c.push_back(term);
  }
  return FormalSeries(std::move(c));
}

FormalSeries exp(std::size_t order) { return exp_scaled(Rational(1), order); }

FormalSeries expm1(std::size_t order) {
  auto c = exp(order).coefficients();
  c[0] = Rational(0);
  return FormalSeries(std::move(c));
}

FormalSeries cosh(std::size_t order) {
  auto c = exp(order).coefficients();
  for (std::size_t n = 1; n < c.size(); n += 2) c[n] = Rational(0);
  return FormalSeries(std::move(c));
}

FormalSeries sinh(std::size_t order) {
  auto c = exp(order).coefficients();
  for (std::size_t n = 0; n < c.size(); n += 2) c[n] = Rational(0);
  return FormalSeries(std::move(c));
}

FormalSeries log1p(std::size_t order) {
  std::vector<Rational> c(order + 1, Rational(0));
  for (std::size_t n = 1; n <= order; ++n) {
    const Rational term(Integer(1), Integer(static_cast<unsigned long>(n)));
    c[n] = (n % 2 == 1) ? term : -term;
  }
  return FormalSeries(std::move(c));
}

}  // namespace series

}  // namespace padicprob
