#include <algorithm>
#include <string>

#include "padicprob/errors.hpp"
#include "padicprob/limit_theorems.hpp"

namespace padicprob::limits {

namespace {

// 1 + q'(e^z - 1)
FormalSeries trial_series(const BernoulliParams& params, std::size_t order) {
  return FormalSeries::constant(Rational(1), order) + params.q_prime() * series::expm1(order);
}

Integer factorial(std::uint64_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

FormalSeries charfun(std::uint64_t n, const BernoulliParams& params, std::size_t order) {
  return integer_power(trial_series(params, order), static_cast<std::int64_t>(n));
}

PadicSeries charfun(const PadicApprox& a, const BernoulliParams& params, std::size_t order) {
  if (a.prime() != params.p) fail(ErrorKind::InvalidArgument, "exponent and trial parameters use different primes");
  return padic_power(trial_series(params, order), a);
}

Rational mahler_lambda(const BernoulliParams& params, const Rational& a, std::uint64_t m) {
  return pow(params.q_prime(), static_cast<long>(m)) * binom_general(a, m);
}

PadicApprox mahler_lambda(const BernoulliParams& params, const PadicApprox& a, std::uint64_t m) {
  if (a.prime() != params.p) fail(ErrorKind::InvalidArgument, "exponent and trial parameters use different primes");
  const PadicApprox q_prime_m = to_approx(pow(params.q_prime(), static_cast<long>(m)), params.p);
  return q_prime_m * padic_binomial_C(a, m);
}

Rational empirical_mahler(const SumDistribution& d, std::uint64_t m) {
  Integer sum = 0;
  Integer c = 1;  // C(j, m), starting at j = m
  for (std::uint64_t j = m; j <= d.n(); ++j) {
    if (j > m) {
      c = c * static_cast<unsigned long>(j);
      c = c / static_cast<unsigned long>(j - m);
    }
    sum += c * d.numerators()[j];
  }
  return Rational(sum, d.denominator());
}

FormalSeries clt_charfun(std::int64_t n, std::size_t order) {
  if (n == 0) fail(ErrorKind::Domain, "psi_n needs n != 0");
  std::vector<Rational> c(order + 1, Rational(0));
  const Rational inv_n = Rational(1) / Rational(static_cast<long>(n));
  for (std::size_t k = 0; 2 * k <= order; ++k) {
    c[2 * k] = pow(inv_n, static_cast<long>(k)) / Rational(factorial(2 * k));
  }
  return integer_power(FormalSeries(std::move(c)), n);
}

PadicSeries clt_charfun(const PadicApprox& a, std::size_t order) {
  if (a.valuation() > Valuation(0)) {
    fail(ErrorKind::Domain, "psi(z, a) divides by a; a must be a p-adic unit, got valuation " + a.valuation().str());
  }
  const Prime p = a.prime();
  const PadicApprox one = to_approx(Rational(1), p);
  const PadicApprox inv_a = one / a;
  std::vector<PadicApprox> c(order + 1, PadicApprox::zero(p));
  PadicApprox inv_a_k = one;
  for (std::size_t k = 0; 2 * k <= order; ++k) {
    if (k > 0) inv_a_k = inv_a_k * inv_a;
    c[2 * k] = k == 0 ? one : inv_a_k.divided_by_integer(factorial(2 * k));
  }
  return padic_power(PadicSeries(std::move(c)), a);
}

std::vector<Rational> charfun_to_mahler(const FormalSeries& phi, std::size_t order) {
  if (phi.order() < order) {
    fail(ErrorKind::Order, "series known through z^" + std::to_string(phi.order()) + " cannot give " +
                               std::to_string(order + 1) + " Mahler coefficients");
  }
  if (phi[0] != Rational(1)) fail(ErrorKind::InvalidArgument, "a characteristic series has constant term 1");
  return compose(phi.truncated(order), series::log1p(order)).coefficients();
}

BoundednessReport gamma1_bounded_check(Prime p, std::size_t order) {
  if (p.value() == 2) fail(ErrorKind::HypothesisViolation, "the boundedness check is stated for odd primes only");
  if (order < 2) fail(ErrorKind::InvalidArgument, "the boundedness check needs order >= 2");
  BoundednessReport report{p, charfun_to_mahler(clt_charfun(1, order), order), PadicAbs::zero(p), true,
                           "finite check of the first " + std::to_string(order + 1) +
                               " Mahler coefficients; not a proof of boundedness"};
  for (const auto& lambda : report.lambdas) report.max_abs = std::max(report.max_abs, abs_p(lambda, p));
  report.bounded = report.max_abs <= PadicAbs::one(p);
  return report;
}

}  // namespace padicprob::limits
