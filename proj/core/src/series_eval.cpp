#include "padicprob/series_eval.hpp"

#include <algorithm>
#include <string>

#include "padicprob/errors.hpp"

namespace padicprob {

namespace {

std::int64_t ceil_log(std::uint64_t n, std::uint64_t p) {
  std::int64_t e = 0;
  unsigned __int128 power = 1;
  while (power < n) {
    power *= p;
    ++e;
  }
  return e;
}

std::int64_t abs_prec(const PadicApprox& x) { return x.absolute_precision().value(); }

PadicApprox exp_family(SeriesKind kind, const PadicApprox& x, std::int64_t working_precision) {
  const Prime p = x.prime();
  if (x.valuation() < Valuation(exp_min_valuation(p))) {
    fail(ErrorKind::Domain, std::string(to_string(kind)) + " diverges: need |x|_p <= " +
                                (p.value() == 2 ? std::string("1/4") : "1/" + std::to_string(p.value())) +
                                ", got valuation " + x.valuation().str());
  }
  const PadicApprox one = PadicApprox::from_rational(Rational(1), p, working_precision);
  if (x.is_exact_zero()) return kind == SeriesKind::Sinh ? PadicApprox::zero(p) : one;

  const std::int64_t v = x.valuation().value();
  PadicApprox even = one;
  PadicApprox odd = PadicApprox::zero(p);
  PadicApprox term = one;
  auto target = [&] {
    switch (kind) {
      case SeriesKind::Cosh: return abs_prec(even);
      case SeriesKind::Sinh: return abs_prec(odd);
      default: return std::min(abs_prec(even), abs_prec(odd));
    }
  };
  for (std::uint64_t n = 1;; ++n) {
    // v_p(x^n / n!) >= n v - (n-1)/(p-1), non-decreasing in n.
    const auto bound = static_cast<std::int64_t>(n) * v - static_cast<std::int64_t>((n - 1) / (p.value() - 1));
    if (bound >= target()) break;
    term = (term * x).divided_by_integer(Integer(n));
    if (n % 2 == 0) {
      even = even + term;
    } else {
      odd = odd + term;
    }
  }
  switch (kind) {
    case SeriesKind::Cosh: return even;
    case SeriesKind::Sinh: return odd;
    default: return even + odd;
  }
}

PadicApprox log1p_series(const PadicApprox& x) {
  const Prime p = x.prime();
  if (x.valuation() < Valuation(1)) fail(ErrorKind::Domain, "log1p diverges: need |x|_p < 1, got valuation " + x.valuation().str());
  if (x.is_exact_zero()) return x;
  const std::int64_t v = x.valuation().value();
  PadicApprox sum = PadicApprox::zero(p);
  PadicApprox power = x;
  for (std::uint64_t n = 1;; ++n) {
    // v_p(x^n / n) >= n v - ceil(log_p n), non-decreasing for v >= 1.
    if (n > 1 && static_cast<std::int64_t>(n) * v - ceil_log(n, p.value()) >= abs_prec(sum)) break;
    const PadicApprox term = power.divided_by_integer(Integer(n));
    sum = (n % 2 == 1) ? sum + term : sum - term;
    power = power * x;
  }
  return sum;
}

PadicApprox binomial_series(const PadicApprox& a, const PadicApprox& x, std::int64_t working_precision) {
  const Prime p = x.prime();
  if (a.prime() != p) fail(ErrorKind::InvalidArgument, "binomial exponent and argument use different primes");
  if (a.valuation() < Valuation(0)) fail(ErrorKind::Domain, "binomial series needs an exponent in Z_p");
  if (x.valuation() < Valuation(1)) fail(ErrorKind::Domain, "binomial series diverges: need |x|_p < 1, got valuation " + x.valuation().str());
  const PadicApprox one = PadicApprox::from_rational(Rational(1), p, working_precision);
  if (x.is_exact_zero() || a.is_exact_zero()) return one;
  const std::int64_t v = x.valuation().value();
  const std::int64_t a_prec = abs_prec(a);
  PadicApprox sum = one;
  PadicApprox coefficient = one;  // C(a, n)
  PadicApprox power = one;        // x^n
  for (std::uint64_t n = 1;; ++n) {
    // |C(a, n)|_p <= 1, so the n-th term has valuation >= n v.
    if (static_cast<std::int64_t>(n) * v >= abs_prec(sum)) break;
    const PadicApprox shift = PadicApprox::from_rational_abs(Rational(Integer(n - 1)), p, a_prec);
    coefficient = (coefficient * (a - shift)).divided_by_integer(Integer(n));
    power = power * x;
    sum = sum + coefficient * power;
  }
  return sum;
}

}  // namespace

std::string_view to_string(SeriesKind kind) noexcept {
  switch (kind) {
    case SeriesKind::Exp: return "exp";
    case SeriesKind::Cosh: return "cosh";
    case SeriesKind::Sinh: return "sinh";
    case SeriesKind::Log1p: return "log1p";
    case SeriesKind::Binomial: return "binomial";
  }
  return "series";
}

std::int64_t exp_min_valuation(Prime p) noexcept { return p.value() == 2 ? 2 : 1; }

PadicApprox series_eval(SeriesKind kind, const PadicApprox& x, const std::optional<PadicApprox>& exponent,
                        std::int64_t working_precision) {
  switch (kind) {
    case SeriesKind::Exp:
    case SeriesKind::Cosh:
    case SeriesKind::Sinh:
      return exp_family(kind, x, working_precision);
    case SeriesKind::Log1p:
      return log1p_series(x);
    case SeriesKind::Binomial:
      if (!exponent) fail(ErrorKind::InvalidArgument, "binomial series needs an exponent");
      return binomial_series(*exponent, x, working_precision);
  }
  fail(ErrorKind::InvalidArgument, "unknown series kind");
}

}  // namespace padicprob
