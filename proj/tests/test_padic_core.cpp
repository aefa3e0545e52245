#include <gtest/gtest.h>

#include <set>

#include "padicprob/errors.hpp"
#include "padicprob/formal_series.hpp"
#include "padicprob/padic_approx.hpp"
#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"
#include "padicprob/series_eval.hpp"
#include "padicprob/valuation.hpp"
#include "support/oracles.hpp"

using namespace padicprob;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Parse;
}

}  // namespace

TEST(Errors, ExitCodesAreDistinctAndNonzero) {
  std::set<int> seen;
  for (int k = 0; k <= static_cast<int>(ErrorKind::RegionNotSignificant); ++k) {
    const int code = exit_code(static_cast<ErrorKind>(k));
    EXPECT_NE(code, 0);
    EXPECT_NE(code, 1);
    seen.insert(code);
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(ErrorKind::RegionNotSignificant) + 1);
  EXPECT_EQ(exit_code(ErrorKind::Parse), 2);
}

TEST(RationalType, ParsesAndPrints) {
  EXPECT_EQ(Rational::parse("5/16"), q(5, 16));
  EXPECT_EQ(Rational::parse("-6/4"), q(-3, 2));
  EXPECT_EQ(Rational::parse("7"), q(7));
  EXPECT_EQ(q(10, 4).str(), "5/2");
  EXPECT_EQ(kind_of([] { Rational::parse("1/x"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { Rational::parse(""); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { (void)(q(1) / q(0)); }), ErrorKind::Domain);
}

TEST(PrimeType, RejectsComposites) {
  EXPECT_NO_THROW(Prime(2));
  EXPECT_NO_THROW(Prime(1'000'000'007ULL));
  EXPECT_EQ(kind_of([] { Prime(4); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Prime(1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Prime(0); }), ErrorKind::InvalidArgument);
}

TEST(PrimeType, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    bool naive = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && naive; ++d) naive = n % d != 0;
    ASSERT_EQ(is_prime(n), naive) << n;
  }
}

TEST(Valuation, SpecExamples) {
  EXPECT_EQ(vp(q(12), Prime(3)), Valuation(1));
  EXPECT_TRUE(vp(q(0), Prime(5)).is_infinite());
  EXPECT_EQ(vp(q(5, 16), Prime(2)), Valuation(-4));
  EXPECT_EQ(vp(q(-250, 3), Prime(5)), Valuation(3));
  EXPECT_EQ(vp(q(-250, 3), Prime(3)), Valuation(-1));
}

TEST(Valuation, AbsoluteValueAndDistance) {
  const Prime p(3);
  EXPECT_EQ(abs_p(q(1, 2), p), PadicAbs::one(p));
  EXPECT_EQ(abs_p(q(18), p).value(), q(1, 9));
  EXPECT_EQ(abs_p(q(1, 9), p).value(), q(9));
  EXPECT_TRUE(abs_p(q(0), p).is_zero());
  EXPECT_EQ(dist_p(q(5, 16), q(1, 2), p).value(), q(1, 3));
  EXPECT_TRUE(dist_p(q(7, 5), q(7, 5), p).is_zero());
}

TEST(Valuation, BallsAndSpheres) {
  const Prime p(3);
  EXPECT_TRUE(in_ball(q(9), Ball{q(0), 2, p}));
  EXPECT_FALSE(in_ball(q(3), Ball{q(0), 2, p}));
  EXPECT_TRUE(in_ball(q(5), Ball{q(2), 1, p}));
  EXPECT_TRUE(in_sphere(q(9), Sphere{q(0), 2, p}));
  EXPECT_FALSE(in_sphere(q(27), Sphere{q(0), 2, p}));
  EXPECT_EQ((Ball{q(0), 2, p}.radius()), q(1, 9));
  // Balls with negative radius exponent contain fractions.
  EXPECT_TRUE(in_ball(q(1, 3), Ball{q(0), -1, p}));
  EXPECT_FALSE(in_ball(q(1, 9), Ball{q(0), -1, p}));
}

TEST(Valuation, LegendreMatchesNaiveSum) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::uint64_t n = 0; n <= 500; ++n) {
      ASSERT_EQ(legendre_vp_factorial(n, Prime(p)), oracle::vp_factorial(n, p)) << n << " " << p;
      ASSERT_EQ(legendre_vp_factorial(n, Prime(p)), oracle::vp(mpz_class(oracle::factorial(n).get_num()), p));
    }
  }
}

TEST(Valuation, DigitSumGivesLegendreIdentity) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
      const auto lhs = static_cast<std::int64_t>((n - digit_sum(n, Prime(p))) / (p - 1));
      ASSERT_EQ(lhs, legendre_vp_factorial(n, Prime(p)));
    }
  }
}

TEST(PadicApproxType, HalfInThreeAdics) {
  const auto x = to_approx(q(1, 2), Prime(3), 4);
  EXPECT_EQ(x.valuation(), Valuation(0));
  EXPECT_EQ(x.digits(), (std::vector<std::uint64_t>{2, 1, 1, 1}));
  // 1/2 mod 81 is the inverse of 2, computed independently.
  mpz_class inv;
  mpz_class two = 2, m = 81;
  mpz_invert(inv.get_mpz_t(), two.get_mpz_t(), m.get_mpz_t());
  EXPECT_EQ(x.unit(), inv);
}

TEST(PadicApproxType, ValuationMovesIntoExponent) {
  const auto x = to_approx(q(9), Prime(3), 3);
  EXPECT_EQ(x.valuation(), Valuation(2));
  EXPECT_EQ(x.digits(), (std::vector<std::uint64_t>{1, 0, 0}));
  const auto y = to_approx(q(1, 6), Prime(3), 2);
  EXPECT_EQ(y.valuation(), Valuation(-1));
  EXPECT_TRUE(to_approx(q(0), Prime(3), 5).is_exact_zero());
}

TEST(PadicApproxType, StrRoundTrip) {
  for (long n = -20; n <= 20; ++n) {
    for (long d = 1; d <= 12; ++d) {
      if (n == 0) continue;
      const auto x = to_approx(q(n, d), Prime(3), 6);
      ASSERT_EQ(PadicApprox::parse(x.str()), x) << x.str();
      ASSERT_TRUE(x.agrees_with(q(n, d)));
    }
  }
  EXPECT_EQ(PadicApprox::parse(PadicApprox::zero(Prime(5)).str()), PadicApprox::zero(Prime(5)));
}

TEST(PadicApproxType, FromDigitsValidates) {
  EXPECT_EQ(kind_of([] { PadicApprox::from_digits(Prime(3), 0, {3}); }), ErrorKind::DigitRange);
  EXPECT_EQ(kind_of([] { PadicApprox::from_digits(Prime(3), 0, {0, 1}); }), ErrorKind::DigitRange);
  EXPECT_TRUE(PadicApprox::from_digits(Prime(3), 1, {2, 1}).agrees_with(q(15)));
}

TEST(PadicApproxType, ArithmeticTracksPrecision) {
  const Prime p(5);
  const auto a = to_approx(q(3, 7), p, 6);
  const auto b = to_approx(q(2, 11), p, 4);
  EXPECT_TRUE((a + b).agrees_with(q(3, 7) + q(2, 11)));
  EXPECT_TRUE((a * b).agrees_with(q(6, 77)));
  EXPECT_TRUE((a / b).agrees_with(q(33, 14)));
  EXPECT_EQ((a * b).precision(), 4);
  // Cancellation leaves an indistinguishable zero at the shared absolute precision.
  const auto c = to_approx(q(1), p, 3) - to_approx(q(1), p, 5);
  EXPECT_TRUE(c.is_zero());
  EXPECT_FALSE(c.is_exact_zero());
  EXPECT_EQ(c.valuation(), Valuation(3));
  EXPECT_EQ(kind_of([&] { (void)(a / c); }), ErrorKind::Domain);
}

TEST(PadicBinomial, MinusOneGivesAlternatingSigns) {
  const auto a = to_approx(q(-1), Prime(3), 20);
  for (std::uint64_t m = 0; m <= 10; ++m) {
    EXPECT_TRUE(padic_binomial_C(a, m).agrees_with(q(m % 2 == 0 ? 1 : -1))) << m;
  }
}

TEST(PadicBinomial, MatchesIntegerBinomials) {
  for (std::uint64_t n = 0; n <= 15; ++n) {
    const auto a = to_approx(q(static_cast<long>(n)), Prime(3), 20);
    for (std::uint64_t m = 0; m <= 15; ++m) {
      const auto c = padic_binomial_C(a, m);
      const mpz_class expected = m <= n ? oracle::binomial(n, m) : mpz_class(0);
      ASSERT_TRUE(c.agrees_with(Rational(expected))) << n << " " << m << " " << c.str();
    }
  }
}

TEST(PadicBinomial, PrecisionAndDomainErrors) {
  const auto coarse = to_approx(q(1, 2), Prime(3), 1);
  EXPECT_EQ(kind_of([&] { padic_binomial_C(coarse, 9); }), ErrorKind::PrecisionExhausted);
  EXPECT_EQ(kind_of([] { padic_binomial_C(to_approx(q(1, 3), Prime(3), 5), 2); }), ErrorKind::Domain);
}

TEST(SeriesEval, DomainOfConvergence) {
  EXPECT_EQ(kind_of([] { padic_exp(to_approx(q(1), Prime(3), 10)); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { padic_exp(to_approx(q(2), Prime(2), 10)); }), ErrorKind::Domain);
  EXPECT_NO_THROW(padic_exp(to_approx(q(4), Prime(2), 10)));
  EXPECT_NO_THROW(padic_exp(to_approx(q(3), Prime(3), 10)));
  EXPECT_EQ(kind_of([] { padic_log1p(to_approx(q(1), Prime(3), 10)); }), ErrorKind::Domain);
  EXPECT_EQ(exp_min_valuation(Prime(2)), 2);
  EXPECT_EQ(exp_min_valuation(Prime(7)), 1);
}

TEST(SeriesEval, ExpAgreesWithTruncatedRationalSum) {
  // Oracle: sum x^n/n! in exact rationals far past the needed precision.
  const Prime p(3);
  const mpq_class x(3, 2);
  mpq_class sum = 0, term = 1;
  for (unsigned long n = 0; n < 80; ++n) {
    sum += term;
    term *= x;
    term /= n + 1;
  }
  const auto e = padic_exp(to_approx(q(3, 2), p, 20));
  EXPECT_GE(e.precision(), 10);
  EXPECT_TRUE(e.agrees_with(Rational(sum)));
}

TEST(SeriesEval, LogInvertsExp) {
  const Prime p(5);
  const auto x = to_approx(q(5, 3), p, 20);
  const auto e = padic_exp(x);
  const auto back = padic_log1p(e - to_approx(q(1), p, 40));
  EXPECT_TRUE(back.agrees_with(x));
  EXPECT_GE(back.precision(), 10);
}

TEST(SeriesEval, ExpIsAdditive) {
  const Prime p(3);
  const auto x = to_approx(q(3, 4), p, 16);
  const auto y = to_approx(q(-9, 5), p, 16);
  EXPECT_TRUE(padic_exp(x + y).agrees_with(padic_exp(x) * padic_exp(y)));
}

TEST(SeriesEval, CoshSinhIdentity) {
  const Prime p(7);
  const auto x = to_approx(q(14, 3), p, 12);
  const auto c = padic_cosh(x), s = padic_sinh(x);
  EXPECT_TRUE((c * c - s * s).agrees_with(q(1)));
}

TEST(SeriesEval, BinomialSeriesSquareRoot) {
  // (1 + 7/9 ... ) use (1+x)^(1/2) squared = 1+x.
  const Prime p(3);
  const auto x = to_approx(q(3, 5), p, 16);
  const auto half = to_approx(q(1, 2), p, 16);
  const auto r = padic_binomial_series(half, x);
  EXPECT_TRUE((r * r).agrees_with(q(8, 5)));
}

TEST(FormalSeriesType, OrderMismatchThrows) {
  EXPECT_EQ(kind_of([] { (void)(series::exp(4) + series::exp(5)); }), ErrorKind::Order);
  EXPECT_EQ(kind_of([] { (void)series::exp(3).truncated(4); }), ErrorKind::Order);
}

TEST(FormalSeriesType, ElementaryCoefficients) {
  const auto e = series::exp(8);
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_EQ(e[k].mpq(), 1 / oracle::factorial(k));
  const auto l = series::log1p(6);
  EXPECT_EQ(l[0], q(0));
  EXPECT_EQ(l[3], q(1, 3));
  EXPECT_EQ(l[4], q(-1, 4));
  const auto one = FormalSeries::constant(q(1), 8);
  const auto c = series::cosh(8), s = series::sinh(8);
  EXPECT_EQ(c * c - s * s, one);
  EXPECT_EQ(e * one, e);
}

TEST(FormalSeriesType, ComposeAndInverse) {
  const std::size_t order = 10;
  // log(1 + (e^z - 1)) = z
  EXPECT_EQ(compose(series::log1p(order), series::expm1(order)), FormalSeries::variable(q(1), order));
  EXPECT_EQ(compose(series::expm1(order), series::expm1(order))[2], q(1));
  EXPECT_EQ(inverse(series::exp(order)), series::exp_scaled(q(-1), order));
  EXPECT_EQ(kind_of([&] { compose(series::exp(order), series::exp(order)); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { inverse(series::sinh(order)); }), ErrorKind::Domain);
}

TEST(FormalSeriesType, IntegerPowerMatchesNaiveProduct) {
  // cosh(z / sqrt(n))^n as a series in z^2: coefficients of the even part.
  for (unsigned long n = 1; n <= 6; ++n) {
    std::vector<Rational> coeffs;
    oracle::Poly naive;
    for (unsigned long k = 0; k <= 6; ++k) {
      // cosh(w / sqrt n) = sum w^(2k) / ((2k)! n^k), written in u = w^2.
      mpq_class c = 1 / oracle::factorial(2 * k);
      for (unsigned long i = 0; i < k; ++i) c /= n;
      coeffs.push_back(Rational(c));
      naive.push_back(c);
    }
    const auto s = integer_power(FormalSeries(coeffs), static_cast<std::int64_t>(n));
    const auto expected = oracle::pow(naive, n, 6);
    for (std::size_t k = 0; k <= 6; ++k) ASSERT_EQ(s[k].mpq(), expected[k]) << n << " " << k;
    // The u^2 (that is z^4) coefficient is (3n - 2) / (24 n).
    EXPECT_EQ(s[2], Rational(Integer(static_cast<long>(3 * n - 2)), Integer(static_cast<long>(24 * n))));
  }
}

TEST(FormalSeriesType, NegativePowerIsInverse) {
  const auto s = series::exp_scaled(q(2), 7);
  EXPECT_EQ(integer_power(s, -3), series::exp_scaled(q(-6), 7));
}

TEST(FormalSeriesType, PadicPowerMatchesIntegerPower) {
  const Prime p(3);
  const auto base = series::exp_scaled(q(1, 2), 6) ;
  const auto via_padic = padic_power(base, to_approx(q(4), p, 20));
  const auto exact = integer_power(base, 4);
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_TRUE(via_padic[k].agrees_with(exact[k])) << k;
}
