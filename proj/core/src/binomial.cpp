#include <string>

#include "padicprob/errors.hpp"
#include "padicprob/limit_theorems.hpp"

namespace padicprob::limits {

namespace {

void check_range(std::uint64_t n, std::uint64_t r) {
  if (r > n) fail(ErrorKind::Range, "binomial C(" + std::to_string(n) + ", " + std::to_string(r) + ") needs r <= n");
}

Integer modulus_for(Prime p, std::int64_t l) {
  if (l < 0) fail(ErrorKind::InvalidArgument, "ball depth l must be >= 0");
  return ipow(Integer(static_cast<unsigned long>(p.value())), static_cast<unsigned long>(l));
}

}  // namespace

Integer binom(std::uint64_t n, std::uint64_t r) {
  check_range(n, r);
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

std::int64_t binom_vp(std::uint64_t n, std::uint64_t r, Prime p) {
  check_range(n, r);
  std::uint64_t a = r;
  std::uint64_t b = n - r;
  std::uint64_t carry = 0;
  std::int64_t carries = 0;
  const std::uint64_t base = p.value();
  while (a > 0 || b > 0 || carry > 0) {
    const std::uint64_t digit_sum = a % base + b % base + carry;
    carry = digit_sum >= base ? 1 : 0;
    carries += static_cast<std::int64_t>(carry);
    a /= base;
    b /= base;
  }
  return carries;
}

Rational binom_general(const Rational& a, std::uint64_t m) {
  Rational out(1);
  for (std::uint64_t j = 0; j < m; ++j) {
    out = out * (a - Rational(Integer(static_cast<unsigned long>(j))));
    out = out / Rational(Integer(static_cast<unsigned long>(j + 1)));
  }
  return out;
}

BernoulliParams BernoulliParams::make(Prime p, const Rational& q) {
  if (vp(q, p) < Valuation(0) || vp(Rational(1) - q, p) < Valuation(0)) {
    fail(ErrorKind::HypothesisViolation, "trial probabilities q = " + q.str() + " and 1 - q must lie in Z_" +
                                             std::to_string(p.value()));
  }
  return BernoulliParams{p, q};
}

SumDistribution::SumDistribution(std::uint64_t n, const BernoulliParams& params) : n_(n) {
  // q = a/b and q' = (b - a)/b, so w_j = C(n, j) (b - a)^j a^(n - j) / b^n.
  const Integer a = params.q.num();
  const Integer b = params.q.den();
  const Integer a_prime = b - a;
  denominator_ = ipow(b, n);

  std::vector<Integer> a_powers(n + 1);
  a_powers[0] = 1;
  for (std::uint64_t j = 1; j <= n; ++j) a_powers[j] = a_powers[j - 1] * a;

  numerators_.resize(n + 1);
  Integer c = 1;         // C(n, j)
  Integer a_prime_j = 1;  // (b - a)^j
  for (std::uint64_t j = 0; j <= n; ++j) {
    numerators_[j] = c * a_prime_j * a_powers[n - j];
    c = c * static_cast<unsigned long>(n - j);
    c = c / static_cast<unsigned long>(j + 1);
    a_prime_j = a_prime_j * a_prime;
  }
}

Rational SumDistribution::weight(std::uint64_t j) const {
  if (j > n_) return Rational(0);
  return Rational(numerators_[j], denominator_);
}

Rational SumDistribution::total() const {
  Integer sum = 0;
  for (const auto& w : numerators_) sum += w;
  return Rational(sum, denominator_);
}

Rational prob_ball(const SumDistribution& d, Prime p, std::int64_t l, std::uint64_t r) {
  const Integer modulus = modulus_for(p, l);
  Integer residue = Integer(static_cast<unsigned long>(r)) % modulus;
  Integer sum = 0;
  // Walk j = residue, residue + p^l, ... up to n.
  if (residue <= Integer(static_cast<unsigned long>(d.n()))) {
    if (!modulus.fits_ulong_p() || modulus > Integer(static_cast<unsigned long>(d.n()))) {
      sum = d.numerators()[residue.get_ui()];
    } else {
      const std::uint64_t step = modulus.get_ui();
      for (std::uint64_t j = residue.get_ui(); j <= d.n(); j += step) sum += d.numerators()[j];
    }
  }
  return Rational(sum, d.denominator());
}

Rational prob_sphere(const SumDistribution& d, Prime p, std::int64_t l, std::uint64_t r) {
  return prob_ball(d, p, l, r) - prob_ball(d, p, l + 1, r);
}

std::vector<Rational> kappa_limit(std::uint64_t m) {
  std::vector<Rational> weights;
  weights.reserve(m + 1);
  const Integer scale = ipow(Integer(2), m);
  for (std::uint64_t r = 0; r <= m; ++r) weights.emplace_back(binom(m, r), scale);
  return weights;
}

}  // namespace padicprob::limits
