#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padicprob/formal_series.hpp"
#include "padicprob/frequency.hpp"
#include "padicprob/padic_approx.hpp"
#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"
#include "padicprob/valuation.hpp"

/// Exact limit theorems for sums of independent 0/1 trials, read in the
/// p-adic topology on the number of trials.
///
/// Every probability is an exact rational; a p-adic distance is the
/// valuation of an exact difference, so no trace can report a convergence
/// that rounding produced.
namespace padicprob::limits {

/// C(n, r) exactly. Throws Error(Range) when r > n.
Integer binom(std::uint64_t n, std::uint64_t r);
/// v_p(C(n, r)) as the number of carries when adding r and n - r in base p.
/// Throws Error(Range) when r > n.
std::int64_t binom_vp(std::uint64_t n, std::uint64_t r, Prime p);
/// C(a, m) = a (a - 1) ... (a - m + 1) / m! for a rational a.
Rational binom_general(const Rational& a, std::uint64_t m);

/// Trials xi take 0 with probability q and 1 with probability q' = 1 - q.
struct BernoulliParams {
  Prime p;
  Rational q;

  /// Throws Error(HypothesisViolation) unless q and 1 - q lie in Z_p.
  static BernoulliParams make(Prime p, const Rational& q);
  static BernoulliParams symmetric(Prime p) { return make(p, Rational(Integer(1), Integer(2))); }
  Rational q_prime() const { return Rational(1) - q; }
};

/// Law of S_n = xi_1 + ... + xi_n: w_j = C(n, j) q'^j q^(n-j), stored as
/// integer numerators over one common denominator.
class SumDistribution {
 public:
  SumDistribution(std::uint64_t n, const BernoulliParams& params);

  std::uint64_t n() const noexcept { return n_; }
  Rational weight(std::uint64_t j) const;
  const std::vector<Integer>& numerators() const noexcept { return numerators_; }
  const Integer& denominator() const noexcept { return denominator_; }
  Rational total() const;

 private:
  std::uint64_t n_;
  std::vector<Integer> numerators_;
  Integer denominator_;
};

/// P(S_n in U_{p^-l}(r)) = sum of w_j over j = r (mod p^l).
Rational prob_ball(const SumDistribution& d, Prime p, std::int64_t l, std::uint64_t r);
/// P(|S_n - r|_p = p^-l) = prob_ball(l) - prob_ball(l + 1).
Rational prob_sphere(const SumDistribution& d, Prime p, std::int64_t l, std::uint64_t r);
inline Rational prob_ball(std::uint64_t n, const BernoulliParams& params, std::int64_t l, std::uint64_t r) {
  return prob_ball(SumDistribution(n, params), params.p, l, r);
}
inline Rational prob_sphere(std::uint64_t n, const BernoulliParams& params, std::int64_t l, std::uint64_t r) {
  return prob_sphere(SumDistribution(n, params), params.p, l, r);
}

struct TraceRow {
  int k;
  std::uint64_t n;
  Rational value;
  Valuation vp_to_limit;
};

enum class TraceVerdict { Converging, NotConverging };
std::string_view to_string(TraceVerdict v) noexcept;

/// Convergence is judged on the computed window only: the last `window`
/// distance valuations are non-decreasing and the final one reaches
/// `threshold`.
struct TraceRule {
  std::size_t window = 3;
  std::optional<std::int64_t> threshold;  // default: kmax / 2
};

struct ConvergenceTrace {
  std::string label;
  Rational limit;
  std::vector<TraceRow> rows;
  TraceVerdict verdict = TraceVerdict::NotConverging;

  Valuation final_valuation() const;
  bool non_decreasing() const;
};

ConvergenceTrace judge(ConvergenceTrace trace, int kmax, const TraceRule& rule = {});

/// P(S_{N_k} in U_{p^-l}(r)) -> C(m, r) / 2^m as N_k -> m in Z_p, for
/// 0 <= m <= p^s - 1, 0 <= r <= m and l >= s. The selector's target must be m.
ConvergenceTrace verify_thm31(Prime p, std::uint64_t m, std::uint64_t r, std::int64_t l,
                              const frequency::SequenceSelector& selector, int kmax, const TraceRule& rule = {});

struct Eq5Result {
  ConvergenceTrace divisible;   // p divides S_n
  ConvergenceTrace complement;  // p does not divide S_n
  bool complement_identity;     // the two values sum to 1 at every k
};

/// Both events tend to 1/2 as N_k -> 1.
Eq5Result verify_eq5(Prime p, const frequency::SequenceSelector& selector, int kmax, const TraceRule& rule = {});

/// P(S_{N_k} in U_{p^-l}(r)) -> C(p, r) / 2^p as N_k -> p, for r = 0..p with
/// l >= 2 when r is 0 or p and l >= 1 otherwise.
ConvergenceTrace verify_thm32(Prime p, std::uint64_t r, std::int64_t l, const frequency::SequenceSelector& selector,
                              int kmax, const TraceRule& rule = {});

/// Weights C(m, r) / 2^m of the limit distribution, atom r at index r.
std::vector<Rational> kappa_limit(std::uint64_t m);

/// phi_n(z) = (1 + q'(e^z - 1))^n through z^order.
FormalSeries charfun(std::uint64_t n, const BernoulliParams& params, std::size_t order);
/// phi(z, a) = (1 + q'(e^z - 1))^a for a in Z_p.
PadicSeries charfun(const PadicApprox& a, const BernoulliParams& params, std::size_t order);

/// lambda_m(q, a) = (1 - q)^m C(a, m).
Rational mahler_lambda(const BernoulliParams& params, const Rational& a, std::uint64_t m);
/// The same for a p-adic a; Error(PrecisionExhausted) when C(a, m) loses every digit.
PadicApprox mahler_lambda(const BernoulliParams& params, const PadicApprox& a, std::uint64_t m);
/// E[C(S_n, m)] summed over the law of S_n.
Rational empirical_mahler(const SumDistribution& d, std::uint64_t m);
inline Rational empirical_mahler(const BernoulliParams& params, std::uint64_t n, std::uint64_t m) {
  return empirical_mahler(SumDistribution(n, params), m);
}

/// One trace per m = 0..mmax of E[C(S_{N_k}, m)] against lambda_m(q, a).
std::vector<ConvergenceTrace> verify_lln(const BernoulliParams& params, const Rational& a,
                                         const frequency::SequenceSelector& selector, std::uint64_t mmax, int kmax,
                                         const TraceRule& rule = {});

/// psi_n(z) = cosh(z / sqrt(n))^n from the even coefficients z^(2k) / (n^k (2k)!),
/// so no square root is taken. Negative n goes through the series inverse.
FormalSeries clt_charfun(std::int64_t n, std::size_t order);
/// psi(z, a) for a p-adic unit a; Error(Domain) when v_p(a) > 0.
PadicSeries clt_charfun(const PadicApprox& a, std::size_t order);

/// Mahler coefficients of the measure with characteristic series phi:
/// the coefficients of phi(log(1 + w)) through w^order. Needs phi(0) = 1
/// and an order no larger than phi's (Error(Order)).
std::vector<Rational> charfun_to_mahler(const FormalSeries& phi, std::size_t order);

struct BoundednessReport {
  Prime p;
  std::vector<Rational> lambdas;
  PadicAbs max_abs;
  bool bounded;
  std::string note;
};

/// Finite check that the first order + 1 Mahler coefficients of cosh z are
/// p-adic integers. Requires an odd prime (Error(HypothesisViolation)) and
/// order >= 2.
BoundednessReport gamma1_bounded_check(Prime p, std::size_t order);

enum class SphereMode { Sphere, Residue };
std::string_view to_string(SphereMode m) noexcept;

struct RandomnessConfig {
  Prime p;
  std::int64_t l = 1;
  std::uint64_t r = 0;
  frequency::SequenceSelector selector;
  std::int64_t eps_exponent = 2;  // epsilon = p^-E
  int kmin = 1;
  int kmax = 6;
  SphereMode mode = SphereMode::Sphere;
};

struct RandomnessRow {
  int k;
  std::uint64_t n;
  Rational probability;
  Valuation probability_valuation;
  std::uint64_t sum;
  bool hit;
};

enum class TestVerdict { NotRejected, Rejected, PersistentHit };
std::string_view to_string(TestVerdict v) noexcept;

struct RandomnessOutcome {
  TestVerdict verdict;
  std::optional<int> k_eps;
  std::optional<int> first_hit;
  std::vector<RandomnessRow> rows;
  /// P of the union of the events for k >= k_eps, by disjointification.
  std::optional<Rational> union_probability;
  std::optional<Valuation> union_valuation;
  /// Smallest valuation among the disjoint parts.
  std::optional<Valuation> min_part_valuation;
  std::vector<std::string> notes;

  bool rejected() const noexcept { return verdict != TestVerdict::NotRejected; }
};

/// Tests a 0/1 collective against the critical region built from the
/// sphere events {S_{N_k} in S_{p^-l}(r)}. Throws Error(InsufficientData)
/// when the collective is shorter than the largest checkpoint.
RandomnessOutcome randomness_test(const frequency::Collective& omega, const RandomnessConfig& config);

/// Whether S lies in the tested set: v_p(S - r) = l (sphere) or
/// (S - r) mod p^l in [1, p - 1] (residue).
bool test_hit(std::uint64_t s, Prime p, std::int64_t l, std::uint64_t r, SphereMode mode);

}  // namespace padicprob::limits
