#include "padicprob/limit_theorems.hpp"

#include <algorithm>
#include <functional>

#include "padicprob/errors.hpp"

namespace padicprob::limits {

namespace {

using frequency::SequenceSelector;

void require_target(const SequenceSelector& s, const Rational& expected, std::string_view theorem) {
  if (!s.target()) {
    fail(ErrorKind::InvalidTarget, std::string(theorem) + " needs a selector with a declared target");
  }
  if (*s.target() != expected) {
    fail(ErrorKind::HypothesisViolation, std::string(theorem) + " needs N_k -> " + expected.str() + ", but selector '" +
                                             s.str() + "' tends to " + s.target()->str());
  }
}

void require_prime(const SequenceSelector& s, Prime p) {
  if (s.prime() != p) fail(ErrorKind::InvalidArgument, "selector prime differs from the theorem's prime");
}

// Smallest s >= 0 with m <= p^s - 1.
std::int64_t digits_needed(std::uint64_t m, Prime p) {
  std::int64_t s = 0;
  unsigned __int128 power = 1;
  while (power - 1 < m) {
    power *= p.value();
    ++s;
  }
  return s;
}

ConvergenceTrace build(std::string label, const Rational& limit, const SequenceSelector& selector, int kmax,
                       const std::function<Rational(const SumDistribution&)>& value, const BernoulliParams& params) {
  ConvergenceTrace trace{std::move(label), limit, {}, TraceVerdict::NotConverging};
  for (const auto& term : selector.terms(kmax)) {
    const SumDistribution d(term.n, params);
    Rational v = value(d);
    const Valuation gap = vp(v - limit, params.p);
    trace.rows.push_back({term.k, term.n, std::move(v), gap});
  }
  return trace;
}

}  // namespace

std::string_view to_string(TraceVerdict v) noexcept {
  return v == TraceVerdict::Converging ? "Converging" : "NotConverging";
}

Valuation ConvergenceTrace::final_valuation() const {
  if (rows.empty()) fail(ErrorKind::InsufficientData, "empty convergence trace");
  return rows.back().vp_to_limit;
}

bool ConvergenceTrace::non_decreasing() const {
  return std::is_sorted(rows.begin(), rows.end(),
                        [](const TraceRow& a, const TraceRow& b) { return a.vp_to_limit < b.vp_to_limit; });
}

ConvergenceTrace judge(ConvergenceTrace trace, int kmax, const TraceRule& rule) {
  trace.verdict = TraceVerdict::NotConverging;
  if (trace.rows.empty()) return trace;
  const std::int64_t threshold = rule.threshold.value_or(kmax / 2);
  const std::size_t window = std::min(std::max<std::size_t>(rule.window, 1), trace.rows.size());
  const auto tail = trace.rows.end() - static_cast<std::ptrdiff_t>(window);
  const bool monotone = std::is_sorted(
      tail, trace.rows.end(), [](const TraceRow& a, const TraceRow& b) { return a.vp_to_limit < b.vp_to_limit; });
  if (monotone && trace.final_valuation() >= Valuation(threshold)) trace.verdict = TraceVerdict::Converging;
  return trace;
}

ConvergenceTrace verify_thm31(Prime p, std::uint64_t m, std::uint64_t r, std::int64_t l,
                              const SequenceSelector& selector, int kmax, const TraceRule& rule) {
  require_prime(selector, p);
  const std::int64_t s = digits_needed(m, p);
  if (r > m || l < s) {
    fail(ErrorKind::HypothesisViolation, "the ball limit toward m needs 0 <= r <= m and l >= s where m <= p^s - 1; got m=" +
                                             std::to_string(m) + ", r=" + std::to_string(r) + ", l=" +
                                             std::to_string(l) + ", s=" + std::to_string(s));
  }
  require_target(selector, Rational(Integer(static_cast<unsigned long>(m))), "the ball limit toward m");
  const Rational limit(binom(m, r), ipow(Integer(2), m));
  const auto params = BernoulliParams::symmetric(p);
  auto trace = build("thm31 m=" + std::to_string(m) + " r=" + std::to_string(r) + " l=" + std::to_string(l), limit,
                     selector, kmax, [&](const SumDistribution& d) { return prob_ball(d, p, l, r); }, params);
  return judge(std::move(trace), kmax, rule);
}

Eq5Result verify_eq5(Prime p, const SequenceSelector& selector, int kmax, const TraceRule& rule) {
  require_prime(selector, p);
  require_target(selector, Rational(1), "the divisibility limit");
  const auto params = BernoulliParams::symmetric(p);
  const Rational half(Integer(1), Integer(2));
  auto divisible = build("eq5 divisible", half, selector, kmax,
                         [&](const SumDistribution& d) { return prob_ball(d, p, 1, 0); }, params);
  // The complement is summed over the nonzero residues, not taken as 1 - P(A).
  auto complement = build("eq5 complement", half, selector, kmax, [&](const SumDistribution& d) {
    Rational sum(0);
    for (std::uint64_t r = 1; r < p.value(); ++r) sum = sum + prob_ball(d, p, 1, r);
    return sum;
  }, params);
  bool identity = divisible.rows.size() == complement.rows.size();
  for (std::size_t i = 0; identity && i < divisible.rows.size(); ++i) {
    identity = divisible.rows[i].value + complement.rows[i].value == Rational(1);
  }
  return {judge(std::move(divisible), kmax, rule), judge(std::move(complement), kmax, rule), identity};
}

ConvergenceTrace verify_thm32(Prime p, std::uint64_t r, std::int64_t l, const SequenceSelector& selector, int kmax,
                              const TraceRule& rule) {
  require_prime(selector, p);
  const std::int64_t depth = (r == 0 || r == p.value()) ? 2 : 1;
  if (r > p.value() || l < depth) {
    fail(ErrorKind::HypothesisViolation, "the ball limit toward p needs 0 <= r <= p, with l >= 2 for r in {0, p} and l >= 1 "
                                         "otherwise; got r=" + std::to_string(r) + ", l=" + std::to_string(l));
  }
  require_target(selector, Rational(Integer(static_cast<unsigned long>(p.value()))), "the ball limit toward p");
  const Rational limit(binom(p.value(), r), ipow(Integer(2), p.value()));
  const auto params = BernoulliParams::symmetric(p);
  auto trace = build("thm32 r=" + std::to_string(r) + " l=" + std::to_string(l), limit, selector, kmax,
                     [&](const SumDistribution& d) { return prob_ball(d, p, l, r); }, params);
  return judge(std::move(trace), kmax, rule);
}

std::vector<ConvergenceTrace> verify_lln(const BernoulliParams& params, const Rational& a,
                                         const SequenceSelector& selector, std::uint64_t mmax, int kmax,
                                         const TraceRule& rule) {
  require_prime(selector, params.p);
  if (mmax < 1) fail(ErrorKind::InvalidArgument, "verify_lln needs mmax >= 1");
  if (vp(a, params.p) < Valuation(0)) fail(ErrorKind::InvalidTarget, "limit a = " + a.str() + " is not in Z_p");
  if (selector.target()) require_target(selector, a, "the Mahler law of large numbers");

  const auto terms = selector.terms(kmax);
  std::vector<ConvergenceTrace> traces;
  for (std::uint64_t m = 0; m <= mmax; ++m) {
    traces.push_back({"lln m=" + std::to_string(m), mahler_lambda(params, a, m), {}, TraceVerdict::NotConverging});
  }
  for (const auto& term : terms) {
    const SumDistribution d(term.n, params);
    for (std::uint64_t m = 0; m <= mmax; ++m) {
      Rational v = empirical_mahler(d, m);
      const Valuation gap = vp(v - traces[m].limit, params.p);
      traces[m].rows.push_back({term.k, term.n, std::move(v), gap});
    }
  }
  for (auto& t : traces) t = judge(std::move(t), kmax, rule);
  return traces;
}

}  // namespace padicprob::limits
