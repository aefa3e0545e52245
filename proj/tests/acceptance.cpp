// Acceptance runner: one PASS/FAIL line per criterion with its wall time.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "padicprob/cylinder.hpp"
#include "padicprob/frequency.hpp"
#include "padicprob/limit_theorems.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace padicprob;
using frequency::SequenceSelector;

namespace {

struct Check {
  std::vector<std::string> problems;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Check&)> body;
};

Rational frac(long n, long d) { return Rational(Integer(n), Integer(d)); }

std::string vp_text(Valuation v) { return v.str(); }

// Ball limit toward m: p = 3, m = 2, N_k = 2 + 3^k.
void ball_limit(Check& c) {
  const Prime p(3);
  const auto selector = SequenceSelector::affine(p, 2);
  int traces = 0, brute_checked = 0;
  for (std::int64_t l : {1, 2}) {
    for (std::uint64_t r : {0, 1, 2}) {
      const auto t = limits::verify_thm31(p, 2, r, l, selector, 7);
      const std::string tag = "l=" + std::to_string(l) + " r=" + std::to_string(r);
      c.require(t.limit.mpq() == oracle::frac(oracle::binomial(2, r), 4), tag + ": wrong limit " + t.limit.str());
      c.require(t.rows.size() == 7, tag + ": expected 7 rows");
      c.require(t.non_decreasing(), tag + ": distance valuations decrease");
      c.require(!t.rows.empty() && t.rows.back().k == 7 && t.rows.back().vp_to_limit >= Valuation(5),
                tag + ": final valuation " + vp_text(t.final_valuation()) + " < 5");
      for (const auto& row : t.rows) {
        if (row.n > 20) continue;
        const auto brute = oracle::brute_prob_ball(static_cast<unsigned>(row.n), 3, static_cast<unsigned>(l), r);
        c.require(row.value.mpq() == brute, tag + ": N=" + std::to_string(row.n) + " disagrees with enumeration");
        ++brute_checked;
      }
      if (l == 1 && r == 1) {
        c.require(t.rows.front().n == 5 && t.rows.front().value == frac(5, 16), "spot value at N=5 is not 5/16");
      }
      ++traces;
    }
  }
  c.detail << traces << " traces, " << brute_checked << " values enumerated over 2^N outcomes";
}

// Divisibility events tend to 1/2 along N_k = 1 + p^k.
void divisibility_limit(Check& c) {
  for (std::uint64_t pv : {3, 5}) {
    const Prime p(pv);
    const auto out = limits::verify_eq5(p, SequenceSelector::affine(p, 1), 5);
    const std::string tag = "p=" + std::to_string(pv);
    c.require(out.divisible.limit == frac(1, 2) && out.complement.limit == frac(1, 2), tag + ": limits are not 1/2");
    c.require(out.divisible.final_valuation() >= Valuation(4), tag + ": divisible final valuation " +
                                                                   vp_text(out.divisible.final_valuation()));
    c.require(out.complement.final_valuation() >= Valuation(4), tag + ": complement final valuation " +
                                                                    vp_text(out.complement.final_valuation()));
    c.require(out.complement_identity, tag + ": complement identity fails");
    for (std::size_t i = 0; i < out.divisible.rows.size(); ++i) {
      c.require(out.divisible.rows[i].value + out.complement.rows[i].value == Rational(1),
                tag + ": probabilities do not sum to 1 at k=" + std::to_string(out.divisible.rows[i].k));
    }
    c.detail << tag << " final v=(" << out.divisible.final_valuation() << "," << out.complement.final_valuation() << ") ";
  }
}

// Mahler law of large numbers toward a = -1 along N_k = 3^k - 1.
void mahler_lln(Check& c) {
  const Prime p(3);
  const auto params = limits::BernoulliParams::symmetric(p);
  const auto traces = limits::verify_lln(params, Rational(-1), SequenceSelector::truncation(p, Rational(-1)), 5, 8);
  c.require(traces.size() == 6, "expected traces for m = 0..5");
  for (std::size_t m = 0; m < traces.size(); ++m) {
    const auto& t = traces[m];
    c.require(t.limit == pow(frac(-1, 2), static_cast<long>(m)), t.label + ": limit is not (-1/2)^m");
    c.require(t.rows.size() == 8, t.label + ": expected 8 rows");
    for (const auto& row : t.rows) {
      c.require(row.vp_to_limit >= Valuation(row.k - 1),
                t.label + ": v=" + vp_text(row.vp_to_limit) + " < k-1 at k=" + std::to_string(row.k));
      mpq_class closed = mpq_class(oracle::binomial(row.n, m));
      for (std::size_t i = 0; i < m; ++i) closed /= 2;
      c.require(row.value.mpq() == closed, t.label + ": value differs from (1-q)^m C(N,m)");
    }
  }
  // Exhaustive expectation over all 2^N outcomes for N_k = 2, 8, 26.
  for (unsigned n : {2U, 8U, 26U}) {
    const auto hist = oracle::brute_popcount_histogram(n);
    for (unsigned long m = 0; m <= 5; ++m) {
      mpz_class acc = 0;
      for (unsigned long s = m; s <= n; ++s) acc += hist[s] * oracle::binomial(s, m);
      const mpq_class brute = oracle::frac(acc, oracle::power(2, n));
      c.require(limits::empirical_mahler(params, n, m).mpq() == brute,
                "N=" + std::to_string(n) + " m=" + std::to_string(m) + ": empirical Mahler differs from enumeration");
    }
  }
  c.detail << "m<=5, k<=8; final v:";
  for (const auto& t : traces) c.detail << ' ' << t.final_valuation();
}

// Finite boundedness check of the cosh Mahler coefficients.
void gamma1_check(Check& c) {
  const auto lambdas = limits::charfun_to_mahler(series::cosh(30), 30);
  c.require(lambdas.size() == 31, "expected 31 coefficients");
  for (const auto& l : lambdas) {
    c.require(l == Rational(1) || l == Rational(0) || l == frac(1, 2) || l == frac(-1, 2),
              "coefficient " + l.str() + " outside {1, 0, 1/2, -1/2}");
  }
  for (std::uint64_t pv : {3, 5, 7}) {
    const auto rep = limits::gamma1_bounded_check(Prime(pv), 30);
    c.require(rep.bounded && rep.max_abs <= PadicAbs::one(Prime(pv)), "p=" + std::to_string(pv) + ": not bounded");
    c.require(rep.lambdas == lambdas, "p=" + std::to_string(pv) + ": coefficients differ");
  }
  c.detail << "finite check of 31 coefficients for p in {3,5,7}, not a proof";
}

// Sphere randomness test along N_k = 1 + 3^k at epsilon = 3^-2.
void randomness(Check& c) {
  const Prime p(3);
  const auto selector = SequenceSelector::parse("1+p^k", p);
  std::vector<std::uint64_t> cps;
  for (const auto& t : selector.terms(6)) cps.push_back(t.n);
  const limits::RandomnessConfig cfg{p, 1, 0, selector, 2, 1, 6, limits::SphereMode::Sphere};

  const auto adversary = frequency::generators::checkpoint_forcing(p, 1, 0, cps, cps.back());
  const auto out = limits::randomness_test(adversary, cfg);
  c.require(out.verdict == limits::TestVerdict::PersistentHit && out.rejected(),
            std::string("adversarial sequence verdict ") + std::string(limits::to_string(out.verdict)));
  c.require(out.k_eps.has_value(), "no k_eps on the computed window");
  if (out.k_eps) {
    for (const auto& row : out.rows) {
      if (row.k < *out.k_eps) continue;
      c.require(row.probability_valuation > Valuation(cfg.eps_exponent),
                "|P| not below epsilon at k=" + std::to_string(row.k));
      // Independent recomputation of the sphere probability.
      mpz_class hits = 0;
      for (unsigned long j = 1; j <= row.n; ++j) {
        if (oracle::vp(mpz_class(j), 3) == 1) hits += oracle::binomial(row.n, j);
      }
      c.require(row.probability.mpq() == oracle::frac(hits, oracle::power(2, row.n)),
                "sphere probability differs from direct sum at k=" + std::to_string(row.k));
    }
  }
  const auto zeros = limits::randomness_test(frequency::generators::zeros(cps.back()), cfg);
  c.require(zeros.verdict == limits::TestVerdict::NotRejected, "all-zeros sequence was rejected");
  c.detail << "adversary " << limits::to_string(out.verdict) << " (k_eps=" << (out.k_eps ? *out.k_eps : -1)
           << "), zeros " << limits::to_string(zeros.verdict);
  if (out.union_valuation) c.detail << ", union v=" << *out.union_valuation << " min part v=" << *out.min_part_valuation;
}

// Riemann-sum integration over Z_2 with values in Q_3, plus step functions.
void integration(Check& c) {
  using namespace padicprob::cylinder;
  const Prime two(2), three(3);
  const UniformMeasure mu(two, three);
  const ContinuousMap digits{[](const Word& x) {
                               Rational s(0), w(1);
                               for (auto d : x) {
                                 s += w * Rational(static_cast<long>(d));
                                 w *= Rational(3);
                               }
                               return s;
                             },
                             [three](std::size_t n) { return PadicAbs(three, -static_cast<std::int64_t>(n)); }};
  for (std::size_t depth = 4; depth <= 12; ++depth) {
    const auto r = integrate_continuous(mu, digits, depth);
    const std::string tag = "depth " + std::to_string(depth);
    c.require(r.value.agrees_with(frac(-1, 4)), tag + ": value does not agree with -1/4");
    c.require(vp(r.riemann_sum - frac(-1, 4), three) >= Valuation(static_cast<std::int64_t>(depth)),
              tag + ": gap to -1/4 too large");
    c.require(r.error_bound.valuation() >= Valuation(static_cast<std::int64_t>(depth)), tag + ": error exponent < depth");
  }
  const auto u0 = Clopen::parse("0", two), u1 = Clopen::parse("1", two);
  c.require(integrate_step(mu, StepFunction(two, {{u1, Rational(1)}})) == frac(1, 2), "indicator of U_1");
  c.require(integrate_step(mu, StepFunction(two, {{u0, Rational(3)}, {u1, Rational(-1)}})) == Rational(1),
            "3 I_U0 - I_U1");
  c.require(integrate_step(mu, StepFunction(two)) == Rational(0), "zero function");
  const auto fuzz = props::step_bound(606, 1000);
  c.require(fuzz.ok(), "step bound fuzz: " + fuzz.first_failure);
  c.detail << "depths 4..12, " << fuzz.cases << " fuzzed step functions";
}

void property_suites(Check& c) {
  const std::vector<std::pair<std::string, props::Outcome>> suites{
      {"ultrametric", props::ultrametric(701, 1000)},
      {"frequency", props::frequency_identities(702, 1000)},
      {"clopen", props::clopen_laws(703, 1000)},
      {"convolution", props::convolution_bruteforce(704, 200)},
      {"kummer", props::kummer(200)},
  };
  for (const auto& [name, o] : suites) {
    c.require(o.ok(), name + ": " + o.first_failure);
    c.detail << name << '=' << o.cases << ' ';
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ball limit toward m (p=3, m=2, l in {1,2}, r in {0,1,2}, k<=7)", 10.0, ball_limit},
      {2, "divisibility events tend to 1/2 (p in {3,5}, k<=5)", 5.0, divisibility_limit},
      {3, "Mahler law of large numbers (p=3, a=-1, m<=5, k<=8)", 5.0, mahler_lln},
      {4, "cosh Mahler coefficients bounded (p in {3,5,7}, 31 terms)", 1.0, gamma1_check},
      {5, "sphere randomness test (p=3, eps=3^-2)", 5.0, randomness},
      {6, "integration over Z_2 into Q_3 and step functions", 60.0, integration},
      {7, "property suites", 60.0, property_suites},
  };
  int failed = 0;
  double total = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.problems.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += seconds;
    if (seconds > cr.budget_seconds) check.problems.push_back("over the time budget");
    const bool ok = check.problems.empty();
    failed += ok ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / %.0f s", seconds, cr.budget_seconds);
    std::cout << (ok ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << " (" << timing << ") "
              << check.detail.str() << '\n';
    for (const auto& p : check.problems) std::cout << "     - " << p << '\n';
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3f s", total);
  std::cout << (failed == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(failed)) << " (total " << timing << ")\n";
  return failed;
}
