#include "padicprob/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "padicprob/cli/report.hpp"
#include "padicprob/cylinder.hpp"
#include "padicprob/errors.hpp"
#include "padicprob/frequency.hpp"
#include "padicprob/gvalued.hpp"
#include "padicprob/limit_theorems.hpp"
#include "padicprob/padic_approx.hpp"
#include "padicprob/valuation.hpp"

namespace padicprob::cli {

namespace {

namespace fq = padicprob::frequency;
namespace lt = padicprob::limits;
namespace cy = padicprob::cylinder;
namespace gv = padicprob::gvalued;

std::int64_t default_precision() {
  if (const char* env = std::getenv("PADICPROB_PRECISION")) {
    try {
      const auto v = std::stoll(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Parse, std::string("PADICPROB_PRECISION must be a positive integer, got '") + env + "'");
  }
  return kDefaultPrecision;
}

std::string num(const Rational& x) { return x.num().get_str(); }
std::string den(const Rational& x) { return x.den().get_str(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Common {
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--output,-o", c.output, "Write the report to this file instead of stdout");
}

// Bits come from a file or from a named generator.
struct Source {
  std::string input;
  std::string generator;
  std::size_t length = 0;
  std::uint64_t seed = 1;
  std::string alphabet = "01";
};

void add_source(CLI::App* sub, Source& s) {
  auto* in = sub->add_option("--input", s.input, "Label file (ASCII symbols, whitespace ignored)");
  auto* gen = sub->add_option("--generator", s.generator,
                              "alternating | zeros | random | periodic:<word> | checkpoint");
  in->excludes(gen);
  sub->add_option("--length", s.length, "Generated length (default: largest checkpoint)");
  sub->add_option("--seed", s.seed, "Seed for the random generator")->capture_default_str();
  sub->add_option("--alphabet", s.alphabet, "Label alphabet")->capture_default_str();
}

fq::Collective load(const Source& s, std::size_t needed,
                    const std::function<fq::Collective(std::size_t)>& checkpoint_generator = {}) {
  if (!s.input.empty()) return fq::Collective::from_file(s.input, s.alphabet);
  const std::size_t length = s.length > 0 ? s.length : needed;
  const std::string& g = s.generator;
  if (g.empty()) fail(ErrorKind::InvalidArgument, "give --input or --generator");
  if (g == "alternating") return fq::generators::alternating(length);
  if (g == "zeros") return fq::generators::zeros(length);
  if (g == "random") return fq::generators::random_bits(s.seed, length);
  if (g.rfind("periodic:", 0) == 0) return fq::generators::periodic(g.substr(9), length, s.alphabet);
  if (g == "checkpoint") {
    if (!checkpoint_generator) fail(ErrorKind::InvalidArgument, "the checkpoint generator is only available to `test`");
    return checkpoint_generator(length);
  }
  fail(ErrorKind::InvalidArgument, "unknown generator '" + g + "'");
}

std::uint64_t largest_term(const fq::SequenceSelector& s, int kmax) {
  std::uint64_t n = 0;
  for (const auto& t : s.terms(kmax)) n = std::max(n, t.n);
  return n;
}

Report trace_report(std::string schema, const std::vector<lt::ConvergenceTrace>& traces, bool with_label) {
  Report r;
  r.schema = std::move(schema);
  if (with_label) r.columns.push_back("series");
  for (const char* c : {"k", "N_k", "value_num", "value_den", "vp_to_limit"}) r.columns.emplace_back(c);
  for (const auto& t : traces) {
    for (const auto& row : t.rows) {
      std::vector<std::string> cells;
      if (with_label) cells.push_back(t.label);
      cells.insert(cells.end(), {std::to_string(row.k), std::to_string(row.n), num(row.value), den(row.value),
                                 row.vp_to_limit.str()});
      r.rows.push_back(std::move(cells));
    }
    const std::string prefix = with_label ? t.label + "." : "";
    r.summary.emplace_back(prefix + "limit", t.limit.str());
    r.summary.emplace_back(prefix + "verdict", std::string(lt::to_string(t.verdict)));
    r.summary.emplace_back(prefix + "final_valuation", t.rows.empty() ? "none" : t.final_valuation().str());
  }
  return r;
}

lt::TraceRule trace_rule(std::optional<std::int64_t> threshold) {
  lt::TraceRule rule;
  rule.threshold = threshold;
  return rule;
}

Fields echo(const CLI::App* sub) {
  Fields out;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
    const std::string name = !opt->get_lnames().empty() ? opt->get_lnames().front() : opt->get_name();
    std::string value;
    if (opt->count() > 0) {
      for (const auto& v : opt->results()) value += (value.empty() ? "" : " ") + v;
    } else {
      value = opt->get_default_str();
    }
    if (!value.empty()) out.emplace_back(name, value);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact p-adic probability: frequencies, limit theorems, integration and randomness tests", "padicprob"};
  app.require_subcommand(1);
  std::map<std::string, std::function<Report()>> handlers;
  std::map<std::string, Common> commons;

  // valuation
  auto* val = app.add_subcommand("valuation", "p-adic valuation and absolute value of a rational");
  std::uint64_t val_prime = 0;
  std::string val_x;
  val->add_option("--prime", val_prime, "Prime p")->required();
  val->add_option("x", val_x, "Rational number n or n/d")->required();
  add_common(val, commons["valuation"]);
  handlers["valuation"] = [&] {
    const Prime p(val_prime);
    const Rational x = Rational::parse(val_x);
    Report r{"valuation", {}, {"x", "v", "abs"}, {}, {}};
    r.rows.push_back({x.str(), vp(x, p).str(), abs_p(x, p).str()});
    r.summary = {{"v", vp(x, p).str()}, {"abs", abs_p(x, p).str()}};
    return r;
  };

  // freq
  auto* freq = app.add_subcommand("freq", "Relative frequencies along an index sequence N_k");
  Source freq_src;
  std::uint64_t freq_prime = 2;
  std::string freq_scheme, freq_labels = "1", freq_given, freq_topology = "padic";
  int freq_kmax = 8;
  fq::CauchyRule freq_rule;
  add_source(freq, freq_src);
  freq->add_option("--prime", freq_prime, "Prime p")->required();
  freq->add_option("--scheme", freq_scheme, "Selector: m+t*p^k | trunc(m) | t*p^k | list:N1,N2,...")->required();
  freq->add_option("--labels", freq_labels, "Event as a set of labels")->capture_default_str();
  freq->add_option("--given", freq_given, "Condition on this label set (Bayes ratio)");
  freq->add_option("--kmax", freq_kmax, "Last k")->capture_default_str();
  freq->add_option("--threshold", freq_rule.threshold, "Cauchy gap exponent threshold")->capture_default_str();
  freq->add_option("--window", freq_rule.window, "Cauchy window length")->capture_default_str();
  freq->add_option("--topology", freq_topology, "padic | real")
      ->check(CLI::IsMember({"padic", "real"}))
      ->capture_default_str();
  add_common(freq, commons["freq"]);
  handlers["freq"] = [&] {
    const Prime p(freq_prime);
    const auto selector = fq::SequenceSelector::parse(freq_scheme, p);
    const auto omega = load(freq_src, largest_term(selector, freq_kmax));
    const auto topology = freq_topology == "real" ? fq::Topology::Real : fq::Topology::Padic;
    const auto outcome = freq_given.empty()
                             ? fq::s_probability(omega, freq_labels, selector, freq_kmax, freq_rule, topology)
                             : fq::conditional_s_probability(omega, freq_given, freq_labels, selector, freq_kmax,
                                                             freq_rule, topology);
    Report r{"freq", {}, {"k", "N_k", "nu_num", "nu_den", "vp_gap"}, {}, {}};
    for (const auto& row : outcome.trace) {
      r.rows.push_back({std::to_string(row.k), std::to_string(row.n), num(row.nu), den(row.nu),
                        row.gap ? row.gap->str() : ""});
    }
    r.summary = {{"verdict", std::string(fq::to_string(outcome.verdict))},
                 {"topology", std::string(fq::to_string(outcome.topology))},
                 {"last_value", outcome.last_value.str()}};
    if (outcome.value) r.summary.emplace_back("padic_value", outcome.value->str());
    if (selector.target()) {
      const auto range = fq::range_ball(selector);
      r.summary.emplace_back("range", range.unbounded ? "unbounded" : "|x|_p <= " + range.ball->radius().str());
    }
    for (std::size_t i = 0; i < outcome.notes.size(); ++i) r.summary.emplace_back("note" + std::to_string(i + 1), outcome.notes[i]);
    return r;
  };

  // thm31
  auto* thm31 = app.add_subcommand("thm31", "Ball probabilities P(S_N in U(r)) as N -> m in Z_p");
  std::uint64_t t31_prime = 0, t31_m = 0, t31_r = 0, t31_t = 1;
  std::int64_t t31_l = 1;
  int t31_kmax = 6;
  std::string t31_scheme;
  std::optional<std::int64_t> t31_threshold;
  thm31->add_option("--prime", t31_prime, "Prime p")->required();
  thm31->add_option("--m", t31_m, "Target m")->required();
  thm31->add_option("--r", t31_r, "Ball center r")->required();
  thm31->add_option("--l", t31_l, "Ball depth l (radius p^-l)")->capture_default_str();
  thm31->add_option("--t", t31_t, "Scale t in N_k = m + t p^k")->capture_default_str();
  thm31->add_option("--scheme", t31_scheme, "Selector overriding m + t p^k");
  thm31->add_option("--kmax", t31_kmax, "Last k")->capture_default_str();
  thm31->add_option("--threshold", t31_threshold, "Valuation required at the last k (default kmax/2)");
  add_common(thm31, commons["thm31"]);
  handlers["thm31"] = [&] {
    const Prime p(t31_prime);
    const auto selector = t31_scheme.empty() ? fq::SequenceSelector::affine(p, t31_m, t31_t)
                                             : fq::SequenceSelector::parse(t31_scheme, p);
    auto trace = lt::verify_thm31(p, t31_m, t31_r, t31_l, selector, t31_kmax, trace_rule(t31_threshold));
    return trace_report("thm31", {trace}, false);
  };

  // eq5
  auto* eq5 = app.add_subcommand("eq5", "P(p | S_N) and its complement as N -> 1");
  std::uint64_t eq5_prime = 0;
  int eq5_kmax = 5;
  std::string eq5_scheme = "1+p^k";
  std::optional<std::int64_t> eq5_threshold;
  eq5->add_option("--prime", eq5_prime, "Prime p")->required();
  eq5->add_option("--scheme", eq5_scheme, "Selector toward 1")->capture_default_str();
  eq5->add_option("--kmax", eq5_kmax, "Last k")->capture_default_str();
  eq5->add_option("--threshold", eq5_threshold, "Valuation required at the last k (default kmax/2)");
  add_common(eq5, commons["eq5"]);
  handlers["eq5"] = [&] {
    const Prime p(eq5_prime);
    const auto res = lt::verify_eq5(p, fq::SequenceSelector::parse(eq5_scheme, p), eq5_kmax, trace_rule(eq5_threshold));
    Report r = trace_report("eq5", {res.divisible, res.complement}, true);
    r.summary.emplace_back("complement_identity", res.complement_identity ? "holds" : "fails");
    return r;
  };

  // thm32
  auto* thm32 = app.add_subcommand("thm32", "Ball probabilities as N -> p");
  std::uint64_t t32_prime = 0, t32_r = 0;
  std::int64_t t32_l = 2;
  int t32_kmax = 6;
  std::string t32_scheme;
  std::optional<std::int64_t> t32_threshold;
  thm32->add_option("--prime", t32_prime, "Prime p")->required();
  thm32->add_option("--r", t32_r, "Ball center r in 0..p")->required();
  thm32->add_option("--l", t32_l, "Ball depth l")->capture_default_str();
  thm32->add_option("--scheme", t32_scheme, "Selector toward p (default p + p^k)");
  thm32->add_option("--kmax", t32_kmax, "Last k")->capture_default_str();
  thm32->add_option("--threshold", t32_threshold, "Valuation required at the last k (default kmax/2)");
  add_common(thm32, commons["thm32"]);
  handlers["thm32"] = [&] {
    const Prime p(t32_prime);
    const auto selector = t32_scheme.empty() ? fq::SequenceSelector::affine(p, p.value())
                                             : fq::SequenceSelector::parse(t32_scheme, p);
    return trace_report("thm32", {lt::verify_thm32(p, t32_r, t32_l, selector, t32_kmax, trace_rule(t32_threshold))},
                        false);
  };

  // lln
  auto* lln = app.add_subcommand("lln", "Mahler coefficients E[C(S_N, m)] against (1-q)^m C(a, m)");
  std::uint64_t lln_prime = 0, lln_mmax = 5;
  std::string lln_q = "1/2", lln_a, lln_scheme;
  int lln_kmax = 8;
  std::optional<std::int64_t> lln_threshold;
  lln->add_option("--prime", lln_prime, "Prime p")->required();
  lln->add_option("--q", lln_q, "P(xi = 0)")->capture_default_str();
  lln->add_option("--a", lln_a, "Limit a in Z_p (rational)")->required();
  lln->add_option("--scheme", lln_scheme, "Selector toward a (default trunc(a))");
  lln->add_option("--mmax", lln_mmax, "Largest m")->capture_default_str();
  lln->add_option("--kmax", lln_kmax, "Last k")->capture_default_str();
  lln->add_option("--threshold", lln_threshold, "Valuation required at the last k (default kmax/2)");
  add_common(lln, commons["lln"]);
  handlers["lln"] = [&] {
    const Prime p(lln_prime);
    const Rational a = Rational::parse(lln_a);
    const auto params = lt::BernoulliParams::make(p, Rational::parse(lln_q));
    const auto selector = lln_scheme.empty() ? fq::SequenceSelector::truncation(p, a)
                                             : fq::SequenceSelector::parse(lln_scheme, p);
    return trace_report("lln", lt::verify_lln(params, a, selector, lln_mmax, lln_kmax, trace_rule(lln_threshold)),
                        true);
  };

  // clt
  auto* clt = app.add_subcommand("clt", "Coefficients of psi(z, a) = cosh(z / sqrt(a))^a");
  std::string clt_a;
  std::size_t clt_order = 8;
  std::uint64_t clt_prime = 0;
  std::int64_t clt_precision = 0;
  clt->add_option("--a", clt_a, "Exponent: nonzero integer (exact) or rational p-adic unit")->required();
  clt->add_option("--order", clt_order, "Truncation order")->capture_default_str();
  clt->add_option("--prime", clt_prime, "Prime p (needed for a non-integer a)");
  clt->add_option("--precision", clt_precision, "Relative p-adic digits (default PADICPROB_PRECISION or 32)");
  add_common(clt, commons["clt"]);
  handlers["clt"] = [&] {
    const Rational a = Rational::parse(clt_a);
    Report r{"clt", {}, {"power", "coefficient"}, {}, {}};
    if (a.is_integer()) {
      const auto psi = lt::clt_charfun(a.num().get_si(), clt_order);
      for (std::size_t i = 0; i <= psi.order(); ++i) r.rows.push_back({std::to_string(i), psi[i].str()});
      r.summary = {{"route", "exact"}};
    } else {
      if (clt_prime == 0) fail(ErrorKind::InvalidArgument, "a non-integer a needs --prime");
      const Prime p(clt_prime);
      const auto precision = clt_precision > 0 ? clt_precision : default_precision();
      const auto psi = lt::clt_charfun(PadicApprox::from_rational(a, p, precision), clt_order);
      for (std::size_t i = 0; i <= psi.order(); ++i) r.rows.push_back({std::to_string(i), psi[i].str()});
      r.summary = {{"route", "padic"}};
    }
    return r;
  };

  // mahler
  auto* mahler = app.add_subcommand("mahler", "Mahler coefficients of cosh z (bounded-measure desk check)");
  std::uint64_t mah_prime = 3;
  std::size_t mah_order = 30;
  std::string mah_series = "cosh";
  std::uint64_t mah_n = 1;
  std::string mah_q = "1/2";
  mahler->add_option("--prime", mah_prime, "Odd prime p")->capture_default_str();
  mahler->add_option("--order", mah_order, "Largest m")->capture_default_str();
  mahler->add_option("--series", mah_series, "cosh | charfun (with --n, --q)")
      ->check(CLI::IsMember({"cosh", "charfun"}))
      ->capture_default_str();
  mahler->add_option("--n", mah_n, "Number of trials for --series charfun")->capture_default_str();
  mahler->add_option("--q", mah_q, "P(xi = 0) for --series charfun")->capture_default_str();
  add_common(mahler, commons["mahler"]);
  handlers["mahler"] = [&] {
    const Prime p(mah_prime);
    Report r{"mahler", {}, {"m", "lambda", "abs"}, {}, {}};
    if (mah_series == "cosh") {
      const auto rep = lt::gamma1_bounded_check(p, mah_order);
      for (std::size_t m = 0; m < rep.lambdas.size(); ++m) {
        r.rows.push_back({std::to_string(m), rep.lambdas[m].str(), abs_p(rep.lambdas[m], p).str()});
      }
      r.summary = {{"bounded", rep.bounded ? "yes" : "no"}, {"max_abs", rep.max_abs.str()}, {"note", rep.note}};
    } else {
      const auto params = lt::BernoulliParams::make(p, Rational::parse(mah_q));
      const auto lambdas = lt::charfun_to_mahler(lt::charfun(mah_n, params, mah_order), mah_order);
      for (std::size_t m = 0; m < lambdas.size(); ++m) {
        r.rows.push_back({std::to_string(m), lambdas[m].str(), abs_p(lambdas[m], p).str()});
      }
    }
    return r;
  };

  // integrate
  auto* integ = app.add_subcommand("integrate", "Riemann sums of a continuous map Z_q -> Q_p");
  std::uint64_t int_q = 2, int_prime = 3;
  std::string int_function = "digits";
  std::size_t int_dmin = 1, int_dmax = 12;
  integ->add_option("--q", int_q, "Domain prime q")->capture_default_str();
  integ->add_option("--prime", int_prime, "Value prime p (p != q)")->capture_default_str();
  integ->add_option("--function", int_function, "digits | constant:<c> | indicator:<word>")->capture_default_str();
  integ->add_option("--depth-min", int_dmin, "First depth")->capture_default_str();
  integ->add_option("--depth-max", int_dmax, "Last depth")->capture_default_str();
  add_common(integ, commons["integrate"]);
  handlers["integrate"] = [&] {
    const Prime q(int_q);
    const Prime p(int_prime);
    const cy::UniformMeasure mu(q, p);
    cy::ContinuousMap f;
    if (int_function == "digits") {
      // f(x) = sum_j x_j p^j; the tail beyond depth n is a multiple of p^n.
      f.evaluate = [p](const cy::Word& w) {
        Integer s = 0;
        for (std::size_t j = w.size(); j-- > 0;) s = s * static_cast<unsigned long>(p.value()) + w[j];
        return Rational(s);
      };
      f.oscillation = [p](std::size_t n) { return PadicAbs(p, -static_cast<std::int64_t>(n)); };
    } else if (int_function.rfind("constant:", 0) == 0) {
      const Rational c = Rational::parse(int_function.substr(9));
      f.evaluate = [c](const cy::Word&) { return c; };
      f.oscillation = [p](std::size_t) { return PadicAbs::zero(p); };
    } else if (int_function.rfind("indicator:", 0) == 0) {
      const auto set = cy::Clopen::parse(int_function.substr(10), q);
      const std::size_t depth = set.max_depth();
      f.evaluate = [set, depth](const cy::Word& w) {
        if (w.size() < depth) fail(ErrorKind::InsufficientData, "indicator needs depth >= " + std::to_string(depth));
        return set.contains(w) ? Rational(1) : Rational(0);
      };
      f.oscillation = [p, depth](std::size_t n) { return n >= depth ? PadicAbs::zero(p) : PadicAbs::one(p); };
    } else {
      fail(ErrorKind::InvalidArgument, "unknown function '" + int_function + "'");
    }
    Report r{"integrate", {}, {"depth", "value_num", "value_den", "error_exponent", "padic", "norm_bound"}, {}, {}};
    for (std::size_t d = int_dmin; d <= int_dmax; ++d) {
      const auto res = cy::integrate_continuous(mu, f, d, default_precision());
      r.rows.push_back({std::to_string(d), num(res.riemann_sum), den(res.riemann_sum), res.error_bound.valuation().str(),
                        res.value.str(), res.norm_bound_holds ? "holds" : "fails"});
    }
    return r;
  };

  // test
  auto* test = app.add_subcommand("test", "Sphere-event randomness test of a bit sequence");
  Source test_src;
  std::uint64_t test_prime = 0, test_r = 0;
  std::int64_t test_l = 1, test_eps = 2;
  std::string test_scheme = "1+p^k", test_mode = "sphere";
  int test_kmin = 1, test_kmax = 6;
  add_source(test, test_src);
  test->add_option("--prime", test_prime, "Prime p")->required();
  test->add_option("--l", test_l, "Sphere depth l (radius p^-l)")->capture_default_str();
  test->add_option("--r", test_r, "Sphere center r")->capture_default_str();
  test->add_option("--scheme", test_scheme, "Checkpoint selector")->capture_default_str();
  test->add_option("--eps-exp", test_eps, "Significance eps = p^-E")->capture_default_str();
  test->add_option("--kmin", test_kmin, "First k")->capture_default_str();
  test->add_option("--kmax", test_kmax, "Last k")->capture_default_str();
  test->add_option("--mode", test_mode, "sphere | residue")
      ->check(CLI::IsMember({"sphere", "residue"}))
      ->capture_default_str();
  add_common(test, commons["test"]);
  handlers["test"] = [&] {
    const Prime p(test_prime);
    const auto selector = fq::SequenceSelector::parse(test_scheme, p);
    std::vector<std::uint64_t> checkpoints;
    for (const auto& t : selector.terms(test_kmax)) checkpoints.push_back(t.n);
    const auto omega = load(test_src, largest_term(selector, test_kmax), [&](std::size_t length) {
      return fq::generators::checkpoint_forcing(p, test_l, test_r, checkpoints, length);
    });
    const lt::RandomnessConfig config{p,         test_l,    test_r,    selector, test_eps,
                                      test_kmin, test_kmax, test_mode == "residue" ? lt::SphereMode::Residue
                                                                                   : lt::SphereMode::Sphere};
    const auto res = lt::randomness_test(omega, config);
    Report r{"test", {}, {"k", "N_k", "prob_num", "prob_den", "prob_vp", "S", "hit"}, {}, {}};
    for (const auto& row : res.rows) {
      r.rows.push_back({std::to_string(row.k), std::to_string(row.n), num(row.probability), den(row.probability),
                        row.probability_valuation.str(), std::to_string(row.sum), row.hit ? "1" : "0"});
    }
    r.summary = {{"verdict", res.rejected() ? "Rejected" : "NotRejected"},
                 {"persistent_hit", res.verdict == lt::TestVerdict::PersistentHit ? "yes" : "no"},
                 {"k_eps", res.k_eps ? std::to_string(*res.k_eps) : "none"},
                 {"first_hit", res.first_hit ? std::to_string(*res.first_hit) : "none"}};
    if (res.union_probability) {
      r.summary.emplace_back("union_probability", res.union_probability->str());
      r.summary.emplace_back("union_vp", res.union_valuation->str());
      r.summary.emplace_back("min_part_vp", res.min_part_valuation->str());
    }
    for (std::size_t i = 0; i < res.notes.size(); ++i) r.summary.emplace_back("note" + std::to_string(i + 1), res.notes[i]);
    return r;
  };

  // generate
  auto* gen = app.add_subcommand("generate", "Write a bit sequence file");
  std::string gen_kind = "checkpoint", gen_scheme = "1+p^k", gen_word;
  std::uint64_t gen_prime = 3, gen_r = 0, gen_seed = 1;
  std::int64_t gen_l = 1;
  int gen_kmax = 6;
  std::size_t gen_length = 0;
  std::string gen_output;
  gen->add_option("--kind", gen_kind, "checkpoint | alternating | zeros | random | periodic")
      ->check(CLI::IsMember({"checkpoint", "alternating", "zeros", "random", "periodic"}))
      ->capture_default_str();
  gen->add_option("--prime", gen_prime, "Prime p (checkpoint)")->capture_default_str();
  gen->add_option("--l", gen_l, "Sphere depth (checkpoint)")->capture_default_str();
  gen->add_option("--r", gen_r, "Sphere center (checkpoint)")->capture_default_str();
  gen->add_option("--scheme", gen_scheme, "Checkpoint selector")->capture_default_str();
  gen->add_option("--kmax", gen_kmax, "Last checkpoint index")->capture_default_str();
  gen->add_option("--length", gen_length, "Number of bits (default: largest checkpoint)");
  gen->add_option("--seed", gen_seed, "Seed (random)")->capture_default_str();
  gen->add_option("--word", gen_word, "Word (periodic)");
  gen->add_option("--output,-o", gen_output, "Output file (default stdout)");

  // gdist
  auto* gd = app.add_subcommand("gdist", "Group-valued distributions: axiom checks, convolution, significance");
  std::string gd_input, gd_convolve, gd_given, gd_event, gd_value, gd_eps;
  gd->add_option("--input", gd_input, "Distribution JSON")->required();
  gd->add_option("--convolve", gd_convolve, "Second distribution JSON to convolve with");
  gd->add_option("--given", gd_given, "Conditioning event: comma-separated outcomes");
  gd->add_option("--event", gd_event, "Event for the conditional: comma-separated outcomes");
  gd->add_option("--value", gd_value, "Group element to classify");
  gd->add_option("--eps", gd_eps, "Significance radius eps (rational)");
  add_common(gd, commons["gdist"]);
  handlers["gdist"] = [&] {
    const auto d = gv::GDistribution::from_json(read_file(gd_input));
    const auto& g = d.context();
    Report r{"gdist", {}, {"item", "result", "detail"}, {}, {}};
    auto labels = [](const std::string& s) {
      std::vector<std::string> out;
      std::istringstream in(s);
      std::string t;
      while (std::getline(in, t, ',')) out.push_back(t);
      return out;
    };
    if (d.size() <= 20) {
      const auto field = gv::power_set(d.size());
      const auto add = gv::additivity_check(d, field);
      r.rows.push_back({"additivity", add.holds ? "holds" : "fails", std::to_string(add.pairs_checked) + " pairs"});
      const auto unit = gv::unit_axiom_check(d, field);
      r.rows.push_back({"unit_axiom", unit.holds ? "holds" : "fails",
                        "sup=" + unit.sup.str() + " rho(E)=" + unit.rho_total.str()});
    }
    r.rows.push_back({"total", g.element_str(d.total()), ""});
    if (!gd_convolve.empty()) {
      const auto c = gv::convolve(d, gv::GDistribution::from_json(read_file(gd_convolve)));
      for (std::size_t i = 0; i < c.size(); ++i) r.rows.push_back({"convolution", c.outcomes()[i], g.element_str(c.weights()[i])});
    }
    if (!gd_given.empty() || !gd_event.empty()) {
      const auto value = gv::conditional(d, d.subset_of(labels(gd_given)), d.subset_of(labels(gd_event)));
      r.rows.push_back({"conditional", g.element_str(value), ""});
    }
    if (!gd_value.empty()) {
      if (gd_eps.empty()) fail(ErrorKind::InvalidArgument, "--value needs --eps");
      const gv::SignificanceNeighborhood v{g, Rational::parse(gd_eps)};
      const auto x = g.parse_element(gd_value);
      r.rows.push_back({"significance", std::string(gv::to_string(gv::significance_classify(x, v))),
                        "rho=" + g.rho(x).str()});
    }
    return r;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::Parse);
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const Fields config = echo(chosen);
  err << "# padicprob " << name;
  for (const auto& [k, v] : config) err << ' ' << k << '=' << v;
  err << '\n';

  try {
    if (name == "generate") {
      const Prime p(gen_prime);
      const auto selector = fq::SequenceSelector::parse(gen_scheme, p);
      std::vector<std::uint64_t> checkpoints;
      for (const auto& t : selector.terms(gen_kmax)) checkpoints.push_back(t.n);
      const std::size_t length = gen_length > 0 ? gen_length : largest_term(selector, gen_kmax);
      fq::Collective c = gen_kind == "checkpoint" ? fq::generators::checkpoint_forcing(p, gen_l, gen_r, checkpoints, length)
                         : gen_kind == "alternating" ? fq::generators::alternating(length)
                         : gen_kind == "zeros"       ? fq::generators::zeros(length)
                         : gen_kind == "random"      ? fq::generators::random_bits(gen_seed, length)
                                                     : fq::generators::periodic(gen_word, length, "01");
      if (gen_output.empty()) {
        out << c.labels() << '\n';
      } else {
        std::ofstream f(gen_output, std::ios::binary);
        if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + gen_output);
        f << c.labels() << '\n';
      }
      err << "# wrote " << c.size() << " labels\n";
      return 0;
    }

    Report report = handlers.at(name)();
    report.config = config;
    const Common& common = commons.at(name);
    const Format format = common.format == "json" ? Format::Json : Format::Csv;
    if (common.output.empty()) {
      write_report(report, format, out);
    } else {
      std::ofstream f(common.output, std::ios::binary);
      if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + common.output);
      write_report(report, format, f);
    }
    for (const auto& [k, v] : report.summary) err << k << ": " << v << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace padicprob::cli
