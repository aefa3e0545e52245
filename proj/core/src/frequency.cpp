#include "padicprob/frequency.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>

#include "padicprob/errors.hpp"

namespace padicprob::frequency {

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::uint64_t parse_natural(const std::string& s, std::string_view context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail(ErrorKind::Parse, "expected a natural number in selector '" + std::string(context) + "', got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "number out of range in selector '" + std::string(context) + "'");
  }
}

std::uint64_t checked_power(std::uint64_t p, int k) {
  unsigned __int128 v = 1;
  for (int i = 0; i < k; ++i) {
    v *= p;
    if (v > std::numeric_limits<std::uint64_t>::max()) {
      fail(ErrorKind::Range, "selector term p^" + std::to_string(k) + " overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t checked_affine(std::uint64_t m, std::uint64_t t, std::uint64_t pk) {
  const unsigned __int128 v = static_cast<unsigned __int128>(t) * pk + m;
  if (v > std::numeric_limits<std::uint64_t>::max()) fail(ErrorKind::Range, "selector term overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

Valuation real_gap_exponent(const Rational& d) {
  if (d.is_zero()) return Valuation::infinity();
  const Integer a = abs(d).num();
  const Integer b = abs(d).den();
  // Largest e with 10^e * a <= b, i.e. |d| <= 10^-e.
  auto e = static_cast<std::int64_t>(mpz_sizeinbase(b.get_mpz_t(), 10)) -
           static_cast<std::int64_t>(mpz_sizeinbase(a.get_mpz_t(), 10));
  auto fits = [&](std::int64_t x) {
    if (x >= 0) return ipow(Integer(10), static_cast<unsigned long>(x)) * a <= b;
    return a <= b * ipow(Integer(10), static_cast<unsigned long>(-x));
  };
  while (!fits(e)) --e;
  while (fits(e + 1)) ++e;
  return e;
}

}  // namespace

Collective::Collective(std::string alphabet, std::string labels, Source source, std::string description)
    : alphabet_(std::move(alphabet)), labels_(std::move(labels)), source_(source), description_(std::move(description)) {
  if (alphabet_.empty()) fail(ErrorKind::InvalidArgument, "empty alphabet");
  if (std::set<char>(alphabet_.begin(), alphabet_.end()).size() != alphabet_.size()) {
    fail(ErrorKind::InvalidArgument, "alphabet '" + alphabet_ + "' repeats a label");
  }
  prefix_counts_.assign(alphabet_.size(), std::vector<std::uint32_t>(labels_.size() + 1, 0));
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    const auto pos = alphabet_.find(labels_[n]);
    if (pos == std::string::npos) {
      fail(ErrorKind::AlphabetMismatch, std::string("label '") + labels_[n] + "' at position " + std::to_string(n) +
                                            " is not in alphabet '" + alphabet_ + "'");
    }
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      prefix_counts_[i][n + 1] = prefix_counts_[i][n] + (i == pos ? 1U : 0U);
    }
  }
}

Collective Collective::parse(std::string_view text, std::string alphabet, Source source, std::string description) {
  std::string labels;
  labels.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (alphabet.find(c) == std::string::npos) {
      fail(ErrorKind::Parse, "byte " + std::to_string(static_cast<unsigned>(static_cast<unsigned char>(c))) +
                                 " at offset " + std::to_string(i) + " is not a label of alphabet '" + alphabet + "'");
    }
    labels.push_back(c);
  }
  return Collective(std::move(alphabet), std::move(labels), source, std::move(description));
}

Collective Collective::from_file(const std::filesystem::path& path, std::string alphabet) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open label file " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text, std::move(alphabet), Source::File, "file:" + path.string());
}

std::uint64_t Collective::count(const LabelSet& labels, std::size_t n) const {
  if (n > labels_.size()) {
    fail(ErrorKind::InsufficientData, "collective has " + std::to_string(labels_.size()) + " labels, " +
                                          std::to_string(n) + " requested");
  }
  std::uint64_t total = 0;
  for (char label : std::set<char>(labels.begin(), labels.end())) {
    const auto pos = alphabet_.find(label);
    if (pos == std::string::npos) {
      fail(ErrorKind::AlphabetMismatch, std::string("label '") + label + "' is not in alphabet '" + alphabet_ + "'");
    }
    total += prefix_counts_[pos][n];
  }
  return total;
}

Rational relative_frequency(const Collective& c, const LabelSet& labels, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "relative frequency needs N >= 1");
  return Rational(Integer(static_cast<unsigned long>(c.count(labels, n))), Integer(static_cast<unsigned long>(n)));
}

namespace generators {

Collective alternating(std::size_t length) {
  std::string labels(length, '0');
  for (std::size_t i = 1; i < length; i += 2) labels[i] = '1';
  return Collective("01", std::move(labels), Source::Generator, "generator:alternating");
}

Collective periodic(const std::string& word, std::size_t length, std::string alphabet) {
  if (word.empty()) fail(ErrorKind::InvalidArgument, "periodic generator needs a nonempty word");
  if (alphabet.empty()) {
    const std::set<char> distinct(word.begin(), word.end());
    alphabet.assign(distinct.begin(), distinct.end());
  }
  std::string labels(length, ' ');
  for (std::size_t i = 0; i < length; ++i) labels[i] = word[i % word.size()];
  return Collective(std::move(alphabet), std::move(labels), Source::Generator, "generator:periodic(" + word + ")");
}

Collective random_bits(std::uint64_t seed, std::size_t length) {
  std::mt19937_64 engine(seed);
  std::string labels(length, '0');
  for (std::size_t i = 0; i < length; ++i) labels[i] = (engine() >> 63U) != 0 ? '1' : '0';
  return Collective("01", std::move(labels), Source::Generator, "generator:random(seed=" + std::to_string(seed) + ")");
}

Collective zeros(std::size_t length) {
  return Collective("01", std::string(length, '0'), Source::Generator, "generator:zeros");
}

Collective checkpoint_forcing(Prime p, std::int64_t l, std::uint64_t r, const std::vector<std::uint64_t>& checkpoints,
                              std::size_t length) {
  std::string labels;
  labels.reserve(length);
  std::uint64_t sum = 0;
  for (std::uint64_t n : checkpoints) {
    if (n <= labels.size()) continue;
    if (n > length) break;
    const std::uint64_t room = n - labels.size();
    std::optional<std::uint64_t> target;
    for (std::uint64_t s = sum; s <= sum + room; ++s) {
      const Integer diff = Integer(s) - Integer(r);
      if (vp(diff, p) == Valuation(l)) {
        target = s;
        break;
      }
    }
    const std::uint64_t ones = target ? *target - sum : 0;
    labels.append(ones, '1');
    labels.append(room - ones, '0');
    sum += ones;
  }
  labels.append(length - labels.size(), '0');
  std::ostringstream desc;
  desc << "generator:checkpoint(p=" << p.value() << ",l=" << l << ",r=" << r << ")";
  return Collective("01", std::move(labels), Source::Generator, desc.str());
}

}  // namespace generators

SequenceSelector SequenceSelector::affine(Prime p, std::uint64_t m, std::uint64_t t) {
  if (t == 0) fail(ErrorKind::InvalidArgument, "affine selector needs t >= 1");
  SequenceSelector s(p, Scheme::Affine);
  s.offset_ = m;
  s.scale_ = t;
  s.target_ = Rational(Integer(m));
  return s;
}

SequenceSelector SequenceSelector::truncation(Prime p, const Rational& m) {
  if (vp(m, p) < Valuation(0)) {
    fail(ErrorKind::InvalidTarget, "target " + m.str() + " is not a " + std::to_string(p.value()) + "-adic integer");
  }
  SequenceSelector s(p, Scheme::Truncation);
  s.target_ = m;
  return s;
}

SequenceSelector SequenceSelector::power(Prime p, std::uint64_t t) {
  if (t == 0) fail(ErrorKind::InvalidArgument, "power selector needs t >= 1");
  SequenceSelector s(p, Scheme::Power);
  s.scale_ = t;
  s.target_ = Rational(0);
  return s;
}

SequenceSelector SequenceSelector::explicit_list(Prime p, std::vector<std::uint64_t> terms, std::optional<Rational> target) {
  if (target && vp(*target, p) < Valuation(0)) {
    fail(ErrorKind::InvalidTarget, "target " + target->str() + " is not a p-adic integer");
  }
  SequenceSelector s(p, Scheme::Explicit);
  s.list_ = std::move(terms);
  s.target_ = std::move(target);
  return s;
}

SequenceSelector SequenceSelector::parse(std::string_view spec, Prime p) {
  const std::string s = strip_spaces(spec);
  if (s.rfind("list:", 0) == 0) {
    std::vector<std::uint64_t> terms;
    std::istringstream in(s.substr(5));
    std::string token;
    while (std::getline(in, token, ',')) terms.push_back(parse_natural(token, spec));
    if (terms.empty()) fail(ErrorKind::Parse, "empty selector list");
    return explicit_list(p, std::move(terms));
  }
  if (s.rfind("trunc(", 0) == 0 && s.size() > 7 && s.back() == ')') {
    return truncation(p, Rational::parse(s.substr(6, s.size() - 7)));
  }
  const std::string suffix = "p^k";
  if (s.size() < suffix.size() || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) {
    fail(ErrorKind::Parse, "unrecognized selector '" + std::string(spec) + "'");
  }
  std::string head = s.substr(0, s.size() - suffix.size());
  std::optional<std::uint64_t> m;
  if (const auto plus = head.find('+'); plus != std::string::npos) {
    m = parse_natural(head.substr(0, plus), spec);
    head = head.substr(plus + 1);
  }
  std::uint64_t t = 1;
  if (!head.empty()) {
    if (head.back() != '*') fail(ErrorKind::Parse, "expected 't*' before p^k in '" + std::string(spec) + "'");
    t = parse_natural(head.substr(0, head.size() - 1), spec);
  }
  return m ? affine(p, *m, t) : power(p, t);
}

std::vector<SelectorTerm> SequenceSelector::terms(int kmax, std::vector<std::string>* notes) const {
  if (kmax < 1) fail(ErrorKind::InvalidArgument, "kmax must be at least 1");
  std::vector<SelectorTerm> out;
  std::set<std::uint64_t> seen;
  auto note = [&](const std::string& msg) {
    if (notes != nullptr) notes->push_back(msg);
  };
  for (int k = 1; k <= kmax; ++k) {
    std::uint64_t n = 0;
    switch (scheme_) {
      case Scheme::Affine:
        n = checked_affine(offset_, scale_, checked_power(prime_.value(), k));
        break;
      case Scheme::Power:
        n = checked_affine(0, scale_, checked_power(prime_.value(), k));
        break;
      case Scheme::Explicit:
        if (static_cast<std::size_t>(k) > list_.size()) return out;
        n = list_[static_cast<std::size_t>(k - 1)];
        break;
      case Scheme::Truncation: {
        const Integer modulus(checked_power(prime_.value(), k));
        Integer rep = target_->num() * inverse_mod(target_->den(), modulus);
        mpz_fdiv_r(rep.get_mpz_t(), rep.get_mpz_t(), modulus.get_mpz_t());
        n = rep.get_ui();
        break;
      }
    }
    if (n == 0) {
      note("k=" + std::to_string(k) + ": zero term skipped");
      continue;
    }
    if (!seen.insert(n).second) {
      note("k=" + std::to_string(k) + ": repeated term " + std::to_string(n) + " skipped");
      continue;
    }
    out.push_back({k, n});
  }
  return out;
}

std::string SequenceSelector::str() const {
  const std::string t = scale_ == 1 ? "" : std::to_string(scale_) + "*";
  switch (scheme_) {
    case Scheme::Affine: return std::to_string(offset_) + "+" + t + "p^k";
    case Scheme::Power: return t + "p^k";
    case Scheme::Truncation: return "trunc(" + target_->str() + ")";
    case Scheme::Explicit: {
      std::string s = "list:";
      for (std::size_t i = 0; i < list_.size(); ++i) s += (i > 0 ? "," : "") + std::to_string(list_[i]);
      return s;
    }
  }
  return "";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Converged: return "ConvergenceDetected";
    case Verdict::NoLimitDetected: return "NoLimitDetected";
    case Verdict::RangeViolation: return "RangeViolation";
  }
  return "";
}

std::string_view to_string(Topology t) noexcept { return t == Topology::Padic ? "padic" : "real"; }

Valuation gap_exponent(const Rational& difference, Topology topology, Prime p) {
  return topology == Topology::Padic ? vp(difference, p) : real_gap_exponent(difference);
}

RangeBall range_ball(const SequenceSelector& s) {
  if (!s.target()) fail(ErrorKind::InvalidTarget, "selector '" + s.str() + "' has no declared target");
  const Rational& m = *s.target();
  if (m.is_zero()) return {true, std::nullopt};
  // r = 1/|m|_p = p^{v_p(m)}, i.e. radius exponent -v_p(m).
  return {false, Ball{Rational(0), -vp(m, s.prime()).value(), s.prime()}};
}

namespace {

LimitOutcome judge(FrequencyTrace trace, const SequenceSelector& s, CauchyRule rule, Topology topology,
                   std::vector<std::string> notes) {
  LimitOutcome out{Verdict::NoLimitDetected, topology, Rational(0), std::nullopt, std::move(trace), std::move(notes)};
  if (out.trace.empty()) {
    out.notes.emplace_back("selector produced no terms");
    return out;
  }
  out.last_value = out.trace.back().nu;
  if (out.trace.size() < rule.window + 1) {
    out.notes.emplace_back("fewer than window+1 terms; no limit can be detected");
    return out;
  }
  const bool cauchy = std::all_of(out.trace.end() - static_cast<std::ptrdiff_t>(rule.window), out.trace.end(),
                                  [&](const FrequencyRow& row) { return *row.gap >= Valuation(rule.threshold); });
  out.notes.emplace_back("limit detection is a Cauchy-window heuristic (window " + std::to_string(rule.window) +
                         ", threshold " + std::to_string(rule.threshold) + ")");
  if (!cauchy) return out;
  out.verdict = Verdict::Converged;
  if (topology == Topology::Padic) {
    out.value = PadicApprox::from_rational_abs(out.last_value, s.prime(), rule.threshold);
    if (s.target()) {
      const RangeBall range = range_ball(s);
      if (!range.unbounded && !range.ball->contains(out.last_value)) out.verdict = Verdict::RangeViolation;
    } else {
      out.notes.emplace_back("selector has no target; range check skipped");
    }
  }
  return out;
}

template <class Value>
FrequencyTrace build_trace(const std::vector<SelectorTerm>& terms, Topology topology, Prime p, Value value) {
  FrequencyTrace trace;
  trace.reserve(terms.size());
  for (const auto& term : terms) {
    FrequencyRow row{term.k, term.n, value(term.n), std::nullopt};
    if (!trace.empty()) row.gap = gap_exponent(row.nu - trace.back().nu, topology, p);
    trace.push_back(std::move(row));
  }
  return trace;
}

}  // namespace

LimitOutcome s_probability(const Collective& c, const LabelSet& labels, const SequenceSelector& s, int kmax,
                           CauchyRule rule, Topology topology) {
  if (rule.window < 1 || kmax < static_cast<int>(rule.window) + 1) {
    fail(ErrorKind::InvalidArgument, "s_probability needs window >= 1 and kmax >= window + 1");
  }
  std::vector<std::string> notes;
  const auto terms = s.terms(kmax, &notes);
  auto trace = build_trace(terms, topology, s.prime(),
                           [&](std::uint64_t n) { return relative_frequency(c, labels, static_cast<std::size_t>(n)); });
  return judge(std::move(trace), s, rule, topology, std::move(notes));
}

LimitOutcome conditional_s_probability(const Collective& c, const LabelSet& given, const LabelSet& event,
                                       const SequenceSelector& s, int kmax, CauchyRule rule, Topology topology) {
  if (rule.window < 1 || kmax < static_cast<int>(rule.window) + 1) {
    fail(ErrorKind::InvalidArgument, "conditional_s_probability needs window >= 1 and kmax >= window + 1");
  }
  std::vector<std::string> notes;
  const auto terms = s.terms(kmax, &notes);
  const LabelSet both = set_intersection(given, event);
  auto trace = build_trace(terms, topology, s.prime(), [&](std::uint64_t n) {
    const auto size = static_cast<std::size_t>(n);
    const std::uint64_t n_given = c.count(given, size);
    if (n_given == 0) {
      fail(ErrorKind::ConditioningOnNull, "n(A, " + std::to_string(n) + ") = 0; conditional frequency undefined");
    }
    // nu(A and B) / nu(A) = n(A and B) / n(A) exactly.
    return Rational(Integer(static_cast<unsigned long>(c.count(both, size))),
                    Integer(static_cast<unsigned long>(n_given)));
  });
  return judge(std::move(trace), s, rule, topology, std::move(notes));
}

LabelSet set_union(const LabelSet& a, const LabelSet& b) {
  std::set<char> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

LabelSet set_intersection(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  for (char c : std::set<char>(a.begin(), a.end())) {
    if (b.find(c) != std::string::npos) out.push_back(c);
  }
  return out;
}

LabelSet set_difference(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  for (char c : std::set<char>(a.begin(), a.end())) {
    if (b.find(c) == std::string::npos) out.push_back(c);
  }
  return out;
}

}  // namespace padicprob::frequency
