#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padicprob/padic_approx.hpp"
#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"
#include "padicprob/valuation.hpp"

/// Frequency probabilities of label collectives along index sequences
/// {N_k} that converge in a chosen topology (p-adic or real).
///
/// Relative frequencies nu_N = n/N are exact rationals, so additivity,
/// the difference rule and Bayes' formula hold exactly at every finite N;
/// only the passage to the limit is heuristic (see CauchyRule).
namespace padicprob::frequency {

/// A set of labels, one character per label.
using LabelSet = std::string;

enum class Source { InMemory, File, Generator };

/// A finite prefix of a label stream over a finite alphabet.
class Collective {
 public:
  /// Throws Error(AlphabetMismatch) when a label is outside the alphabet.
  Collective(std::string alphabet, std::string labels, Source source = Source::InMemory,
             std::string description = "memory");

  /// ASCII symbols from the alphabet; whitespace is skipped and any other
  /// byte raises Error(Parse).
  static Collective parse(std::string_view text, std::string alphabet, Source source = Source::InMemory,
                          std::string description = "memory");
  static Collective from_file(const std::filesystem::path& path, std::string alphabet = "01");

  const std::string& alphabet() const noexcept { return alphabet_; }
  const std::string& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  Source source() const noexcept { return source_; }
  const std::string& description() const noexcept { return description_; }

  /// n(A, N): occurrences of labels from A among the first N.
  /// Throws Error(InsufficientData) when N exceeds the stored prefix and
  /// Error(AlphabetMismatch) when A names a label outside the alphabet.
  std::uint64_t count(const LabelSet& labels, std::size_t n) const;
  /// Number of '1' labels among the first N (the partial sum S_N of a bit stream).
  std::uint64_t ones(std::size_t n) const { return count("1", n); }

 private:
  std::string alphabet_;
  std::string labels_;
  Source source_;
  std::string description_;
  // prefix_counts_[i][n] = occurrences of alphabet_[i] among the first n labels.
  std::vector<std::vector<std::uint32_t>> prefix_counts_;
};

/// nu_N(A) = n(A, N) / N.
Rational relative_frequency(const Collective& c, const LabelSet& labels, std::size_t n);

namespace generators {

/// 0,1,0,1,...
Collective alternating(std::size_t length);
/// The word repeated; the alphabet is the word's distinct labels unless given.
Collective periodic(const std::string& word, std::size_t length, std::string alphabet = "");
/// Seeded pseudo-random bits (mt19937_64), reproducible across platforms.
Collective random_bits(std::uint64_t seed, std::size_t length);
/// All zeros.
Collective zeros(std::size_t length);
/// Bits whose partial sums land on the p-adic sphere |S - r|_p = p^{-l} at
/// every reachable checkpoint N_k: between checkpoints the generator writes
/// just enough ones to reach the smallest admissible sum, then zeros.
Collective checkpoint_forcing(Prime p, std::int64_t l, std::uint64_t r, const std::vector<std::uint64_t>& checkpoints,
                              std::size_t length);

}  // namespace generators

enum class Scheme { Affine, Truncation, Explicit, Power };

struct SelectorTerm {
  int k;
  std::uint64_t n;
  friend bool operator==(const SelectorTerm&, const SelectorTerm&) = default;
};

/// An index scheme {N_k} of naturals converging to a target m in Z_p.
class SequenceSelector {
 public:
  /// N_k = m + t p^k.
  static SequenceSelector affine(Prime p, std::uint64_t m, std::uint64_t t = 1);
  /// N_k = m mod p^k (canonical representative); m must lie in Z_p.
  static SequenceSelector truncation(Prime p, const Rational& m);
  /// N_k = t p^k, converging to 0.
  static SequenceSelector power(Prime p, std::uint64_t t = 1);
  /// Caller-supplied terms N_1, N_2, ...; the target is optional.
  static SequenceSelector explicit_list(Prime p, std::vector<std::uint64_t> terms,
                                        std::optional<Rational> target = std::nullopt);

  /// Grammar: "m+t*p^k" | "trunc(m)" | "t*p^k" | "list:N1,N2,...". The
  /// letter p stands for the prime; "t*" may be omitted when t = 1.
  static SequenceSelector parse(std::string_view spec, Prime p);

  Prime prime() const noexcept { return prime_; }
  Scheme scheme() const noexcept { return scheme_; }
  const std::optional<Rational>& target() const noexcept { return target_; }

  /// First terms k = 1..kmax. Zero or repeated values are skipped, each with
  /// a note appended to `notes` when supplied. Throws Error(Range) if a term
  /// overflows 64 bits.
  std::vector<SelectorTerm> terms(int kmax, std::vector<std::string>* notes = nullptr) const;

  /// Canonical text in the parse() grammar.
  std::string str() const;

 private:
  SequenceSelector(Prime p, Scheme scheme) : prime_(p), scheme_(scheme) {}

  Prime prime_;
  Scheme scheme_;
  std::optional<Rational> target_;
  std::uint64_t offset_ = 0;  // m for Affine
  std::uint64_t scale_ = 1;   // t for Affine/Power
  std::vector<std::uint64_t> list_;
};

inline std::vector<SelectorTerm> selector_terms(const SequenceSelector& s, int kmax) { return s.terms(kmax); }

enum class Topology { Padic, Real };

/// Finite-evidence stopping rule: the limit is declared detected once the
/// last `window` consecutive gaps all have exponent >= `threshold`.
struct CauchyRule {
  std::int64_t threshold = 8;
  std::size_t window = 3;
};

struct FrequencyRow {
  int k;
  std::uint64_t n;
  Rational nu;
  /// v_p(nu_k - nu_{k-1}) (p-adic) or max{e : |nu_k - nu_{k-1}| <= 10^-e}
  /// (real); absent on the first row.
  std::optional<Valuation> gap;
};

using FrequencyTrace = std::vector<FrequencyRow>;

enum class Verdict { Converged, NoLimitDetected, RangeViolation };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Topology t) noexcept;

struct LimitOutcome {
  Verdict verdict;
  Topology topology;
  /// nu at the last computed k.
  Rational last_value;
  /// Converged p-adic value, known modulo p^threshold.
  std::optional<PadicApprox> value;
  FrequencyTrace trace;
  std::vector<std::string> notes;
};

/// Gap exponent of a difference in the chosen topology.
Valuation gap_exponent(const Rational& difference, Topology topology, Prime p);

/// Frequency limit along the selector, judged by the Cauchy rule.
/// Throws Error(InvalidArgument) when kmax < window + 1.
LimitOutcome s_probability(const Collective& c, const LabelSet& labels, const SequenceSelector& s, int kmax,
                           CauchyRule rule = {}, Topology topology = Topology::Padic);

/// Limit of nu(A and B) / nu(A); throws Error(ConditioningOnNull) when
/// n(A, N_k) = 0 for a computed k.
LimitOutcome conditional_s_probability(const Collective& c, const LabelSet& given, const LabelSet& event,
                                       const SequenceSelector& s, int kmax, CauchyRule rule = {},
                                       Topology topology = Topology::Padic);

/// Every s-probability for s in L_m lies in U_r(0) with r = 1/|m|_p.
struct RangeBall {
  bool unbounded;            // m = 0
  std::optional<Ball> ball;  // set when bounded
};

/// Throws Error(InvalidTarget) for a selector without a target.
RangeBall range_ball(const SequenceSelector& s);

/// Label-set helpers on the collective's alphabet.
LabelSet set_union(const LabelSet& a, const LabelSet& b);
LabelSet set_intersection(const LabelSet& a, const LabelSet& b);
LabelSet set_difference(const LabelSet& a, const LabelSet& b);

}  // namespace padicprob::frequency
