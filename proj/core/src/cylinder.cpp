#include "padicprob/cylinder.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "padicprob/errors.hpp"

namespace padicprob::cylinder {

namespace {

// Digit trie: nullptr is the empty set, a node with `full` set is the whole
// cylinder below it, otherwise exactly q children.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  bool full = false;
  std::vector<NodePtr> kids;
};

NodePtr full_node() {
  static const NodePtr node = std::make_shared<const Node>(Node{true, {}});
  return node;
}

bool is_full(const NodePtr& n) { return n && n->full; }

NodePtr make_split(std::vector<NodePtr> kids) {
  if (std::all_of(kids.begin(), kids.end(), [](const NodePtr& k) { return !k; })) return nullptr;
  if (std::all_of(kids.begin(), kids.end(), is_full)) return full_node();
  return std::make_shared<const Node>(Node{false, std::move(kids)});
}

NodePtr word_node(const Word& w, std::size_t from, std::uint32_t q) {
  if (from == w.size()) return full_node();
  std::vector<NodePtr> kids(q);
  kids[w[from]] = word_node(w, from + 1, q);
  return make_split(std::move(kids));
}

NodePtr unite(const NodePtr& a, const NodePtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a->full || b->full) return full_node();
  std::vector<NodePtr> kids(a->kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) kids[i] = unite(a->kids[i], b->kids[i]);
  return make_split(std::move(kids));
}

NodePtr intersect(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return nullptr;
  if (a->full) return b;
  if (b->full) return a;
  std::vector<NodePtr> kids(a->kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) kids[i] = intersect(a->kids[i], b->kids[i]);
  return make_split(std::move(kids));
}

NodePtr complement_node(const NodePtr& a, std::uint32_t q) {
  if (!a) return full_node();
  if (a->full) return nullptr;
  std::vector<NodePtr> kids(q);
  for (std::size_t i = 0; i < q; ++i) kids[i] = complement_node(a->kids[i], q);
  return make_split(std::move(kids));
}

void flatten(const NodePtr& n, Word& prefix, std::vector<Word>& out) {
  if (!n) return;
  if (n->full) {
    out.push_back(prefix);
    return;
  }
  for (std::uint32_t d = 0; d < n->kids.size(); ++d) {
    prefix.push_back(d);
    flatten(n->kids[d], prefix, out);
    prefix.pop_back();
  }
}

std::uint32_t radix(Prime q) {
  if (q.value() > 36) fail(ErrorKind::InvalidArgument, "cylinder alphabets are limited to q <= 36");
  return static_cast<std::uint32_t>(q.value());
}

NodePtr to_trie(const Clopen& a) {
  NodePtr root;
  for (const auto& w : a.words()) root = unite(root, word_node(w, 0, radix(a.q())));
  return root;
}

std::vector<Word> from_trie(const NodePtr& n) {
  std::vector<Word> out;
  Word prefix;
  flatten(n, prefix, out);
  return out;
}

void require_same_q(const Clopen& a, const Clopen& b) {
  if (a.q() != b.q()) {
    fail(ErrorKind::AlphabetMismatch, "clopen sets over q=" + std::to_string(a.q().value()) + " and q=" +
                                          std::to_string(b.q().value()) + " cannot be combined");
  }
}

char digit_char(std::uint32_t d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

std::uint32_t char_digit(char c) {
  if (std::isdigit(static_cast<unsigned char>(c))) return static_cast<std::uint32_t>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<std::uint32_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<std::uint32_t>(c - 'A' + 10);
  fail(ErrorKind::Parse, std::string("invalid digit '") + c + "' in clopen text");
}

bool is_prefix(const Word& w, const Word& point) {
  return w.size() <= point.size() && std::equal(w.begin(), w.end(), point.begin());
}

}  // namespace

void check_digits(const Word& digits, Prime q) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= q.value()) {
      fail(ErrorKind::DigitRange, "digit " + std::to_string(digits[i]) + " at position " + std::to_string(i) +
                                      " is outside {0.." + std::to_string(q.value() - 1) + "}");
    }
  }
}

bool Cylinder::contains(const Word& point) const {
  if (point.size() < digits.size()) {
    fail(ErrorKind::InsufficientData, "point prefix is shallower than the cylinder");
  }
  return is_prefix(digits, point);
}

Integer encode_jq(const Word& digits, Prime q) {
  check_digits(digits, q);
  Integer n = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) n = n * static_cast<unsigned long>(q.value()) + *it;
  return n;
}

Word decode_jq(const Integer& n, std::size_t depth, Prime q) {
  Word out(depth);
  Integer r = n;
  const Integer modulus(static_cast<unsigned long>(q.value()));
  for (std::size_t j = 0; j < depth; ++j) {
    Integer digit;
    mpz_fdiv_qr(r.get_mpz_t(), digit.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    out[j] = static_cast<std::uint32_t>(digit.get_ui());
  }
  return out;
}

Clopen Clopen::empty(Prime q) {
  radix(q);
  return {q, {}};
}

Clopen Clopen::whole(Prime q) {
  radix(q);
  return {q, {Word{}}};
}

Clopen Clopen::from_cylinder(const Cylinder& c) { return from_words(c.q, {c.digits}); }

Clopen Clopen::from_words(Prime q, const std::vector<Word>& words) {
  const std::uint32_t base = radix(q);
  NodePtr root;
  for (const auto& w : words) {
    check_digits(w, q);
    root = unite(root, word_node(w, 0, base));
  }
  return {q, from_trie(root)};
}

Clopen Clopen::parse(std::string_view text, Prime q) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "*") return whole(q);
  if (s.empty() || s == "{}") return empty(q);
  std::vector<Word> words;
  std::istringstream in(s);
  std::string token;
  while (std::getline(in, token, ';')) {
    if (token.empty()) fail(ErrorKind::Parse, "empty word in clopen text '" + std::string(text) + "'");
    if (token == "*") {
      words.emplace_back();
      continue;
    }
    Word w;
    for (char c : token) w.push_back(char_digit(c));
    words.push_back(std::move(w));
  }
  return from_words(q, words);
}

std::size_t Clopen::max_depth() const noexcept {
  std::size_t d = 0;
  for (const auto& w : words_) d = std::max(d, w.size());
  return d;
}

bool Clopen::contains(const Word& point) const {
  if (point.size() < max_depth()) {
    fail(ErrorKind::InsufficientData, "point prefix of depth " + std::to_string(point.size()) +
                                          " cannot decide membership in a set of depth " + std::to_string(max_depth()));
  }
  return std::any_of(words_.begin(), words_.end(), [&](const Word& w) { return is_prefix(w, point); });
}

std::string word_str(const Word& w) {
  std::string s;
  for (auto d : w) s.push_back(digit_char(d));
  return s;
}

std::string Clopen::str() const {
  if (is_empty()) return "{}";
  if (is_whole()) return "*";
  std::string s;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i > 0) s.push_back(';');
    s += word_str(words_[i]);
  }
  return s;
}

Clopen normalize(const Clopen& a) { return Clopen::from_words(a.q(), a.words()); }

Clopen set_union(const Clopen& a, const Clopen& b) {
  require_same_q(a, b);
  std::vector<Word> words = a.words();
  words.insert(words.end(), b.words().begin(), b.words().end());
  return Clopen::from_words(a.q(), words);
}

Clopen set_intersection(const Clopen& a, const Clopen& b) {
  require_same_q(a, b);
  return Clopen::from_words(a.q(), from_trie(intersect(to_trie(a), to_trie(b))));
}

Clopen complement(const Clopen& a) {
  return Clopen::from_words(a.q(), from_trie(complement_node(to_trie(a), radix(a.q()))));
}

Clopen set_difference(const Clopen& a, const Clopen& b) { return set_intersection(a, complement(b)); }

bool disjoint(const Clopen& a, const Clopen& b) { return set_intersection(a, b).is_empty(); }

UniformMeasure::UniformMeasure(Prime q, Prime p) : Measure(q, p) {
  if (p == q) {
    fail(ErrorKind::HypothesisViolation, "the uniform distribution on Z_" + std::to_string(q.value()) +
                                             " is a probabilistic measure iff p != q; got p = q = " +
                                             std::to_string(p.value()));
  }
  radix(q);
}

Rational UniformMeasure::cylinder(const Word& x) const {
  check_digits(x, q());
  return Rational(Integer(1), ipow(Integer(static_cast<unsigned long>(q().value())), x.size()));
}

TableMeasure::TableMeasure(Prime q, Prime p, std::size_t depth, std::vector<Rational> leaf_weights)
    : Measure(q, p), depth_(depth), leaves_(std::move(leaf_weights)) {
  const Integer expected = ipow(Integer(static_cast<unsigned long>(radix(q))), depth);
  if (Integer(static_cast<unsigned long>(leaves_.size())) != expected) {
    fail(ErrorKind::InvalidArgument, "table measure of depth " + std::to_string(depth) + " needs " + expected.get_str() +
                                         " leaf weights, got " + std::to_string(leaves_.size()));
  }
}

TableMeasure TableMeasure::zero(Prime q, Prime p) { return TableMeasure(q, p, 0, {Rational(0)}); }

Rational TableMeasure::cylinder(const Word& x) const {
  check_digits(x, q());
  const auto base = static_cast<unsigned long>(q().value());
  if (x.size() >= depth_) {
    // Leaf index is the lexicographic rank of the first depth_ digits.
    std::size_t rank = 0;
    for (std::size_t i = 0; i < depth_; ++i) rank = rank * base + x[i];
    return leaves_[rank] / Rational(ipow(Integer(base), x.size() - depth_));
  }
  std::size_t rank = 0;
  for (auto d : x) rank = rank * base + d;
  const std::size_t span = ipow(Integer(base), depth_ - x.size()).get_ui();
  Rational sum(0);
  for (std::size_t i = 0; i < span; ++i) sum = sum + leaves_[rank * span + i];
  return sum;
}

Rational measure(const Measure& m, const Clopen& a) {
  if (a.q() != m.q()) fail(ErrorKind::AlphabetMismatch, "measure and set use different q");
  Rational total(0);
  for (const auto& w : a.words()) total = total + m.cylinder(w);
  return total;
}

namespace {

// Largest |mu(B)|_p over cylinders B inside U_prefix, refined to depth `limit`.
PadicAbs cylinder_sup(const Measure& m, Word& prefix, std::size_t limit) {
  PadicAbs best = abs_p(m.cylinder(prefix), m.p());
  if (prefix.size() >= limit) return best;
  for (std::uint32_t d = 0; d < m.q().value(); ++d) {
    prefix.push_back(d);
    best = std::max(best, cylinder_sup(m, prefix, limit));
    prefix.pop_back();
  }
  return best;
}

}  // namespace

PadicAbs measure_norm(const Measure& m, const Clopen& a) {
  if (a.q() != m.q()) fail(ErrorKind::AlphabetMismatch, "measure and set use different q");
  // Every clopen subset is a finite disjoint union of cylinders, and the
  // ultrametric inequality bounds its measure by the largest of them.
  PadicAbs best = PadicAbs::zero(m.p());
  for (auto w : a.words()) best = std::max(best, cylinder_sup(m, w, std::max(w.size(), m.resolution_depth())));
  return best;
}

PadicAbs n_mu(const Measure& m, const Word& point) {
  check_digits(point, m.q());
  if (point.size() < m.resolution_depth()) {
    fail(ErrorKind::InsufficientData, "point prefix must reach depth " + std::to_string(m.resolution_depth()));
  }
  PadicAbs best = measure_norm(m, Clopen::whole(m.q()));
  for (std::size_t k = 1; k <= point.size(); ++k) {
    const Word head(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(k));
    best = std::min(best, measure_norm(m, Clopen::from_words(m.q(), {head})));
  }
  return best;
}

StepFunction::StepFunction(Prime q, std::vector<Piece> pieces) : q_(q), pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].set.q() != q_) fail(ErrorKind::AlphabetMismatch, "step function piece uses a different q");
    pieces_[i].set = normalize(pieces_[i].set);
    for (std::size_t j = 0; j < i; ++j) {
      if (!disjoint(pieces_[i].set, pieces_[j].set)) {
        fail(ErrorKind::InvalidArgument, "step function pieces " + std::to_string(j) + " and " + std::to_string(i) +
                                             " overlap");
      }
    }
  }
}

Rational StepFunction::operator()(const Word& point) const {
  for (const auto& piece : pieces_) {
    if (piece.set.contains(point)) return piece.value;
  }
  return Rational(0);
}

Rational integrate_step(const Measure& m, const StepFunction& f) {
  Rational total(0);
  for (const auto& piece : f.pieces()) total = total + piece.value * measure(m, piece.set);
  return total;
}

PadicAbs step_norm(const Measure& m, const StepFunction& f) {
  PadicAbs best = PadicAbs::zero(m.p());
  for (const auto& piece : f.pieces()) best = std::max(best, abs_p(piece.value, m.p()) * measure_norm(m, piece.set));
  return best;
}

IntegrationResult integrate_continuous(const Measure& m, const ContinuousMap& f, std::size_t depth,
                                       std::int64_t precision) {
  if (!f.oscillation) fail(ErrorKind::OscillationMissing, "continuous map has no declared oscillation bound");
  if (!f.evaluate) fail(ErrorKind::InvalidArgument, "continuous map has no evaluator");
  if (depth == 0) fail(ErrorKind::InvalidArgument, "integration depth must be at least 1");

  const Prime p = m.p();
  const std::uint32_t base = radix(m.q());
  Rational sum(0);
  PadicAbs step_sup = PadicAbs::zero(p);
  Word w(depth, 0);
  // Odometer over all q^depth words in lexicographic order.
  while (true) {
    const Rational value = f.evaluate(w);
    const Rational mass = m.cylinder(w);
    sum = sum + value * mass;
    step_sup = std::max(step_sup, abs_p(value, p) * measure_norm(m, Clopen::from_words(m.q(), {w})));
    std::size_t i = depth;
    while (i > 0 && w[i - 1] + 1 == base) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }

  const PadicAbs bound = f.oscillation(depth) * measure_norm(m, Clopen::whole(m.q()));
  const PadicApprox value = bound.is_zero() ? PadicApprox::from_rational(sum, p, precision)
                                            : PadicApprox::from_rational_abs(sum, p, bound.valuation().value());
  return {depth, sum, value, bound, abs_p(sum, p) <= step_sup};
}

}  // namespace padicprob::cylinder
