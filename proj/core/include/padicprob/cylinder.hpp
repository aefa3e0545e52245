#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "padicprob/padic_approx.hpp"
#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"
#include "padicprob/valuation.hpp"

// Cylinder sets of q-adic sequence space, the p-adic valued uniform measure
// on them, and integration of step functions and continuous maps Z_q -> Q_p.
namespace padicprob::cylinder {

// A finite digit prefix x = (x_1, ..., x_n), stored 0-based.
using Word = std::vector<std::uint32_t>;

struct Cylinder {
  Prime q;
  Word digits;

  std::size_t depth() const noexcept { return digits.size(); }
  bool contains(const Word& point) const;  // point prefix must be at least as deep
};

// j_q(x) = sum_j x_j q^j, with the first digit carrying weight q^0.
Integer encode_jq(const Word& digits, Prime q);
// Inverse of encode_jq on prefixes of the given depth (n is reduced mod q^depth).
Word decode_jq(const Integer& n, std::size_t depth, Prime q);

void check_digits(const Word& digits, Prime q);

// A finite union of cylinders kept in normal form: pairwise disjoint,
// no q complete siblings, words sorted lexicographically.
class Clopen {
 public:
  static Clopen empty(Prime q);
  static Clopen whole(Prime q);
  static Clopen from_cylinder(const Cylinder& c);
  static Clopen from_words(Prime q, const std::vector<Word>& words);

  // "*" is the whole space, "{}" or "" the empty set, otherwise ';'-separated
  // digit words ("01;10;111"); digits above 9 use letters a-z.
  static Clopen parse(std::string_view text, Prime q);

  Prime q() const noexcept { return q_; }
  const std::vector<Word>& words() const noexcept { return words_; }
  bool is_empty() const noexcept { return words_.empty(); }
  bool is_whole() const noexcept { return words_.size() == 1 && words_.front().empty(); }
  std::size_t max_depth() const noexcept;

  // Throws Error(InsufficientData) when the prefix is shallower than max_depth().
  bool contains(const Word& point) const;

  std::string str() const;

  friend bool operator==(const Clopen&, const Clopen&) = default;

 private:
  Clopen(Prime q, std::vector<Word> words) : q_(q), words_(std::move(words)) {}

  Prime q_;
  std::vector<Word> words_;
};

Clopen normalize(const Clopen& a);
Clopen set_union(const Clopen& a, const Clopen& b);
Clopen set_intersection(const Clopen& a, const Clopen& b);
Clopen complement(const Clopen& a);
Clopen set_difference(const Clopen& a, const Clopen& b);
bool disjoint(const Clopen& a, const Clopen& b);

std::string word_str(const Word& w);

// A finitely additive Q_p-valued measure on the cylinder field of Z_q.
class Measure {
 public:
  virtual ~Measure() = default;
  Prime q() const noexcept { return q_; }
  Prime p() const noexcept { return p_; }
  virtual Rational cylinder(const Word& x) const = 0;
  // Below this depth cylinder values are uniform refinements of their parent,
  // so their p-adic norm no longer changes.
  virtual std::size_t resolution_depth() const noexcept = 0;

 protected:
  Measure(Prime q, Prime p) : q_(q), p_(p) {}

 private:
  Prime q_;
  Prime p_;
};

// mu(U_x) = q^{-l(x)}. Rejects p = q (Error(HypothesisViolation)).
class UniformMeasure final : public Measure {
 public:
  UniformMeasure(Prime q, Prime p);
  Rational cylinder(const Word& x) const override;
  std::size_t resolution_depth() const noexcept override { return 0; }
};

// Caller-supplied weights on the q^D cylinders of depth D (indexed by the
// lexicographic rank of the word), refined uniformly below depth D.
class TableMeasure final : public Measure {
 public:
  TableMeasure(Prime q, Prime p, std::size_t depth, std::vector<Rational> leaf_weights);
  static TableMeasure zero(Prime q, Prime p);

  Rational cylinder(const Word& x) const override;
  std::size_t resolution_depth() const noexcept override { return depth_; }

 private:
  std::size_t depth_;
  std::vector<Rational> leaves_;
};

Rational measure(const Measure& m, const Clopen& a);
// ||A||_mu = sup{|mu(B)|_p : B clopen, B inside A}.
PadicAbs measure_norm(const Measure& m, const Clopen& a);
// N_mu(x) = inf over cylinders U containing x of ||U||_mu. The prefix must
// reach the measure's resolution depth.
PadicAbs n_mu(const Measure& m, const Word& point);

class StepFunction {
 public:
  struct Piece {
    Clopen set;
    Rational value;
  };

  // Pieces must share q and be pairwise disjoint (Error(InvalidArgument)).
  explicit StepFunction(Prime q, std::vector<Piece> pieces = {});

  Prime q() const noexcept { return q_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  Rational operator()(const Word& point) const;

 private:
  Prime q_;
  std::vector<Piece> pieces_;
};

Rational integrate_step(const Measure& m, const StepFunction& f);
// ||f||_mu = sup_x N_mu(x) |f(x)|_p.
PadicAbs step_norm(const Measure& m, const StepFunction& f);

struct ContinuousMap {
  std::function<Rational(const Word&)> evaluate;
  // delta(n) bounds |f(x) - f(y)|_p for x, y in a common depth-n cylinder.
  std::function<PadicAbs(std::size_t)> oscillation;
};

struct IntegrationResult {
  std::size_t depth;
  Rational riemann_sum;
  PadicApprox value;
  PadicAbs error_bound;
  // |sum|_p <= ||f_n||_mu for the depth-n step approximation f_n.
  bool norm_bound_holds;
};

// Throws Error(OscillationMissing) without delta and Error(InvalidArgument)
// for depth 0.
IntegrationResult integrate_continuous(const Measure& m, const ContinuousMap& f, std::size_t depth,
                                       std::int64_t precision = kDefaultPrecision);

}  // namespace padicprob::cylinder
