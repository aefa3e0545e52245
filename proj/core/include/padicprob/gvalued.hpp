#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padicprob/errors.hpp"
#include "padicprob/prime.hpp"
#include "padicprob/rational.hpp"

// Probabilities valued in a metrized abelian group. The carriers are the
// rationals under the real or a p-adic absolute value, and finite products
// of those; a product is metrized by the largest component distance.
namespace padicprob::gvalued {

// One component per factor of the context.
using Element = std::vector<Rational>;

class GroupContext {
 public:
  struct Factor {
    bool real;
    Prime p;  // ignored when real
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  static GroupContext real();
  static GroupContext padic(Prime p);
  static GroupContext product(const std::vector<GroupContext>& parts);
  // The same carrier with its multiplication forgotten.
  GroupContext without_ring() const;

  // "real", "padic:<p>", factors joined by '*', optionally prefixed by
  // "group:" to drop the ring structure.
  static GroupContext parse(std::string_view text);
  std::string str() const;

  std::size_t arity() const noexcept { return factors_.size(); }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool has_ring() const noexcept { return ring_; }

  Element neutral() const;
  Element one() const;
  Element embed(const Rational& x) const;  // x in every component
  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;
  bool is_neutral(const Element& a) const;

  // rho(0, x): the largest component absolute value.
  Rational rho(const Element& a) const;

  // Error(NoRingStructure) when the context has no multiplication.
  Element multiply(const Element& a, const Element& b) const;
  bool is_invertible(const Element& a) const;
  // Error(NotInvertible) for a zero component.
  Element inverse(const Element& a) const;

  // A rational for a single factor, otherwise "(x1,x2,...)".
  Element parse_element(std::string_view text) const;
  std::string element_str(const Element& a) const;

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  GroupContext(std::vector<Factor> factors, bool ring) : factors_(std::move(factors)), ring_(ring) {}
  void check(const Element& a) const;

  std::vector<Factor> factors_;
  bool ring_;
};

// Events are bit masks over the outcome list.
using Subset = std::uint64_t;

class GDistribution {
 public:
  // Error(InvalidArgument) on mismatched sizes, more than 63 outcomes, or a
  // weight outside the range ball {x : rho(0, x) <= range_radius}.
  GDistribution(GroupContext context, std::vector<std::string> outcomes, std::vector<Element> weights,
                std::optional<Rational> range_radius = std::nullopt);

  const GroupContext& context() const noexcept { return context_; }
  const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
  const std::vector<Element>& weights() const noexcept { return weights_; }
  const std::optional<Rational>& range_radius() const noexcept { return range_radius_; }
  std::size_t size() const noexcept { return outcomes_.size(); }

  Subset everything() const noexcept;
  // P(A) = sum of the weights of the outcomes in A.
  Element probability(Subset a) const;
  Element total() const { return probability(everything()); }
  // Error(InvalidArgument) for an unknown label.
  Subset subset_of(const std::vector<std::string>& labels) const;

  static GDistribution from_json(std::string_view text);
  std::string to_json() const;

 private:
  GroupContext context_;
  std::vector<std::string> outcomes_;
  std::vector<Element> weights_;
  std::optional<Rational> range_radius_;
};

// All 2^n subsets of n outcomes (n <= 20).
std::vector<Subset> power_set(std::size_t n);
// Contains the empty set and the whole set and is closed under complement and union.
bool is_field(const std::vector<Subset>& field, std::size_t n);

struct AdditivityReport {
  bool holds;
  std::size_t pairs_checked;
  std::optional<std::pair<Subset, Subset>> counterexample;
};

// P(A or B) = P(A) + P(B) for every disjoint pair of the field.
AdditivityReport additivity_check(const GDistribution& d, const std::vector<Subset>& field);

struct UnitAxiomReport {
  bool holds;
  Rational sup;        // max over the field of rho(0, P(A))
  Rational rho_total;  // rho(0, E)
  Subset witness;      // an event attaining sup
};

// sup over the field of rho(0, P(A)) equals rho(0, E).
UnitAxiomReport unit_axiom_check(const GDistribution& d, const std::vector<Subset>& field);

// Outcomes are read as ring elements; the weight at s collects w1(x1) w2(x2)
// over x1 + x2 = s. Outcomes of the result are sorted. Error(NoRingStructure)
// without a multiplication.
GDistribution convolve(const GDistribution& m1, const GDistribution& m2);

// P(A and B) P(A)^-1; Error(NotInvertible) when P(A) has no inverse.
Element conditional(const GDistribution& d, Subset a, Subset b);

struct SignificanceNeighborhood {
  GroupContext context;
  Rational eps;  // V = {x : rho(0, x) < eps}

  bool contains(const Element& x) const { return context.rho(x) < eps; }
};

enum class Significance { PracticallyImpossible, Significant };
std::string_view to_string(Significance s) noexcept;

Significance significance_classify(const Element& value, const SignificanceNeighborhood& v);

template <class Outcome>
class CriticalRegionRunner {
 public:
  struct Region {
    std::string name;
    std::function<bool(const Outcome&)> contains;
    Element probability;
    SignificanceNeighborhood level;
  };

  struct Result {
    bool rejected = false;
    std::optional<std::size_t> strongest;  // region with the smallest eps among those hit
    std::vector<std::size_t> hits;
  };

  // Error(RegionNotSignificant) when P(region) lies outside its level V.
  void add(Region region) {
    if (!region.level.contains(region.probability)) {
      fail(ErrorKind::RegionNotSignificant,
           "region '" + region.name + "' has probability " + region.level.context.element_str(region.probability) +
               " outside its significance neighborhood (eps = " + region.level.eps.str() + ")");
    }
    regions_.push_back(std::move(region));
  }

  const std::vector<Region>& regions() const noexcept { return regions_; }

  Result run(const Outcome& omega) const {
    Result out;
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      if (!regions_[i].contains(omega)) continue;
      out.hits.push_back(i);
      if (!out.strongest || regions_[i].level.eps < regions_[*out.strongest].level.eps) out.strongest = i;
    }
    out.rejected = !out.hits.empty();
    return out;
  }

 private:
  std::vector<Region> regions_;
};

}  // namespace padicprob::gvalued
