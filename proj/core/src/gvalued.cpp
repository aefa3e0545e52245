#include "padicprob/gvalued.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "padicprob/valuation.hpp"

namespace padicprob::gvalued {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in{std::string(s)};
  while (std::getline(in, token, sep)) out.push_back(trim(token));
  return out;
}

}  // namespace

GroupContext GroupContext::real() { return GroupContext({Factor{true, Prime(2)}}, true); }

GroupContext GroupContext::padic(Prime p) { return GroupContext({Factor{false, p}}, true); }

GroupContext GroupContext::product(const std::vector<GroupContext>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "a product context needs at least one factor");
  std::vector<Factor> factors;
  bool ring = true;
  for (const auto& part : parts) {
    factors.insert(factors.end(), part.factors_.begin(), part.factors_.end());
    ring = ring && part.ring_;
  }
  return GroupContext(std::move(factors), ring);
}

GroupContext GroupContext::without_ring() const { return GroupContext(factors_, false); }

GroupContext GroupContext::parse(std::string_view text) {
  std::string s = trim(text);
  bool ring = true;
  if (s.rfind("group:", 0) == 0) {
    ring = false;
    s = s.substr(6);
  }
  std::vector<Factor> factors;
  for (const auto& part : split(s, '*')) {
    if (part == "real") {
      factors.push_back({true, Prime(2)});
    } else if (part.rfind("padic:", 0) == 0) {
      std::uint64_t p = 0;
      try {
        std::size_t used = 0;
        p = std::stoull(part.substr(6), &used);
        if (used != part.size() - 6) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "bad prime in context '" + part + "'");
      }
      if (!is_prime(p)) fail(ErrorKind::Parse, "context '" + part + "' does not name a prime");
      factors.push_back({false, Prime(p)});
    } else {
      fail(ErrorKind::Parse, "unknown context '" + part + "'; expected real or padic:<p>");
    }
  }
  if (factors.empty()) fail(ErrorKind::Parse, "empty context");
  return GroupContext(std::move(factors), ring);
}

std::string GroupContext::str() const {
  std::string s = ring_ ? "" : "group:";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) s += "*";
    s += factors_[i].real ? "real" : "padic:" + std::to_string(factors_[i].p.value());
  }
  return s;
}

void GroupContext::check(const Element& a) const {
  if (a.size() != factors_.size()) {
    fail(ErrorKind::InvalidArgument, "element has " + std::to_string(a.size()) + " components, context " + str() +
                                         " has " + std::to_string(factors_.size()));
  }
}

Element GroupContext::neutral() const { return Element(factors_.size(), Rational(0)); }

Element GroupContext::one() const { return Element(factors_.size(), Rational(1)); }

Element GroupContext::embed(const Rational& x) const { return Element(factors_.size(), x); }

Element GroupContext::add(const Element& a, const Element& b) const {
  check(a);
  check(b);
  Element out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Element GroupContext::negate(const Element& a) const {
  check(a);
  Element out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool GroupContext::is_neutral(const Element& a) const {
  check(a);
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

Rational GroupContext::rho(const Element& a) const {
  check(a);
  Rational best(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = factors_[i].real ? abs(a[i]) : abs_p(a[i], factors_[i].p).value();
    if (d > best) best = d;
  }
  return best;
}

Element GroupContext::multiply(const Element& a, const Element& b) const {
  if (!ring_) fail(ErrorKind::NoRingStructure, "context " + str() + " has no multiplication");
  check(a);
  check(b);
  Element out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

bool GroupContext::is_invertible(const Element& a) const {
  check(a);
  return ring_ && std::none_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

Element GroupContext::inverse(const Element& a) const {
  if (!ring_) fail(ErrorKind::NoRingStructure, "context " + str() + " has no multiplication");
  if (!is_invertible(a)) fail(ErrorKind::NotInvertible, element_str(a) + " is not invertible in " + str());
  Element out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = Rational(1) / a[i];
  return out;
}

Element GroupContext::parse_element(std::string_view text) const {
  std::string s = trim(text);
  if (factors_.size() == 1 && (s.empty() || s.front() != '(')) return {Rational::parse(s)};
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    fail(ErrorKind::Parse, "expected '(x1,...,x" + std::to_string(factors_.size()) + ")', got '" + s + "'");
  }
  Element out;
  for (const auto& part : split(s.substr(1, s.size() - 2), ',')) out.push_back(Rational::parse(part));
  if (out.size() != factors_.size()) fail(ErrorKind::Parse, "element '" + s + "' has the wrong number of components");
  return out;
}

std::string GroupContext::element_str(const Element& a) const {
  check(a);
  if (a.size() == 1) return a.front().str();
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i > 0 ? "," : "") + a[i].str();
  return s + ")";
}

GDistribution::GDistribution(GroupContext context, std::vector<std::string> outcomes, std::vector<Element> weights,
                             std::optional<Rational> range_radius)
    : context_(std::move(context)),
      outcomes_(std::move(outcomes)),
      weights_(std::move(weights)),
      range_radius_(std::move(range_radius)) {
  if (outcomes_.size() != weights_.size()) {
    fail(ErrorKind::InvalidArgument, std::to_string(outcomes_.size()) + " outcomes but " +
                                         std::to_string(weights_.size()) + " weights");
  }
  if (outcomes_.size() > 63) fail(ErrorKind::InvalidArgument, "at most 63 outcomes are supported");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const Rational r = context_.rho(weights_[i]);
    if (range_radius_ && r > *range_radius_) {
      fail(ErrorKind::InvalidArgument, "weight of '" + outcomes_[i] + "' lies outside the range set (rho = " +
                                           r.str() + " > " + range_radius_->str() + ")");
    }
  }
}

Subset GDistribution::everything() const noexcept {
  return outcomes_.size() == 64 ? ~Subset{0} : (Subset{1} << outcomes_.size()) - 1;
}

Element GDistribution::probability(Subset a) const {
  Element sum = context_.neutral();
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if ((a >> i) & 1U) sum = context_.add(sum, weights_[i]);
  }
  return sum;
}

Subset GDistribution::subset_of(const std::vector<std::string>& labels) const {
  Subset out = 0;
  for (const auto& label : labels) {
    const auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end()) fail(ErrorKind::InvalidArgument, "unknown outcome '" + label + "'");
    out |= Subset{1} << static_cast<unsigned>(it - outcomes_.begin());
  }
  return out;
}

GDistribution GDistribution::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("distribution JSON: ") + e.what());
  }
  try {
    const auto context = GroupContext::parse(j.at("context").get<std::string>());
    std::vector<std::string> outcomes;
    for (const auto& o : j.at("outcomes")) outcomes.push_back(o.is_string() ? o.get<std::string>() : o.dump());
    std::vector<Element> weights;
    for (const auto& w : j.at("weights")) {
      if (w.is_array()) {
        Element e;
        for (const auto& c : w) e.push_back(Rational::parse(c.get<std::string>()));
        if (e.size() != context.arity()) fail(ErrorKind::Parse, "weight has the wrong number of components");
        weights.push_back(std::move(e));
      } else {
        weights.push_back(context.parse_element(w.get<std::string>()));
      }
    }
    std::optional<Rational> range;
    if (j.contains("range")) range = Rational::parse(j.at("range").get<std::string>());
    return GDistribution(context, std::move(outcomes), std::move(weights), std::move(range));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("distribution JSON: ") + e.what());
  }
}

std::string GDistribution::to_json() const {
  nlohmann::json j;
  j["context"] = context_.str();
  j["outcomes"] = outcomes_;
  auto weights = nlohmann::json::array();
  for (const auto& w : weights_) {
    if (w.size() == 1) {
      weights.push_back(w.front().str());
    } else {
      auto parts = nlohmann::json::array();
      for (const auto& c : w) parts.push_back(c.str());
      weights.push_back(parts);
    }
  }
  j["weights"] = weights;
  if (range_radius_) j["range"] = range_radius_->str();
  return j.dump();
}

std::vector<Subset> power_set(std::size_t n) {
  if (n > 20) fail(ErrorKind::InvalidArgument, "power set limited to 20 outcomes");
  std::vector<Subset> out(std::size_t{1} << n);
  for (Subset s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

bool is_field(const std::vector<Subset>& field, std::size_t n) {
  const Subset all = n == 64 ? ~Subset{0} : (Subset{1} << n) - 1;
  const auto has = [&](Subset s) { return std::find(field.begin(), field.end(), s) != field.end(); };
  if (!has(0) || !has(all)) return false;
  for (Subset a : field) {
    if (!has(all & ~a)) return false;
    for (Subset b : field) {
      if (!has(a | b)) return false;
    }
  }
  return true;
}

AdditivityReport additivity_check(const GDistribution& d, const std::vector<Subset>& field) {
  const auto& g = d.context();
  AdditivityReport report{true, 0, std::nullopt};
  for (Subset a : field) {
    for (Subset b : field) {
      if ((a & b) != 0 || a > b) continue;
      ++report.pairs_checked;
      if (d.probability(a | b) != g.add(d.probability(a), d.probability(b))) {
        report.holds = false;
        report.counterexample = std::make_pair(a, b);
        return report;
      }
    }
  }
  return report;
}

UnitAxiomReport unit_axiom_check(const GDistribution& d, const std::vector<Subset>& field) {
  const auto& g = d.context();
  UnitAxiomReport report{false, Rational(0), g.rho(d.total()), 0};
  for (Subset a : field) {
    const Rational r = g.rho(d.probability(a));
    if (r > report.sup) {
      report.sup = r;
      report.witness = a;
    }
  }
  report.holds = report.sup == report.rho_total;
  return report;
}

GDistribution convolve(const GDistribution& m1, const GDistribution& m2) {
  const auto& g = m1.context();
  if (!(g == m2.context())) fail(ErrorKind::InvalidArgument, "convolution needs a common context");
  if (!g.has_ring()) fail(ErrorKind::NoRingStructure, "context " + g.str() + " has no multiplication");
  std::map<Element, Element> acc;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const Element x1 = g.parse_element(m1.outcomes()[i]);
    for (std::size_t j = 0; j < m2.size(); ++j) {
      const Element s = g.add(x1, g.parse_element(m2.outcomes()[j]));
      const Element w = g.multiply(m1.weights()[i], m2.weights()[j]);
      auto [it, inserted] = acc.try_emplace(s, w);
      if (!inserted) it->second = g.add(it->second, w);
    }
  }
  std::vector<std::string> outcomes;
  std::vector<Element> weights;
  for (auto& [s, w] : acc) {
    outcomes.push_back(g.element_str(s));
    weights.push_back(std::move(w));
  }
  return GDistribution(g, std::move(outcomes), std::move(weights));
}

Element conditional(const GDistribution& d, Subset a, Subset b) {
  const auto& g = d.context();
  if (!g.has_ring()) fail(ErrorKind::NoRingStructure, "context " + g.str() + " has no multiplication");
  const Element pa = d.probability(a);
  if (!g.is_invertible(pa)) {
    fail(ErrorKind::NotInvertible, "P(A) = " + g.element_str(pa) + " is not invertible; conditional undefined");
  }
  return g.multiply(d.probability(a & b), g.inverse(pa));
}

std::string_view to_string(Significance s) noexcept {
  return s == Significance::PracticallyImpossible ? "PracticallyImpossible" : "Significant";
}

Significance significance_classify(const Element& value, const SignificanceNeighborhood& v) {
  return v.contains(value) ? Significance::PracticallyImpossible : Significance::Significant;
}

}  // namespace padicprob::gvalued
