#include "vfa/grading.hpp"

#include <algorithm>

namespace vfa {

JetMonomial::JetMonomial(std::vector<JetVar> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (const auto& v : factors_) weight_ += v.weight();
}

JetMonomial JetMonomial::operator*(const JetMonomial& other) const {
  JetMonomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  std::merge(factors_.begin(), factors_.end(), other.factors_.begin(), other.factors_.end(),
             std::back_inserter(out.factors_));
  out.weight_ = weight_ + other.weight_;
  return out;
}

std::strong_ordering operator<=>(const JetMonomial& a, const JetMonomial& b) {
  if (auto c = a.weight_ <=> b.weight_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(),
                                                b.factors_.begin(), b.factors_.end());
}

std::string JetMonomial::str(std::span<const std::string> names) const {
  if (factors_.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) out += '*';
    const auto& v = factors_[k];
    out += v.gen < names.size() ? names[v.gen] : "g" + std::to_string(v.gen);
    out += std::to_string(v.order);
  }
  return out;
}

GradedElement::GradedElement(Weight truncation) : truncation_(truncation) {}

GradedElement GradedElement::unit(Weight truncation) {
  return monomial(JetMonomial{}, Scalar(1), truncation);
}

GradedElement GradedElement::monomial(const JetMonomial& m, const Scalar& c, Weight truncation) {
  GradedElement e(truncation);
  e.add_term(m, c);
  return e;
}

std::optional<Weight> GradedElement::homogeneous_weight() const {
  if (components_.size() != 1) return std::nullopt;
  return components_.begin()->first;
}

Scalar GradedElement::coeff(const JetMonomial& m) const {
  auto comp = components_.find(m.weight());
  if (comp == components_.end()) return {};
  auto it = comp->second.find(m);
  return it == comp->second.end() ? Scalar{} : it->second;
}

std::size_t GradedElement::term_count() const {
  std::size_t n = 0;
  for (const auto& [w, lc] : components_) n += lc.size();
  return n;
}

void GradedElement::add_term(const JetMonomial& m, const Scalar& c) {
  if (c.is_zero() || m.weight() > truncation_) return;
  auto& comp = components_[m.weight()];
  auto [it, inserted] = comp.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) comp.erase(it);
  }
  if (comp.empty()) components_.erase(m.weight());
}

void GradedElement::for_each(const std::function<void(const JetMonomial&, const Scalar&)>& fn) const {
  for (const auto& [w, lc] : components_)
    for (const auto& [m, c] : lc) fn(m, c);
}

GradedElement GradedElement::scaled(const Scalar& c) const {
  GradedElement out(truncation_);
  if (c.is_zero()) return out;
  for (const auto& [w, lc] : components_)
    for (const auto& [m, x] : lc) out.components_[w].emplace(m, x * c);
  return out;
}

GradedElement GradedElement::truncated(Weight bound) const {
  bound = std::min(bound, truncation_);
  GradedElement out(bound);
  for (const auto& [w, lc] : components_)
    if (w <= bound) out.components_[w] = lc;
  return out;
}

std::string GradedElement::str(std::span<const std::string> names) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for_each([&](const JetMonomial& m, const Scalar& c) {
    std::string coeff = c.str();
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (!first) out += negative ? " - " : " + ";
    if (negative) {
      coeff = (-c).str();
      if (first) out += "-";
    }
    if (m.is_unit())
      out += coeff;
    else if (coeff == "1")
      out += m.str(names);
    else
      out += coeff + "*" + m.str(names);
    first = false;
  });
  return out;
}

namespace {

void require_same_bound(const GradedElement& a, const GradedElement& b) {
  if (a.truncation() != b.truncation())
    throw Error("mismatched truncation bounds: " + std::to_string(a.truncation()) + " vs " +
                std::to_string(b.truncation()));
}

}  // namespace

GradedElement add(const GradedElement& a, const GradedElement& b) {
  require_same_bound(a, b);
  GradedElement out = a;
  b.for_each([&](const JetMonomial& m, const Scalar& c) { out.add_term(m, c); });
  return out;
}

GradedElement subtract(const GradedElement& a, const GradedElement& b) {
  require_same_bound(a, b);
  GradedElement out = a;
  b.for_each([&](const JetMonomial& m, const Scalar& c) { out.add_term(m, -c); });
  return out;
}

GradedElement project(const GradedElement& a, Weight w) {
  GradedElement out(a.truncation());
  auto it = a.components().find(w);
  if (it == a.components().end()) return out;
  for (const auto& [m, c] : it->second) out.add_term(m, c);
  return out;
}

GradedElement free_product(const GradedElement& a, const GradedElement& b) {
  require_same_bound(a, b);
  GradedElement out(a.truncation());
  for (const auto& [wa, la] : a.components())
    for (const auto& [wb, lb] : b.components()) {
      if (wa + wb > out.truncation()) break;
      for (const auto& [ma, ca] : la)
        for (const auto& [mb, cb] : lb) out.add_term(ma * mb, ca * cb);
    }
  return out;
}

}  // namespace vfa
