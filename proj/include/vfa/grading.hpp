#pragma once

#include "vfa/scalar.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vfa {

using Weight = int;

/// The jet variable x_g^{(m)}.  Its weight is m + 1.
struct JetVar {
  std::uint32_t gen = 0;
  std::uint32_t order = 0;

  Weight weight() const { return static_cast<Weight>(order) + 1; }

  /// Normal order inside a monomial: generator id ascending, then jet order
  /// descending.
  friend std::strong_ordering operator<=>(const JetVar& a, const JetVar& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return b.order <=> a.order;
  }
  friend bool operator==(const JetVar&, const JetVar&) = default;
};

/// Commutative monomial in jet variables, stored as a sorted multiset.
class JetMonomial {
 public:
  JetMonomial() = default;
  explicit JetMonomial(std::vector<JetVar> factors);
  static JetMonomial var(std::uint32_t gen, std::uint32_t order) { return JetMonomial({{gen, order}}); }

  std::span<const JetVar> factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  Weight weight() const { return weight_; }
  std::size_t degree() const { return factors_.size(); }

  /// Multiset union.
  JetMonomial operator*(const JetMonomial& other) const;

  /// Total order used for map keys and to pick leading monomials: weight
  /// first, then lexicographic on the normal-ordered factor list.
  friend std::strong_ordering operator<=>(const JetMonomial& a, const JetMonomial& b);
  friend bool operator==(const JetMonomial& a, const JetMonomial& b) { return a.factors_ == b.factors_; }

  /// "x1*x0" given generator names; "1" for the unit.
  std::string str(std::span<const std::string> names) const;

 private:
  std::vector<JetVar> factors_;
  Weight weight_ = 0;
};

/// Finite linear combination of monomials; absent keys are zero.
using LinComb = std::map<JetMonomial, Scalar>;

/// A truncated element of a weight-graded space spanned by jet monomials.
/// Components of weight above the truncation bound are never stored.
class GradedElement {
 public:
  explicit GradedElement(Weight truncation = 0);

  static GradedElement unit(Weight truncation);
  static GradedElement monomial(const JetMonomial& m, const Scalar& c, Weight truncation);

  Weight truncation() const { return truncation_; }
  const std::map<Weight, LinComb>& components() const { return components_; }

  bool is_zero() const { return components_.empty(); }
  /// The single weight carried by a nonzero homogeneous element.
  std::optional<Weight> homogeneous_weight() const;
  Scalar coeff(const JetMonomial& m) const;
  std::size_t term_count() const;

  /// Accumulate c*m; silently dropped when weight(m) exceeds the bound.
  void add_term(const JetMonomial& m, const Scalar& c);

  /// Visit every stored (monomial, coefficient) pair in key order.
  void for_each(const std::function<void(const JetMonomial&, const Scalar&)>& fn) const;

  GradedElement scaled(const Scalar& c) const;
  /// Same coefficients, lower truncation bound.
  GradedElement truncated(Weight bound) const;

  GradedElement operator-() const { return scaled(Scalar(-1)); }
  friend bool operator==(const GradedElement& a, const GradedElement& b) {
    return a.truncation_ == b.truncation_ && a.components_ == b.components_;
  }

  std::string str(std::span<const std::string> names) const;

 private:
  Weight truncation_;
  std::map<Weight, LinComb> components_;
};

/// Componentwise sum.  Throws on mismatched truncation bounds.
GradedElement add(const GradedElement& a, const GradedElement& b);
GradedElement subtract(const GradedElement& a, const GradedElement& b);
/// The weight-w component; zero when absent or beyond the bound.
GradedElement project(const GradedElement& a, Weight w);

inline GradedElement operator+(const GradedElement& a, const GradedElement& b) { return add(a, b); }
inline GradedElement operator-(const GradedElement& a, const GradedElement& b) { return subtract(a, b); }

/// Product of two elements over a free commutative algebra (no reduction),
/// truncated at the common bound.
GradedElement free_product(const GradedElement& a, const GradedElement& b);

}  // namespace vfa
