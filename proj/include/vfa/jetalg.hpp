#pragma once

#include "vfa/grading.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vfa {

/// Jet algebra J(A) of A = C[x_1..x_k]/(relations), truncated at a maximum
/// weight.  The quotient is realised weight by weight: the weight-w piece of
/// the differential ideal is spanned by m * d^j(r) over relations r, jet
/// orders j and monomials m of complementary weight, and is kept in reduced
/// echelon form against the monomial order.
///
/// Inhomogeneous relations are replaced by their top-weight component, so
/// for those the result is the jet algebra of the associated graded algebra.
class AlgebraPresentation {
 public:
  AlgebraPresentation(std::vector<std::string> generators, std::vector<GradedElement> relations,
                      Weight max_weight);

  /// Relations given in the element grammar (see parse_element).
  static AlgebraPresentation parse(std::vector<std::string> generators,
                                   const std::vector<std::string>& relations, Weight max_weight);
  static AlgebraPresentation free(std::vector<std::string> generators, Weight max_weight) {
    return AlgebraPresentation(std::move(generators), {}, max_weight);
  }

  const std::vector<std::string>& generators() const { return generators_; }
  std::optional<std::uint32_t> generator_id(std::string_view name) const;
  Weight max_weight() const { return max_weight_; }
  /// Homogeneous relations actually imposed (top-weight parts).
  const std::vector<GradedElement>& relations() const { return relations_; }
  bool has_inhomogeneous_relations() const { return inhomogeneous_; }

  GradedElement zero() const { return GradedElement(max_weight_); }
  GradedElement one() const { return GradedElement::unit(max_weight_); }
  /// x_g^{(order)} as an element.
  GradedElement var(std::uint32_t gen, std::uint32_t order) const;

  /// Normal form modulo the differential ideal.
  GradedElement reduce(const GradedElement& a) const;
  /// Throws unless `a` only uses this presentation's generators and fits
  /// within its weight bound.
  void check(const GradedElement& a) const;

  /// Standard monomials of weight w (a basis of the quotient's weight-w
  /// piece), ascending in the monomial order.  Empty for w < 0 or w > W.
  std::vector<JetMonomial> weight_basis(Weight w) const;
  std::vector<std::size_t> weight_dimensions() const;

  /// Parse an expression: + - * / ^, parentheses, integer and p/q
  /// literals, I (imaginary unit, unless a generator is named I), generator
  /// names, jet variables as name<order> (x2 is x^{(2)}) and d^k(expr).
  /// The result is reduced.
  GradedElement parse_element(std::string_view text) const;

  std::string str(const GradedElement& a) const { return a.str(generators_); }

 private:
  struct WeightReducer {
    std::vector<JetMonomial> standard;
    /// pivot monomial -> the rest of its echelon row (pivot = -rest mod I)
    std::map<JetMonomial, LinComb> rows;
  };

  void build_reducers();

  std::vector<std::string> generators_;
  std::vector<GradedElement> relations_;
  Weight max_weight_;
  bool inhomogeneous_ = false;
  std::vector<WeightReducer> reducers_;
};

using PresentationPtr = std::shared_ptr<const AlgebraPresentation>;

inline PresentationPtr make_presentation(AlgebraPresentation p) {
  return std::make_shared<const AlgebraPresentation>(std::move(p));
}

/// All monomials in `generator_count` generators of exact weight w.
std::vector<JetMonomial> free_monomials(std::size_t generator_count, Weight w);

/// Leibniz derivation with d(x^{(m)}) = x^{(m+1)}, without reduction.
GradedElement free_derive(const GradedElement& a);

/// Commutative product in P, reduced and truncated.
GradedElement multiply(const GradedElement& a, const GradedElement& b, const AlgebraPresentation& P);
/// Derivation in P; raises weight by one, top component is discarded.
GradedElement derive(const GradedElement& a, const AlgebraPresentation& P);
/// d^k(a).
GradedElement derive_n(const GradedElement& a, unsigned k, const AlgebraPresentation& P);
std::vector<JetMonomial> weight_basis(const AlgebraPresentation& P, Weight w);

/// Algebra homomorphism J(A) -> J(B) fixed by the image of every jet
/// variable of weight <= W.  Images must have no components below the
/// weight of their variable (so truncation is respected).
class AlgebraHom {
 public:
  AlgebraHom(PresentationPtr source, PresentationPtr target,
             std::map<JetVar, GradedElement> images);

  const PresentationPtr& source() const { return source_; }
  const PresentationPtr& target() const { return target_; }
  const std::map<JetVar, GradedElement>& images() const { return images_; }
  const GradedElement& image(JetVar v) const;
  /// True when every image is homogeneous of its variable's weight.
  bool is_graded() const;

  GradedElement apply(const GradedElement& a) const;
  GradedElement apply(const JetMonomial& m) const;

  friend bool operator==(const AlgebraHom& a, const AlgebraHom& b) { return a.images_ == b.images_; }

 private:
  PresentationPtr source_;
  PresentationPtr target_;
  std::map<JetVar, GradedElement> images_;
};

/// The unique differential extension x^{(m)} -> T^m f0(x) of an assignment
/// on degree-zero generators.
class DifferentialHom {
 public:
  const AlgebraHom& hom() const { return hom_; }
  const std::vector<GradedElement>& generator_images() const { return generator_images_; }
  GradedElement apply(const GradedElement& a) const { return hom_.apply(a); }

 private:
  friend DifferentialHom lift_hom(std::vector<GradedElement>, PresentationPtr, PresentationPtr);
  DifferentialHom(AlgebraHom hom, std::vector<GradedElement> gens)
      : hom_(std::move(hom)), generator_images_(std::move(gens)) {}

  AlgebraHom hom_;
  std::vector<GradedElement> generator_images_;
};

/// f0[g] is the image of generator g.  Throws, naming the relation, when a
/// relation's image does not vanish in the target.
DifferentialHom lift_hom(std::vector<GradedElement> f0, PresentationPtr source, PresentationPtr target);

}  // namespace vfa
