#pragma once

#include "vfa/factalg.hpp"
#include "vfa/vertex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vfa {

/// An insertion point: a symbolic indeterminate or an exact value.
struct InsertionPoint {
  std::string symbol;
  std::optional<Scalar> value;

  static InsertionPoint symbolic(std::string name) { return {std::move(name), std::nullopt}; }
  static InsertionPoint exact(Scalar z) { return {"", std::move(z)}; }
  bool is_symbolic() const { return !value; }
};

/// prod_i e^{z_i T} a_i as a polynomial in the symbolic points with
/// GradedElement coefficients.
class InsertionSeries {
 public:
  using Exponents = std::vector<unsigned>;

  InsertionSeries(std::vector<std::string> symbols, Weight truncation)
      : symbols_(std::move(symbols)), truncation_(truncation) {}

  const std::vector<std::string>& symbols() const { return symbols_; }
  Weight truncation() const { return truncation_; }
  const std::map<Exponents, GradedElement>& terms() const { return terms_; }

  /// Coefficient of prod z_i^{e_i}; zero when absent.
  GradedElement coefficient(const Exponents& e) const;
  /// Substitute exact values for every symbol.
  GradedElement evaluate(const std::vector<Scalar>& values) const;

  void add(const Exponents& e, const GradedElement& c);
  friend bool operator==(const InsertionSeries&, const InsertionSeries&) = default;

 private:
  std::vector<std::string> symbols_;
  Weight truncation_;
  std::map<Exponents, GradedElement> terms_;
};

/// Throws when two exact points coincide.
InsertionSeries insert(const std::vector<InsertionPoint>& points, const std::vector<GradedElement>& elements,
                       const VertexAlgebra& V);

/// Same product computed through the disk-level structure: each a_i is
/// placed on a small disk at 0, translated by equivariance to z_i, and the
/// sections are multiplied into a large disk around 0.
GradedElement insert_via_disks(const std::vector<Scalar>& points, const std::vector<GradedElement>& elements,
                               const VertexAlgebra& V);

/// Unit section pushed into D_1(0).
GradedElement vacuum_of(const VertexAlgebra& V);
/// z^1 coefficient of insert([z], [a]).
GradedElement translation_of(const GradedElement& a, const VertexAlgebra& V);
/// z^{-n-1} coefficient of insert([z, 0], [a, b]); zero for n >= 0.
GradedElement mode_of(const GradedElement& a, const GradedElement& b, int n, const VertexAlgebra& V);
/// mode_of packaged for the vertex-axiom checker.
ModeFn reconstructed_modes(const VertexAlgebra& V);

/// Reconstructed vacuum, translation and modes |n| <= max_mode against the
/// source algebra on the full weight basis up to W, plus sampled
/// cross-checks of the insertion identities.
Report eta_roundtrip_check(const VertexAlgebra& V, Weight W, const SamplingSpec& samples, int max_mode = 6);

/// Jet lift x^{(m)} -> m! f0(x)_(-m-1)|0>, built from modes of the target.
AlgebraHom lift_modewise(const std::vector<GradedElement>& f0, PresentationPtr source, const VertexAlgebra& target);

/// Lift exists, is differential, and the generator-extension and mode-wise
/// constructions agree on every basis monomial up to the source bound.
Report check_jet_lift(const std::vector<GradedElement>& f0, PresentationPtr source, const VertexAlgebra& target);

}  // namespace vfa
