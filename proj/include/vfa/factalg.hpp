#pragma once

#include "vfa/diskgeom.hpp"
#include "vfa/jetalg.hpp"
#include "vfa/report.hpp"
#include "vfa/vertex.hpp"

#include <functional>
#include <map>
#include <vector>

namespace vfa {

/// Element of A^{(x) l}, normalised as a map from monomial tuples to
/// coefficients.  Arity 0 is the ground field.  Terms of total weight above
/// the truncation bound are dropped; every structure map preserves that
/// subspace, so comparisons are exact in the quotient.
class Tensor {
 public:
  using Key = std::vector<JetMonomial>;

  Tensor(std::size_t arity, Weight truncation) : arity_(arity), truncation_(truncation) {}
  static Tensor scalar(const Scalar& c, Weight truncation);
  /// Expansion of a_1 (x) ... (x) a_l.
  static Tensor simple(const std::vector<GradedElement>& factors, Weight truncation);

  std::size_t arity() const { return arity_; }
  Weight truncation() const { return truncation_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& key, const Scalar& c);
  /// Accumulate c * (f_1 (x) ... (x) f_m).
  void add_simple(const std::vector<GradedElement>& factors, const Scalar& c);

  Tensor operator+(const Tensor& o) const;
  Tensor scaled(const Scalar& c) const;
  /// Tensor product: keys are concatenated.
  Tensor concat(const Tensor& o) const;
  /// Entry k of the result is entry perm[k] of the input.
  Tensor permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Tensor&, const Tensor&) = default;
  std::string str(std::span<const std::string> names) const;

 private:
  std::size_t arity_;
  Weight truncation_;
  std::map<Key, Scalar> terms_;
};

/// Element of F^loc_A(L) = A^{(x) |L|}, factors aligned with the disks of L.
/// Disks are kept in canonical order (disk_less) and the tensor factors are
/// permuted along, so equal sections compare equal.
class TensorSection {
 public:
  static TensorSection simple(PresentationPtr P, const BasisElement& L, const std::vector<GradedElement>& factors);
  static TensorSection from_tensor(PresentationPtr P, const BasisElement& L, const Tensor& t);
  /// 1 in F(empty) = C.
  static TensorSection unit(PresentationPtr P);

  const PresentationPtr& presentation() const { return P_; }
  const BasisElement& basis() const { return L_; }
  const Tensor& tensor() const { return t_; }
  std::size_t factor_count() const { return L_.size(); }

  TensorSection operator+(const TensorSection& o) const;
  TensorSection scaled(const Scalar& c) const;

  friend bool operator==(const TensorSection& a, const TensorSection& b) {
    return a.L_ == b.L_ && a.t_ == b.t_;
  }
  std::string str() const;

 private:
  TensorSection(PresentationPtr P, BasisElement L, Tensor t)
      : P_(std::move(P)), L_(std::move(L)), t_(std::move(t)) {}

  PresentationPtr P_;
  BasisElement L_;
  Tensor t_;
};

/// Structure map F^L_M; the default is `corestrict`.  Checkers accept any
/// callable so negative controls can inject broken maps.
using StructureMap = std::function<TensorSection(const TensorSection&, const BasisElement&)>;

/// Per disk of M, the product of the factors on the L-disks it contains
/// (empty product = 1).
TensorSection corestrict(const TensorSection& s, const BasisElement& M);
/// Same, checking that `L` is the basis element `s` lives on.
TensorSection corestrict(const TensorSection& s, const BasisElement& L, const BasisElement& M);

/// Concatenate s (on L) and t (on M, disjoint from L), then push into N.
TensorSection multiply_sections(const TensorSection& s, const TensorSection& t, const BasisElement& N,
                                const StructureMap& structure = {});

/// Finite disjoint union of connected disk unions.
class SupportedOpen {
 public:
  explicit SupportedOpen(std::vector<DiskUnion> regions);
  const std::vector<DiskUnion>& regions() const { return regions_; }
  std::size_t region_count() const { return regions_.size(); }
  /// Union of all regions as one disk list.
  DiskUnion all_disks() const;

 private:
  std::vector<DiskUnion> regions_;
};

/// F(U) = A^{(x) c} for c regions.
struct OpenEvaluation {
  std::size_t region_count;
  /// Canonical map F(L) -> F(U): factors are multiplied inside their
  /// region.  Throws if a disk of L lies in no single disk of U.
  std::function<Tensor(const TensorSection&)> push;
};

OpenEvaluation evaluate(PresentationPtr P, const SupportedOpen& U);

/// mu_l: the l-fold product in A.
GradedElement mu_l(const AlgebraPresentation& P, const std::vector<GradedElement>& elements);
/// mu_l realised by placing the factors on the disks of `placement` and
/// corestricting into `outer`.
GradedElement mu_l_placed(PresentationPtr P, const std::vector<GradedElement>& elements,
                          const BasisElement& placement, const Disk& outer);

/// sigma_{(q,z)}: section on g.L with every factor mapped by e^{zT} q^{L_0}.
TensorSection equivariant_act(const GroupElement& g, const TensorSection& s);

/// F^loc_f: the algebra hom applied factor-wise.
class FAMorphism {
 public:
  explicit FAMorphism(AlgebraHom f) : f_(std::move(f)) {}
  const AlgebraHom& hom() const { return f_; }
  TensorSection apply(const TensorSection& s) const;

 private:
  AlgebraHom f_;
};

/// A morphism of prefactorization algebras F^loc_A -> F^loc_B given by its
/// components on basis elements.
struct PfaMorphism {
  PresentationPtr source;
  PresentationPtr target;
  std::function<TensorSection(const TensorSection&)> component;
};

PfaMorphism as_pfa_morphism(const FAMorphism& f);
PfaMorphism identity_morphism(PresentationPtr P);

/// theta(phi): A -> F^loc_A(C) -> F(C), composing the unit on `disk` with
/// phi and pushing into the plane.
AlgebraHom adjunction_theta(const PfaMorphism& phi, const Disk& disk = Disk(Scalar(0), Radius(1)));
/// theta'(f): on L, send (x) a_i to the image of (x) f(a_i) under the
/// inverse disk-to-plane isomorphisms.
PfaMorphism adjunction_theta_prime(const AlgebraHom& f);

// ---------------------------------------------------------------------------
// Sampling and checks
// ---------------------------------------------------------------------------

/// Deterministic generator of exact nested disk configurations.
class ConfigurationSampler {
 public:
  explicit ConfigurationSampler(std::uint64_t seed) : rng_(seed) {}

  /// 1..max_count disjoint disks inside `outer`, arranged on a random
  /// Pythagorean direction.
  std::vector<Disk> inside(const Disk& outer, std::size_t max_count);
  std::vector<Disk> inside_exact(const Disk& outer, std::size_t count);
  /// `count` disjoint disks inside `outer` by rejection sampling on a grid.
  std::vector<Disk> scattered(const Disk& outer, std::size_t count);
  /// 1..max_count pairwise disjoint disks with small Gaussian-rational centers.
  BasisElement top_level(std::size_t max_count);
  GroupElement group_element();
  Rational small_rational(long range);
  std::uint64_t draw(std::uint64_t bound) { return rng_() % bound; }

 private:
  std::mt19937_64 rng_;
};

/// Functoriality, symmetry, associativity, unit and the equivariance
/// axioms on sampled configurations.
Report check_pfa_axioms(PresentationPtr P, const SamplingSpec& samples, const StructureMap& structure = {});

/// mu_l through a line placement (randomly permuted) and a scattered
/// placement of the same factors; both must equal the plain product.
Report check_placement_independence(PresentationPtr P, const SamplingSpec& samples, std::size_t max_l = 4);

/// Finite-scale gluing check for the concentric chain D_{r_1}(0) c ... c
/// D_{r_k}(0): on every weight <= W the cokernel of p - q maps
/// isomorphically onto F(D_{r_k}(0)).
Report check_coequalizer_chain(PresentationPtr P, const std::vector<Rational>& radii, Weight W);

/// theta' o theta = id and theta o theta' = id on sampled graded homs.
Report check_adjunction(PresentationPtr source, PresentationPtr target, const SamplingSpec& samples);

/// Uniformly random graded hom: each jet variable goes to a random
/// homogeneous element of its weight.  Throws if the source relations do
/// not survive (use free sources).
AlgebraHom random_graded_hom(PresentationPtr source, PresentationPtr target, ElementSampler& sampler);

}  // namespace vfa
