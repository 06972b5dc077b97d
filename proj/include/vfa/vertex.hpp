#pragma once

#include "vfa/jetalg.hpp"
#include "vfa/report.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>

namespace vfa {

/// Commutative Z-graded vertex algebra carried by a (truncated) jet algebra:
/// vacuum = 1, T = derivation, Y(a,z)b = sum_n z^n/n! (T^n a) b.
class VertexAlgebra {
 public:
  explicit VertexAlgebra(PresentationPtr presentation);

  const AlgebraPresentation& presentation() const { return *presentation_; }
  const PresentationPtr& presentation_ptr() const { return presentation_; }
  Weight max_weight() const { return presentation_->max_weight(); }

  GradedElement vacuum() const { return presentation_->one(); }
  GradedElement translation(const GradedElement& a) const { return derive(a, *presentation_); }
  GradedElement product(const GradedElement& a, const GradedElement& b) const {
    return multiply(a, b, *presentation_);
  }
  /// a_(n) b.  Zero for n >= 0.
  GradedElement mode(const GradedElement& a, const GradedElement& b, int n) const;

 private:
  PresentationPtr presentation_;
};

/// Y(a,z)b truncated: entry n holds a_(n) b.  Entries for n >= 0 are
/// implicitly zero unless explicitly overwritten.
class ModeTable {
 public:
  explicit ModeTable(Weight truncation) : truncation_(truncation) {}

  GradedElement at(int n) const;
  void set(int n, GradedElement value);
  const std::map<int, GradedElement>& entries() const { return entries_; }

 private:
  Weight truncation_;
  std::map<int, GradedElement> entries_;
};

ModeTable vertex_op(const GradedElement& a, const GradedElement& b, const VertexAlgebra& V);

/// q^{L_0}: scales the weight-w component by q^w.  q must satisfy |q|^2 = 1.
GradedElement completion_rotation(const Scalar& q, const GradedElement& a);
/// e^{zT} as the truncated exponential series.
GradedElement completion_translation(const Scalar& z, const GradedElement& a, const AlgebraPresentation& P);

/// Provides a_(n) b; lets the checkers run against reconstructed or
/// deliberately corrupted mode maps.
using ModeFn = std::function<GradedElement(const GradedElement&, const GradedElement&, int)>;

struct SamplingSpec {
  std::uint64_t seed = 0;
  std::size_t count = 50;
  /// Largest numerator / denominator magnitude of sampled coefficients.
  int coefficient_range = 3;
  /// Mode indices are drawn from [mode_min, mode_max].
  int mode_min = -4;
  int mode_max = 1;
};

/// Deterministic sampler of homogeneous elements.  Uses raw 64-bit draws so
/// that sequences are identical across standard libraries.
class ElementSampler {
 public:
  ElementSampler(const AlgebraPresentation& P, std::uint64_t seed, int coefficient_range = 3);

  std::uint64_t draw(std::uint64_t bound) { return rng_() % bound; }
  int draw_int(int lo, int hi) { return lo + static_cast<int>(draw(static_cast<std::uint64_t>(hi - lo + 1))); }
  Rational draw_rational(bool allow_zero = true);
  Scalar draw_gaussian();
  /// Random homogeneous element of weight w (nonzero when the weight space is).
  GradedElement homogeneous(Weight w, bool gaussian = false);
  /// Random weight in [lo, hi] whose weight space is nonzero.
  Weight nonempty_weight(Weight lo, Weight hi);
  /// Sum of random homogeneous pieces over weights lo..hi.
  GradedElement element(Weight lo, Weight hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  const AlgebraPresentation& P_;
  std::mt19937_64 rng_;
  int range_;
};

/// Vacuum, creation, translation-commutator, locality (N = 0, 1, 2) and
/// grading checks on sampled homogeneous triples.
Report check_vertex_axioms(const VertexAlgebra& V, const SamplingSpec& samples, const ModeFn& modes = {});

/// sum_k (-1)^k C(N,k) a_(m+N-k)(b_(n+k) c) and the same with a, b swapped
/// in the outer/inner position (b_(n+k)(a_(m+N-k) c)).
std::pair<GradedElement, GradedElement> locality_sums(const GradedElement& a, const GradedElement& b,
                                                      const GradedElement& c, int m, int n, unsigned N,
                                                      const ModeFn& modes);

}  // namespace vfa
