#pragma once

#include "vfa/report.hpp"
#include "vfa/vertex.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace vfa {

using Complex = std::complex<double>;

/// Coordinates of a truncated graded space in a fixed monomial basis.
/// Working seminorm: the coordinate max-norm.
class NumericVector {
 public:
  NumericVector() = default;
  explicit NumericVector(std::size_t dim) : c_(dim) {}
  explicit NumericVector(std::vector<Complex> c) : c_(std::move(c)) {}

  std::size_t dim() const { return c_.size(); }
  Complex& operator[](std::size_t i) { return c_[i]; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Complex>& coords() const { return c_; }

  NumericVector& operator+=(const NumericVector& o);
  NumericVector& operator-=(const NumericVector& o);
  NumericVector& operator*=(Complex s);
  friend NumericVector operator+(NumericVector a, const NumericVector& b) { return a += b; }
  friend NumericVector operator-(NumericVector a, const NumericVector& b) { return a -= b; }
  friend NumericVector operator*(Complex s, NumericVector a) { return a *= s; }

  double max_norm() const;

 private:
  std::vector<Complex> c_;
};

double max_distance(const NumericVector& a, const NumericVector& b);

/// Full circle or straight segment.
struct Segment {
  enum class Kind { circle, line } kind;
  Complex a;        // circle: center; line: start
  Complex b;        // line: end
  double radius = 0;
  bool positive = true;

  static Segment circle(Complex center, double radius, bool positive = true);
  static Segment line(Complex z0, Complex z1);
  Complex start() const;
  Complex end() const;
  double length() const;
};

/// Piecewise curve; consecutive endpoints must match.
class Curve {
 public:
  explicit Curve(std::vector<Segment> segments);
  static Curve circle(Complex center, double radius, bool positive = true) {
    return Curve({Segment::circle(center, radius, positive)});
  }
  /// Closed polygon through the given vertices.
  static Curve polygon(const std::vector<Complex>& vertices);

  const std::vector<Segment>& segments() const { return segments_; }
  bool closed() const;
  double length() const;

 private:
  std::vector<Segment> segments_;
};

/// Annulus inner < |z - center| < outer with excluded points.
struct Domain {
  Complex center = 0;
  double inner = 0;
  double outer = std::numeric_limits<double>::infinity();
  std::vector<Complex> exclusions;
  double exclusion_radius = 1e-12;

  bool contains(Complex z) const;
};

struct ContourFunction {
  std::function<NumericVector(Complex)> eval;
  std::size_t dim = 1;
  Domain domain;
};

/// Scalar-valued convenience wrapper.
ContourFunction scalar_function(std::function<Complex(Complex)> f, Domain domain = {});

/// Uniform partition of [lo, hi] into n cells with midpoint tags.
NumericVector riemann_integral(const std::function<NumericVector(double)>& f, double lo, double hi, std::size_t n);

/// Midpoint sums at n, 2n, ..., 2^levels n combined by Richardson
/// extrapolation in h^2.
NumericVector riemann_integral_refined(const std::function<NumericVector(double)>& f, double lo, double hi,
                                       std::size_t n, unsigned levels);

struct PartitionValidation {
  std::size_t partitions = 0;
  double max_discrepancy = 0;  // against the uniform midpoint rule
  double max_mesh = 0;
};

/// Compare Riemann sums over random tagged partitions of mesh <= 3(hi-lo)/n
/// against the uniform rule.  Validation only: no convergence claim.
PartitionValidation validate_tagged_partitions(const std::function<NumericVector(double)>& f, double lo, double hi,
                                               std::size_t n, std::size_t partitions, std::uint64_t seed);

/// Circles: uniform-angle trapezoid with `nodes` points.  Lines: refined
/// midpoint rule starting from `nodes` cells.  Throws if a node leaves the
/// domain.
NumericVector contour_integral(const ContourFunction& f, const Curve& C, std::size_t nodes = 128,
                               unsigned line_levels = 3);

/// (1/2 pi i) \oint f(zeta) (zeta - center)^{-n-1} d zeta on |zeta - center| = radius.
NumericVector cauchy_coeff(const ContourFunction& f, Complex center, int n, double radius, std::size_t nodes = 128);

struct Singularity {
  enum class Kind { removable, pole, essential } kind;
  int order = 0;  // for poles
  NumericVector residue;
  /// max over probe radii of |a_{-k}|, k = 1..window
  std::vector<double> negative_coefficients;
  std::string str() const;
};

/// Bounded-window heuristic; results hold within the probed window only.
Singularity classify_singularity(const ContourFunction& f, Complex center, const std::vector<double>& probe_radii,
                                 int window = 8, double threshold = 1e-8, std::size_t nodes = 128);

/// T and multiplication as sparse complex matrices on the monomial basis of
/// weights 0..W; insertions evaluated by floating arithmetic only.
class NumericModel {
 public:
  explicit NumericModel(const VertexAlgebra& V);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<JetMonomial>& basis() const { return basis_; }

  NumericVector coords(const GradedElement& a) const;
  NumericVector translate(Complex z, const NumericVector& v) const;  // e^{zT} v
  NumericVector multiply(const NumericVector& u, const NumericVector& v) const;
  /// prod_i e^{z_i T} a_i
  NumericVector insert(const std::vector<Complex>& points, const std::vector<NumericVector>& elements) const;

 private:
  NumericVector apply_T(const NumericVector& v) const;

  const VertexAlgebra& V_;
  std::vector<JetMonomial> basis_;
  std::vector<Weight> weight_;
  std::vector<std::vector<std::pair<std::size_t, Complex>>> T_;  // column j: sparse image of basis j
  std::vector<std::vector<std::vector<std::pair<std::size_t, Complex>>>> mult_;
};

/// cauchy_coeff of z -> insert([z, 0], [a, b]) against mode_of for
/// |n| <= max_mode on every pair of basis monomials up to weight W.
Report check_numeric_modes(const VertexAlgebra& V, Weight W, int max_mode = 6, std::size_t nodes = 128,
                           double radius = 1.0, double tolerance = 1e-9);

/// Orthogonality of zeta^n on the unit circle (64 nodes), Goursat and
/// primitive checks on random triangles, Taylor recovery, and radius
/// independence of Laurent coefficients.  Tagged-partition validation is
/// attached as detail only.
Report check_contour_sanity(std::size_t nodes = 128, std::uint64_t seed = 0, std::size_t triangles = 20);

struct SwapOptions {
  double outer_radius = 2.0;
  double inner_radius = 1.0;
  std::size_t nodes = 128;
  double tolerance = 1e-8;
  /// Added to the integrand; used for negative controls.
  std::function<NumericVector(Complex, Complex)> perturbation;
  /// Reused across calls when set; must be built from the same algebra.
  const NumericModel* model = nullptr;
};

/// Iterated contour integrals of z^m w^n (z-w)^N insert([z, w, 0], [a, b, c])
/// in both orders, against the two symbolic locality sums.
Report residue_swap_check(const GradedElement& a, const GradedElement& b, const GradedElement& c, int m, int n,
                          unsigned N, const VertexAlgebra& V, const SwapOptions& opts = {});

}  // namespace vfa
