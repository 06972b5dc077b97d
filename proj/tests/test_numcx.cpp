#include "doctest.h"

#include "vfa/numcx.hpp"
#include "vfa/reconstruct.hpp"

#include <cmath>
#include <numbers>

using namespace vfa;

namespace {

using C = std::complex<double>;

PresentationPtr jet_x(Weight W) { return make_presentation(AlgebraPresentation::free({"x"}, W)); }

std::function<NumericVector(double)> real_fn(std::function<C(double)> f) {
  return [f](double t) { return NumericVector(std::vector<C>{f(t)}); };
}

// Laurent coefficient of 1/(z(z-2)) on 0 < |z| < 2:
// 1/(z(z-2)) = -1/(2z) * sum_k (z/2)^k, so a_n = -(1/2)^(n+2) for n >= -1.
double partial_fraction_coefficient(int n) { return n < -1 ? 0.0 : -std::pow(0.5, n + 2); }

}  // namespace

TEST_CASE("midpoint Riemann sums") {
  CHECK(std::abs(riemann_integral(real_fn([](double t) { return C(t); }), 0, 1, 256)[0] - 0.5) < 1e-14);
  double sq = riemann_integral(real_fn([](double t) { return C(t * t); }), 0, 1, 256)[0].real();
  CHECK(std::abs(sq - 1.0 / 3.0) < 1e-5);
  CHECK(std::abs(riemann_integral(real_fn([](double) { return C(0); }), 0, 1, 256)[0]) == 0.0);
  auto e = riemann_integral(real_fn([](double t) { return std::exp(C(0, t)); }), 0, 2 * std::numbers::pi, 256)[0];
  CHECK(std::abs(e) < 1e-12);
  double refined = riemann_integral_refined(real_fn([](double t) { return C(t * t); }), 0, 1, 16, 3)[0].real();
  CHECK(std::abs(refined - 1.0 / 3.0) < 1e-14);
  auto v = validate_tagged_partitions(real_fn([](double t) { return C(std::sin(t)); }), 0, 1, 64, 10, 1);
  CHECK(v.partitions == 10);
  CHECK(v.max_mesh <= 3.0 / 64 + 1e-15);
}

TEST_CASE("cauchy coefficients") {
  auto poly = scalar_function([](C z) { return 3.0 + 2.0 * z * z; });
  CHECK(std::abs(cauchy_coeff(poly, 0, 2, 1.0)[0] - 2.0) < 1e-12);
  CHECK(std::abs(cauchy_coeff(poly, 0, 0, 0.5)[0] - 3.0) < 1e-12);
  CHECK(std::abs(cauchy_coeff(poly, 0, 1, 1.0)[0]) < 1e-12);

  Domain annulus{.center = 0, .inner = 0, .outer = 2, .exclusions = {}, .exclusion_radius = 1e-12};
  auto pf = scalar_function([](C z) { return 1.0 / (z * (z - 2.0)); }, annulus);
  for (int n = -3; n <= 5; ++n)
    CHECK(std::abs(cauchy_coeff(pf, 0, n, 1.0)[0] - partial_fraction_coefficient(n)) < 1e-12);
  CHECK_THROWS_AS(cauchy_coeff(pf, 0, 0, 2.5), Error);
}

TEST_CASE("contour integrals along closed curves") {
  for (int n = -4; n <= 4; ++n) {
    auto f = scalar_function([n](C z) { return std::pow(z, n); });
    C got = contour_integral(f, Curve::circle(0, 1.0), 64)[0];
    C want = n == -1 ? C(0, 2 * std::numbers::pi) : C(0);
    CHECK(std::abs(got - want) < 1e-12);
  }
  auto entire = scalar_function([](C z) { return z * z * z - 2.0 * z + C(0, 1); });
  Curve tri = Curve::polygon({C(0, 0), C(2, 0.5), C(-1, 1.5)});
  CHECK(tri.closed());
  CHECK(std::abs(contour_integral(entire, tri)[0]) < 1e-10);
  CHECK_THROWS_AS(Curve({Segment::line(0, 1), Segment::line(2, 3)}), Error);

  Domain punctured{.center = 0, .inner = 0.5, .outer = 3, .exclusions = {}, .exclusion_radius = 1e-12};
  auto g = scalar_function([](C z) { return 1.0 / z; }, punctured);
  CHECK_THROWS_AS(contour_integral(g, Curve::circle(0, 0.25)), Error);
}

TEST_CASE("singularity classification within the window") {
  std::vector<double> radii = {0.25, 0.5};
  Domain punctured{.center = 0, .inner = 0, .outer = 2, .exclusions = {}, .exclusion_radius = 1e-12};
  auto pf = classify_singularity(scalar_function([](C z) { return 1.0 / (z * (z - 2.0)); }, punctured), 0, radii);
  CHECK(pf.kind == Singularity::Kind::pole);
  CHECK(pf.order == 1);
  CHECK(std::abs(pf.residue[0] + 0.5) < 1e-10);

  auto sinc = classify_singularity(scalar_function([](C z) { return std::sin(z) / z; }, punctured), 0, radii);
  CHECK(sinc.kind == Singularity::Kind::removable);

  auto sq = classify_singularity(scalar_function([](C z) { return 1.0 / (z * z); }, punctured), 0, radii);
  CHECK(sq.kind == Singularity::Kind::pole);
  CHECK(sq.order == 2);
  CHECK(std::abs(sq.residue[0]) < 1e-10);

  auto ess = classify_singularity(scalar_function([](C z) { return std::exp(1.0 / z); }, punctured), 0, radii);
  CHECK(ess.kind == Singularity::Kind::essential);
}

TEST_CASE("numeric model matches exact arithmetic") {
  VertexAlgebra V(jet_x(4));
  NumericModel M(V);
  CHECK(M.dim() == 1 + 1 + 2 + 3 + 5);
  const auto& P = V.presentation();
  GradedElement a = P.parse_element("x0 + 2*x1"), b = P.parse_element("x0^2");
  NumericVector prod = M.multiply(M.coords(a), M.coords(b));
  CHECK(max_distance(prod, M.coords(multiply(a, b, P))) < 1e-15);
  Scalar z(Rational(1, 3), Rational(-1, 2));
  NumericVector moved = M.translate(z.to_complex(), M.coords(a));
  CHECK(max_distance(moved, M.coords(completion_translation(z, a, P))) < 1e-14);
}

TEST_CASE("numeric modes agree on all basis pairs") {
  Report r = check_numeric_modes(VertexAlgebra(jet_x(4)), 4, 4, 128, 1.0, 1e-9);
  CHECK_MESSAGE(r.all_passed(), r.to_json().dump());
  CHECK(r.find("numeric_modes")->passed == 12 * 12);
}

TEST_CASE("contour sanity report") {
  Report r = check_contour_sanity(128, 3, 10);
  CHECK_MESSAGE(r.all_passed(), r.to_json().dump());
  for (const char* name : {"orthogonality", "goursat_triangle", "primitive_closed_curve", "taylor_recovery",
                           "laurent_radius_independence", "riemann_midpoint"})
    CHECK_MESSAGE(r.find(name) != nullptr, name);
}

TEST_CASE("residue swap") {
  VertexAlgebra V(jet_x(4));
  const auto& P = V.presentation();
  GradedElement x = P.var(0, 0), x1 = P.var(0, 1);
  NumericModel M(V);
  SwapOptions opts;
  opts.model = &M;
  Report r = residue_swap_check(x, x1, x, -1, -1, 0, V, opts);
  CHECK_MESSAGE(r.all_passed(), r.to_json().dump());
  // With N = 0 and m = n = -1 both sides are the product abc.
  auto sums = locality_sums(x, x1, x, -1, -1, 0, reconstructed_modes(V));
  CHECK(sums.first == multiply(multiply(x, x1, P), x, P));
  CHECK(sums.first == sums.second);

  Report r2 = residue_swap_check(x, x, x1, -2, -1, 1, V, opts);
  CHECK_MESSAGE(r2.all_passed(), r2.to_json().dump());

  SwapOptions bad = opts;
  NumericVector unit = M.coords(V.vacuum());
  bad.perturbation = [unit](C z, C w) { return (1.0 / ((z - w) * w)) * unit; };
  Report r3 = residue_swap_check(x, x, x, -1, -1, 0, V, bad);
  CHECK(!r3.find("orders_agree")->pass());
}
