#include "doctest.h"

#include "vfa/vertex.hpp"

using namespace vfa;

namespace {

PresentationPtr jet_x(Weight W) { return make_presentation(AlgebraPresentation::free({"x"}, W)); }
PresentationPtr jet_xy(Weight W) { return make_presentation(AlgebraPresentation::parse({"x", "y"}, {"x*y"}, W)); }

}  // namespace

TEST_CASE("modes of x against x") {
  VertexAlgebra V(jet_x(6));
  const auto& P = V.presentation();
  GradedElement x = P.var(0, 0);
  CHECK(V.mode(x, x, -1) == P.parse_element("x0*x0"));
  CHECK(P.str(V.mode(x, x, -2)) == "x1*x0");
  CHECK(V.mode(x, V.vacuum(), -1) == x);
  for (int n = 0; n < 4; ++n) CHECK(V.mode(x, x, n).is_zero());
  ModeTable t = vertex_op(x, x, V);
  CHECK(t.at(-3) == P.parse_element("x2*x0/2"));
  CHECK(t.at(5).is_zero());
}

TEST_CASE("rotation q^{L_0}") {
  auto P = jet_x(4);
  GradedElement a = P->parse_element("x1 + 3*x0^2");
  CHECK(completion_rotation(Scalar(1), a) == a);
  CHECK(completion_rotation(Scalar::i(), a) == -a);
  Scalar q(Rational(3, 5), Rational(4, 5));
  CHECK(completion_rotation(q, P->var(0, 0)) == P->var(0, 0).scaled(q));
  CHECK_THROWS_AS(completion_rotation(Scalar(2), a), Error);
}

TEST_CASE("translation e^{zT}") {
  auto P = jet_x(3);
  GradedElement x = P->var(0, 0);
  Scalar z(Rational(2), Rational(1));
  GradedElement expect = x + P->var(0, 1).scaled(z) + P->var(0, 2).scaled(z * z * Scalar(Rational(1, 2)));
  CHECK(completion_translation(z, x, *P) == expect);
  CHECK(completion_translation(Scalar(0), x, *P) == x);
  CHECK(completion_translation(z, P->one(), *P) == P->one());
}

TEST_CASE("rotation and translation are algebra maps satisfying the semidirect law (property)") {
  for (const auto& P : {jet_x(6), jet_xy(6)}) {
    ElementSampler es(*P, 21);
    const Scalar units[] = {Scalar::i(), Scalar(Rational(3, 5), Rational(4, 5)), Scalar(Rational(-5, 13), Rational(12, 13))};
    for (int s = 0; s < 40; ++s) {
      GradedElement a = es.element(0, 3), b = es.element(0, 3);
      Scalar q = units[s % 3], q2 = units[(s + 1) % 3];
      Scalar z = es.draw_gaussian(), z2 = es.draw_gaussian();
      CHECK(completion_rotation(q, multiply(a, b, *P)) ==
            multiply(completion_rotation(q, a), completion_rotation(q, b), *P));
      CHECK(completion_translation(z, multiply(a, b, *P), *P) ==
            multiply(completion_translation(z, a, *P), completion_translation(z, b, *P), *P));
      GradedElement lhs = completion_translation(
          z, completion_rotation(q, completion_translation(z2, completion_rotation(q2, a), *P)), *P);
      GradedElement rhs = completion_translation(z + q * z2, completion_rotation(q * q2, a), *P);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("vertex algebra axioms hold on both standard algebras") {
  SamplingSpec s;
  s.count = 60;
  for (const auto& P : {jet_x(6), jet_xy(6)}) {
    Report r = check_vertex_axioms(VertexAlgebra(P), s);
    INFO(r.to_json().dump());
    CHECK(r.all_passed());
    CHECK(r.find("locality_N2")->passed == 60);
  }
}

TEST_CASE("corrupted mode table is caught") {
  VertexAlgebra V(jet_x(5));
  ModeFn bad = [&V](const GradedElement& a, const GradedElement& b, int n) {
    GradedElement v = V.mode(a, b, n);
    return n == -2 ? v.scaled(Scalar(2)) : v;
  };
  SamplingSpec s;
  s.count = 30;
  Report r = check_vertex_axioms(V, s, bad);
  CHECK(!r.find("translation")->pass());
  CHECK(!r.all_passed());
}

TEST_CASE("locality sums with N = 0 reduce to commutativity of the product") {
  VertexAlgebra V(jet_xy(5));
  const auto& P = V.presentation();
  ModeFn modes = [&V](const GradedElement& a, const GradedElement& b, int n) { return V.mode(a, b, n); };
  GradedElement a = P.parse_element("x + y1"), b = P.parse_element("x1"), c = P.parse_element("y");
  auto [lhs, rhs] = locality_sums(a, b, c, -1, -1, 0, modes);
  CHECK(lhs == rhs);
  CHECK(lhs == multiply(a, multiply(b, c, P), P));
  for (unsigned N = 1; N <= 2; ++N)
    for (int m = -3; m < 0; ++m)
      for (int n = -3; n < 0; ++n) {
        auto [l, r] = locality_sums(a, b, c, m, n, N, modes);
        CHECK(l == r);
      }
}

TEST_CASE("sampler is deterministic per seed") {
  auto P = jet_x(6);
  ElementSampler a(*P, 3), b(*P, 3);
  for (int k = 0; k < 20; ++k) CHECK(a.element(0, 6) == b.element(0, 6));
}
