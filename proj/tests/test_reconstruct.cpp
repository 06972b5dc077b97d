#include "doctest.h"

#include "vfa/reconstruct.hpp"

using namespace vfa;

namespace {

PresentationPtr jet_x(Weight W) { return make_presentation(AlgebraPresentation::free({"x"}, W)); }
PresentationPtr jet_y(Weight W) { return make_presentation(AlgebraPresentation::free({"y"}, W)); }
PresentationPtr jet_xy(Weight W) { return make_presentation(AlgebraPresentation::parse({"x", "y"}, {"x*y"}, W)); }

}  // namespace

TEST_CASE("single insertion is the translation series") {
  VertexAlgebra V(jet_x(2));
  const auto& P = V.presentation();
  auto s = insert({InsertionPoint::symbolic("z")}, {P.var(0, 0)}, V);
  CHECK(s.coefficient({0}) == P.var(0, 0));
  CHECK(s.coefficient({1}) == P.var(0, 1));
  CHECK(s.coefficient({2}).is_zero());
  CHECK(s.terms().size() == 2);
}

TEST_CASE("two-point insertion against the origin") {
  VertexAlgebra V(jet_x(4));
  const auto& P = V.presentation();
  GradedElement x = P.var(0, 0);
  auto s = insert({InsertionPoint::symbolic("z"), InsertionPoint::exact(Scalar(0))}, {x, x}, V);
  CHECK(s.coefficient({0}) == P.parse_element("x0^2"));
  CHECK(s.coefficient({1}) == P.parse_element("x1*x0"));
  CHECK(s.coefficient({2}) == P.parse_element("x2*x0/2"));
  CHECK(s.coefficient({3}).is_zero());  // x3*x0 has weight 5
  Scalar z(Rational(1, 2), Rational(1));
  CHECK(s.evaluate({z}) == insert({InsertionPoint::exact(z), InsertionPoint::exact(Scalar(0))}, {x, x}, V)
                               .coefficient({}));
}

TEST_CASE("empty insertion is the unit") {
  VertexAlgebra V(jet_xy(3));
  auto s = insert({}, {}, V);
  CHECK(s.coefficient({}) == V.vacuum());
  CHECK(vacuum_of(V) == V.vacuum());
  CHECK(insert_via_disks({}, {}, V) == V.vacuum());
}

TEST_CASE("coincident points are rejected") {
  VertexAlgebra V(jet_x(3));
  GradedElement x = V.presentation().var(0, 0);
  CHECK_THROWS_AS(insert({InsertionPoint::exact(Scalar(1)), InsertionPoint::exact(Scalar(1))}, {x, x}, V), Error);
  CHECK_THROWS_AS(insert_via_disks({Scalar(2), Scalar(2)}, {x, x}, V), Error);
  CHECK_THROWS_AS(insert({InsertionPoint::symbolic("z")}, {x, x}, V), Error);
}

TEST_CASE("reconstructed translation and modes") {
  VertexAlgebra V(jet_x(4));
  const auto& P = V.presentation();
  CHECK(translation_of(P.var(0, 0), V) == P.var(0, 1));
  CHECK(translation_of(P.parse_element("x0^2"), V) == P.parse_element("2*x1*x0"));
  CHECK(translation_of(V.vacuum(), V).is_zero());
  GradedElement x = P.var(0, 0);
  CHECK(mode_of(x, x, -1, V) == P.parse_element("x0^2"));
  CHECK(mode_of(x, x, -2, V) == P.parse_element("x1*x0"));
  CHECK(mode_of(x, x, 0, V).is_zero());
  CHECK(mode_of(x, V.vacuum(), -1, V) == x);
}

TEST_CASE("disk route agrees with direct insertion (property)") {
  VertexAlgebra V(jet_xy(4));
  ElementSampler es(V.presentation(), 44);
  for (int s = 0; s < 15; ++s) {
    std::vector<Scalar> pts = {es.draw_gaussian(), es.draw_gaussian() + Scalar(7)};
    std::vector<GradedElement> els = {es.element(0, 2), es.element(0, 2)};
    auto direct = insert({InsertionPoint::exact(pts[0]), InsertionPoint::exact(pts[1])}, els, V).coefficient({});
    CHECK(insert_via_disks(pts, els, V) == direct);
  }
}

TEST_CASE("round trip recovers the vertex algebra") {
  for (const auto& P : {jet_x(5), jet_xy(5)}) {
    VertexAlgebra V(P);
    Report r = eta_roundtrip_check(V, 5, SamplingSpec{.seed = 2, .count = 8}, 4);
    CHECK_MESSAGE(r.all_passed(), r.to_json().dump());
    CHECK(r.find("modes")->passed > 0);
    CHECK(r.find("translation")->passed > 0);
  }
}

TEST_CASE("jet lift of x -> y^2") {
  auto src = jet_x(4);
  VertexAlgebra T(jet_y(4));
  const auto& Q = T.presentation();
  std::vector<GradedElement> f0 = {Q.parse_element("y0^2")};
  AlgebraHom h = lift_modewise(f0, src, T);
  CHECK(h.apply(src->var(0, 0)) == Q.parse_element("y0^2"));
  CHECK(h.apply(src->var(0, 1)) == Q.parse_element("2*y1*y0"));
  CHECK(h.apply(src->var(0, 2)) == Q.parse_element("2*y2*y0 + 2*y1^2"));
  Report r = check_jet_lift(f0, src, T);
  CHECK_MESSAGE(r.all_passed(), r.to_json().dump());
}

TEST_CASE("jet lift agrees with the generator extension (property)") {
  auto src = jet_x(5);
  VertexAlgebra T(jet_xy(5));
  ElementSampler es(T.presentation(), 8);
  for (int s = 0; s < 6; ++s) {
    std::vector<GradedElement> f0 = {es.element(1, 3)};
    Report r = check_jet_lift(f0, src, T);
    CHECK_MESSAGE(r.all_passed(), r.to_json().dump());
  }
}
