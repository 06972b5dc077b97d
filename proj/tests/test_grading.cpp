#include "doctest.h"

#include "vfa/grading.hpp"

#include <random>

using namespace vfa;

namespace {

const std::vector<std::string> kNames = {"x", "y"};

JetMonomial mono(std::initializer_list<JetVar> vars) { return JetMonomial(std::vector<JetVar>(vars)); }

}  // namespace

TEST_CASE("scalar arithmetic over Q(i)") {
  Scalar a(Rational(1, 2), Rational(3, 4));
  Scalar b(Rational(-2), Rational(1, 3));
  CHECK(a * b == Scalar(Rational(-1) - Rational(1, 4), Rational(1, 6) - Rational(3, 2)));
  CHECK((a / b) * b == a);
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK(a.conj() * a == Scalar(a.norm2()));
  CHECK(Scalar(Rational(3, 5), Rational(4, 5)).norm2() == 1);
  CHECK(Scalar::i().pow(-3) == Scalar::i());
  CHECK_THROWS_AS(a / Scalar(0), Error);
  CHECK(Scalar(3).str() == "3");
  CHECK(Scalar(Rational(-1, 2)).str() == "-1/2");
  CHECK(Scalar(Rational(0), Rational(2)).str() == "2*I");
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(factorial(5) == 120);
  CHECK(binomial(6, 2) == 15);
}

TEST_CASE("jet variable weights and monomial order") {
  CHECK(JetVar{0, 0}.weight() == 1);
  CHECK(JetVar{1, 3}.weight() == 4);
  JetMonomial m = mono({{0, 1}, {0, 0}});
  CHECK(m.weight() == 3);
  CHECK(m.degree() == 2);
  CHECK(m == mono({{0, 0}, {0, 1}}));  // factor order is irrelevant
  CHECK(JetMonomial().is_unit());
  CHECK(JetMonomial() < JetMonomial::var(0, 0));
  CHECK(m.str(kNames) == "x1*x0");
  CHECK((JetMonomial::var(0, 0) * JetMonomial::var(0, 0)).str(kNames) == "x0*x0");
}

TEST_CASE("graded elements drop terms above the truncation bound") {
  GradedElement a(2);
  a.add_term(JetMonomial::var(0, 0), Scalar(1));
  a.add_term(JetMonomial::var(0, 2), Scalar(5));  // weight 3 > 2
  CHECK(a.term_count() == 1);
  CHECK(a.homogeneous_weight() == 1);
  a.add_term(JetMonomial::var(0, 0), Scalar(-1));
  CHECK(a.is_zero());
  CHECK_THROWS_AS(GradedElement(2) + GradedElement(3), Error);
}

TEST_CASE("truncated never raises the bound") {
  GradedElement a = GradedElement::monomial(JetMonomial::var(0, 1), Scalar(2), 3);
  CHECK(a.truncated(5).truncation() == 3);
  CHECK(a.truncated(1).is_zero());
  CHECK(project(a, 2) == a);
  CHECK(project(a, 1).is_zero());
}

TEST_CASE("free product: commutative, associative, unital, weight additive (property)") {
  std::mt19937_64 rng(11);
  auto random_element = [&](Weight W) {
    GradedElement e(W);
    for (int t = 0; t < 4; ++t) {
      std::vector<JetVar> vars;
      std::size_t deg = rng() % 3;
      for (std::size_t k = 0; k < deg; ++k) vars.push_back({static_cast<std::uint32_t>(rng() % 2), static_cast<std::uint32_t>(rng() % 3)});
      e.add_term(JetMonomial(vars), Scalar(Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3))));
    }
    return e;
  };
  for (int s = 0; s < 100; ++s) {
    GradedElement a = random_element(6), b = random_element(6), c = random_element(6);
    CHECK(free_product(a, b) == free_product(b, a));
    CHECK(free_product(free_product(a, b), c) == free_product(a, free_product(b, c)));
    CHECK(free_product(a, GradedElement::unit(6)) == a);
    CHECK(free_product(a, b + c) == free_product(a, b) + free_product(a, c));
    GradedElement ab = free_product(a, b);
    for (const auto& [w, lc] : ab.components())
      for (const auto& [m, coef] : lc) CHECK(m.weight() == w);
  }
}
