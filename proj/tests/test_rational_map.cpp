#include <catch2/catch_amalgamated.hpp>

#include "arbordyn/rational_map.hpp"

using namespace arbordyn;

namespace {
RationalMap quad(long c1, long c0) {
  return RationalMap::from_polynomial(QPoly({BigRat(c0), BigRat(c1), BigRat(1)}));
}
}  // namespace

TEST_CASE("iteration") {
  CHECK(iterate(quad(1, 0), 2) == parse_rational_map("x^4+2*x^3+2*x^2+x"));
  CHECK(iterate(quad(1, 0), 0) == RationalMap::identity_map());
  CHECK(iterate(quad(0, 0), 3) == parse_rational_map("x^8"));
}

TEST_CASE("iteration is additive in the exponent") {
  for (const auto& phi : {quad(1, 0), quad(-3, 2), parse_rational_map("(x^2+1)/x")}) {
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b)
        CHECK(iterate(phi, a + b) == compose(iterate(phi, a), iterate(phi, b)));
  }
}

TEST_CASE("moebius conjugation") {
  // x^2 + kx at k = 5, conjugated by x - 5, gives x^2 - 5x + 5
  CHECK(mobius_conjugate(quad(5, 0), MobiusTransform::shift(-5)) == quad(-5, 5));
  // x^2 + 4x conjugated by x + 2 gives x^2 - 2
  CHECK(mobius_conjugate(quad(4, 0), MobiusTransform::shift(2)) == quad(0, -2));
  // x^2 + 2x conjugated by x - 1 gives x^2
  CHECK(mobius_conjugate(quad(2, 0), MobiusTransform::shift(-1)) == quad(0, 0));
  CHECK_THROWS_AS(MobiusTransform(BigRat(2), BigRat(4), BigRat(1), BigRat(2)),
                  std::invalid_argument);
}

TEST_CASE("conjugation commutes with iteration") {
  auto mu = MobiusTransform::shift(BigRat(-7, 2));
  auto nu = MobiusTransform(BigRat(2), BigRat(1), BigRat(1), BigRat(1));
  for (const auto& phi : {quad(3, -1), parse_rational_map("(2*x^2-1)/(x+3)")}) {
    for (const auto& mob : {mu, nu}) {
      for (int i = 0; i <= 5; ++i)
        CHECK(mobius_conjugate(iterate(phi, i), mob) ==
              iterate(mobius_conjugate(phi, mob), i));
    }
  }
}

TEST_CASE("normalization gives coprime parts and a monic denominator") {
  auto f = parse_rational_map("(x^2-1)/(x-1)");
  CHECK(f.is_polynomial());
  CHECK(f == parse_rational_map("x+1"));

  auto g = parse_rational_map("(2*x^2+2)/(2*x)");
  CHECK(g.denominator() == QPoly::variable());
  CHECK(g == parse_rational_map("(x^2+1)/x"));

  auto h = parse_rational_map("(x^3+x)/(3*x^2+3)");
  CHECK(h.denominator().leading() == 1);
  CHECK(poly_gcd(h.numerator(), h.denominator()).degree() == 0);
}

TEST_CASE("separability of preimage equations") {
  CHECK_FALSE(check_separable_preimages(quad(0, 0), BigRat(0), 2));
  for (int n = 1; n <= 5; ++n) {
    CHECK(check_separable_preimages(quad(-1, 1), BigRat(0), n));  // Sylvester
    CHECK(check_separable_preimages(quad(1, 0), BigRat(0), n));
  }
  // degree drop also counts as non-separable: (x^2+1)/x at alpha with lower
  // numerator degree
  CHECK(check_separable_preimages(parse_rational_map("(x^2+1)/x"), BigRat(3), 1));
}

TEST_CASE("forward orbits") {
  auto fixed = forward_orbit(quad(3, 0), BigRat(0), 8);
  REQUIRE(fixed.cycle.has_value());
  CHECK(fixed.cycle->first == 0);
  CHECK(fixed.cycle->second == 1);

  // x^2 - (k+1)x + k at k = 2: orbit of 0 is 0, 2, 0, 2, ...
  auto two_cycle = forward_orbit(quad(-3, 2), BigRat(0), 8);
  REQUIRE(two_cycle.cycle.has_value());
  CHECK(two_cycle.cycle->first == 0);
  CHECK(two_cycle.cycle->second == 2);
  CHECK(two_cycle.terms == std::vector<BigRat>{BigRat(0), BigRat(2)});

  // Sylvester's sequence from a0 = 2
  auto sylvester = forward_orbit(quad(-1, 1), BigRat(2), 5);
  CHECK_FALSE(sylvester.cycle.has_value());
  CHECK(sylvester.terms == std::vector<BigRat>{BigRat(2), BigRat(3), BigRat(7),
                                               BigRat(43), BigRat(1807), BigRat(3263443)});

  CHECK_THROWS_AS(forward_orbit(parse_rational_map("1/x"), BigRat(0), 4),
                  std::domain_error);
}

TEST_CASE("map text parsing and printing") {
  CHECK(map_to_string(quad(3, 0)) == "x^2+3*x");
  CHECK(map_to_string(parse_rational_map("(x^2+1)/x")) == "(x^2+1)/(x)");
  CHECK(parse_rational_map(" x^2 + 3*x ") == quad(3, 0));
  CHECK(parse_rational_map("-x^2+1") ==
        RationalMap(QPoly({BigRat(1), BigRat(0), BigRat(-1)}), QPoly::constant(BigRat(1))));
  CHECK(parse_rational_map("x^2-1/2") ==
        RationalMap::from_polynomial(QPoly({BigRat(-1, 2), BigRat(0), BigRat(1)})));
  CHECK(parse_rational_map("3/2*x") ==
        RationalMap::from_polynomial(QPoly({BigRat(0), BigRat(3, 2)})));
  CHECK(parse_rational_map("2*(x^2+1)/(2*x)") == parse_rational_map("(x^2+1)/x"));

  // round trip through the printer
  for (const auto& text : {"x^2+3*x", "(x^2+1)/(x)", "x^3-x/2+1/3"}) {
    auto f = parse_rational_map(text);
    CHECK(parse_rational_map(map_to_string(f)) == f);
  }

  CHECK_THROWS_AS(parse_rational_map("x+y"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational_map("x^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational_map("(x+1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational_map("7"), std::invalid_argument);  // degree 0
  CHECK_THROWS_AS(parse_poly("(x^2+1)/x"), std::invalid_argument);
}

TEST_CASE("evaluation and poles") {
  auto f = parse_rational_map("(x^2+1)/x");
  CHECK(f.evaluate(BigRat(2)) == BigRat(5, 2));
  CHECK_FALSE(f.evaluate(BigRat(0)).has_value());
}
