#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "skein/serialize.hpp"
#include "skein/skein.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace skein;
using skein::testing::oracle_bracket;
using skein::testing::read_fixture;

namespace {

LaurentPolynomial A(int k) { return LaurentPolynomial::power_of_A(k); }

Multicurve tc(int p, int q, int mult = 1) { return Multicurve::torus_class(p, q, mult); }

}  // namespace

TEST_CASE("rational text") {
  CHECK(to_text(Rational(5)) == "5");
  CHECK(to_text(Rational(-1, 4)) == "-1/4");
  CHECK(to_text(Rational(2, 6)) == "1/3");

  CHECK(parse_rational("-1/4") == Rational(-1, 4));
  CHECK(parse_rational(" 3/6 ") == Rational(1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("laurent text is descending with suppressed units") {
  CHECK(to_text(LaurentPolynomial::from_int(0)) == "0");
  CHECK(to_text(LaurentPolynomial::from_int(-7)) == "-7");
  CHECK(to_text(LaurentPolynomial::loop_value()) == "-A^2 - A^-2");
  CHECK(to_text(A(6) + A(2) + A(-2) + A(-6)) == "A^6 + A^2 + A^-2 + A^-6");
  CHECK(to_text(LaurentPolynomial::monomial(3, 2) + LaurentPolynomial::monomial(-1, 1) +
                LaurentPolynomial::from_int(7)) == "3*A^2 - A + 7");
  CHECK(to_text(LaurentPolynomial::monomial(-2, -1)) == "-2*A^-1");
}

TEST_CASE("laurent parsing round-trips") {
  for (const LaurentPolynomial& p :
       {LaurentPolynomial::from_int(0), LaurentPolynomial::loop_value(),
        A(6) + A(2) + A(-2) + A(-6), LaurentPolynomial::monomial(-12, 3) + A(1),
        LaurentPolynomial::loop_value().pow(3)}) {
    CHECK(parse_laurent(to_text(p)) == p);
  }
  Diagram trefoil = parse_diagram(read_fixture("trefoil.dgm"));
  SkeinElement b = oracle_bracket(trefoil);
  const LaurentPolynomial* raw = b.coefficient(Multicurve::empty(SurfaceKind::disk));
  REQUIRE(raw != nullptr);
  CHECK(parse_laurent(to_text(*raw)) == *raw);

  CHECK(parse_laurent("A") == A(1));
  CHECK(parse_laurent("-A^-1") == LaurentPolynomial::monomial(-1, -1));
  CHECK_THROWS_AS(parse_laurent(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("A^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("2*"), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("B^2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("1/2*A"), std::invalid_argument);
}

TEST_CASE("series text keeps the remainder order") {
  CHECK(to_text(expand_laurent(LaurentPolynomial::loop_value(), 4)) ==
        "-2 - 1/4*h^2 - 1/192*h^4 + O(h^5)");
  CHECK(to_text(TruncatedSeries(8)) == "0 + O(h^9)");
  CHECK(to_text(TruncatedSeries::monomial(Rational(1), 1, 3)) == "h + O(h^4)");
  CHECK(to_text(TruncatedSeries::monomial(Rational(-1), 2, 2)) == "-h^2 + O(h^3)");

  for (const TruncatedSeries& s :
       {expand_laurent(A(1), 6), expand_laurent(A(6) + A(2) + A(-2) + A(-6), 8),
        TruncatedSeries(2), expand_laurent(LaurentPolynomial::loop_value(), 0)}) {
    TruncatedSeries back = parse_series(to_text(s));
    CHECK(back.order() == s.order());
    CHECK(back == s);
  }

  CHECK(parse_series("h - h^3 + O(h^4)") ==
        TruncatedSeries::monomial(Rational(1), 1, 3) +
            TruncatedSeries::monomial(Rational(-1), 3, 3));
  CHECK_THROWS_AS(parse_series("1 + h"), std::invalid_argument);
  CHECK_THROWS_AS(parse_series("h^3 + O(h^2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_series("O(h^x)"), std::invalid_argument);
}

TEST_CASE("multicurve text") {
  CHECK(to_text(Multicurve::empty(SurfaceKind::torus)) == "empty");
  CHECK(to_text(Multicurve::core(1)) == "z");
  CHECK(to_text(Multicurve::core(3)) == "z^3");
  CHECK(to_text(tc(1, 0)) == "(1,0)");
  CHECK(to_text(tc(1, -2)) == "(1,-2)");
  CHECK(to_text(tc(2, 1, 3)) == "(2,1)^3");

  CHECK(parse_multicurve("empty", SurfaceKind::torus) == Multicurve::empty(SurfaceKind::torus));
  CHECK(parse_multicurve("z^2") == Multicurve::core(2));
  CHECK(parse_multicurve("(2,1)^3") == tc(2, 1, 3));
  CHECK(parse_multicurve(" ( -1 , 2 ) ") == tc(-1, 2));  // canonicalized to (1,-2)
  for (const Multicurve& m : {Multicurve::empty(SurfaceKind::disk), Multicurve::core(5), tc(0, 1),
                              tc(3, -2, 2), tc(1, 1, 4)}) {
    CHECK(parse_multicurve(to_text(m)) == m);
  }

  CHECK_THROWS_AS(parse_multicurve("(2,4)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_multicurve("(0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_multicurve("(1,2)^0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_multicurve("z^0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_multicurve("(1;2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_multicurve("curve"), std::invalid_argument);
}

TEST_CASE("element text lists one term per line") {
  CHECK(to_text(SkeinElement::zero(SurfaceKind::torus)) == "0");

  SkeinElement hopf = bracket_resolve(parse_diagram(read_fixture("hopf.dgm")));
  CHECK(to_text(hopf) == "A^6 + A^2 + A^-2 + A^-6 * empty");

  SkeinElement two = SkeinElement::basis(tc(1, 1), A(1)) +
                     SkeinElement::basis(tc(1, -1), A(-1));
  CHECK(to_text(two) == "A^-1 * (1,-1)\nA * (1,1)");

  CharacterElement c = CharacterElement::zero(SurfaceKind::torus);
  c.add_term(tc(1, 1), Rational(-1, 2));
  c.add_term(tc(1, -1), Rational(1, 2));
  CHECK(to_text(c) == "1/2 * (1,-1)\n-1/2 * (1,1)");

  SeriesElement s = expand_element(SkeinElement::basis(Multicurve::core(2),
                                                       LaurentPolynomial::from_int(1)), 1);
  CHECK(to_text(s) == "1 + O(h^2) * z^2");
}
