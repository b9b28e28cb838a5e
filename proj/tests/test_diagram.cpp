#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skein/diagram.hpp"
#include "skein/rings.hpp"
#include "skein/skein.hpp"
#include "support/fixtures.hpp"
#include "support/moves.hpp"
#include "support/oracle.hpp"

using namespace skein;
using skein::testing::braid_closure;
using skein::testing::insert_poke;
using skein::testing::load_fixture;

namespace {

LaurentPolynomial A(int k) { return LaurentPolynomial::power_of_A(k); }

}  // namespace

TEST_CASE("parse fixtures") {
  Diagram hopf = load_fixture("hopf.dgm");
  CHECK(hopf.surface == SurfaceKind::disk);
  CHECK(hopf.num_crossings == 2);
  CHECK(hopf.arcs.size() == 4);
  CHECK(underlying_loops(hopf).size() == 2);

  Diagram tref = load_fixture("trefoil.dgm");
  CHECK(tref.num_crossings == 3);
  CHECK(tref.arcs.size() == 6);
  CHECK(underlying_loops(tref).size() == 1);

  Diagram unknot = load_fixture("unknot0.dgm");
  CHECK(unknot.num_crossings == 0);
  REQUIRE(unknot.arcs.size() == 1);
  CHECK(unknot.arcs[0].is_free_loop());

  Diagram torus1 = load_fixture("one_cross_torus.dgm");
  CHECK(torus1.surface == SurfaceKind::torus);
  auto loops = underlying_loops(torus1);
  REQUIRE(loops.size() == 2);

  Diagram w2 = load_fixture("annulus_w2.dgm");
  auto wloops = underlying_loops(w2);
  REQUIRE(wloops.size() == 1);
  CHECK(std::abs(wloops[0][0]) == 2);
}

TEST_CASE("parse statement forms") {
  Diagram d = parse_diagram("surface torus\ncurve (1,2) x3; curve (0,-1) x1\nloop: counters (0,0)");
  CHECK(d.num_crossings == 0);
  CHECK(d.arcs.size() == 5);

  Diagram ann = parse_diagram("surface annulus\ncore x2");
  CHECK(ann.arcs.size() == 2);
  CHECK(ann.arcs[0].counters == std::vector<int>{1});

  // aliasing: same diagram as 'crossing c: ports a, a, b, b'
  Diagram kink = parse_diagram("surface disk\nX[1,2,3,4]\narcs 1-2 joined, 3-4 joined");
  CHECK(kink.num_crossings == 1);
  CHECK(kink.arcs.size() == 2);
  CHECK(underlying_loops(kink).size() == 1);

  // comments, blank lines, ';' separators
  Diagram c = parse_diagram("# nothing\nsurface disk\n\nloop; loop # two circles\n");
  CHECK(c.arcs.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_diagram(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("surface disk\nnonsense here") == 2);
  CHECK(line_of("loop") == 1);                                    // surface must come first
  CHECK(line_of("surface disk\nsurface torus") == 2);             // duplicate
  CHECK(line_of("surface mobius") == 1);                          // unknown surface
  CHECK(line_of("surface torus\ncurve (2,4) x1") == 2);           // not primitive
  CHECK(line_of("surface torus\ncurve (0,0) x1") == 2);           // zero class
  CHECK(line_of("surface disk\ncurve (1,0) x1") == 2);            // wrong surface
  CHECK(line_of("surface torus\ncore x1") == 2);                  // wrong surface
  CHECK(line_of("surface disk\nX[1,2,3]") == 2);                  // three ports
  CHECK(line_of("surface disk\nX[1,1,1,1]") == 2);                // label used 4 times
  CHECK(line_of("surface disk\nX[1,2,3,4]") > 0);                 // labels used once
  CHECK(line_of("surface torus\nX[1,2,3,4]") == 2);               // PD only on the disk
  CHECK(line_of("surface torus\nloop: counters (1)") == 2);       // arity mismatch
  CHECK(line_of("surface disk\ncrossing c: ports a,a,b,b\ncrossing c: ports x,x,y,y") == 3);
  CHECK(line_of("surface disk\ncrossing c: ports a,a,b,b\narc a: counters ()\narc a: counters ()")
        == 4);
  CHECK(line_of("surface disk\narc q: counters ()") > 0);         // arc not attached
}

TEST_CASE("validate rejects malformed diagrams") {
  Diagram d;
  d.surface = SurfaceKind::disk;
  d.num_crossings = 1;
  Arc a;
  a.tail = ArcEnd{0, 0};
  a.head = ArcEnd{0, 1};
  d.arcs = {a, a};  // ports 0 and 1 doubly used, 2 and 3 empty
  CHECK_THROWS_AS(validate_diagram(d), std::invalid_argument);

  Diagram e;
  e.surface = SurfaceKind::annulus;
  e.num_crossings = 0;
  Arc loop;
  loop.counters = {1, 0};  // wrong arity
  e.arcs = {loop};
  CHECK_THROWS_AS(validate_diagram(e), std::invalid_argument);
}

TEST_CASE("single crossing on the torus resolves both ways") {
  Diagram d = load_fixture("one_cross_torus.dgm");

  StateCurves a_state = trace_state(d, {0});
  auto [ta, ma] = classify_state(d.surface, a_state);
  CHECK(ta == 0);
  CHECK(ma == Multicurve::torus_class(1, 1, 1));

  StateCurves b_state = trace_state(d, {1});
  auto [tb, mb] = classify_state(d.surface, b_state);
  CHECK(tb == 0);
  CHECK(mb == Multicurve::torus_class(1, -1, 1));

  SkeinElement br = bracket_resolve(d);
  SkeinElement expected = SkeinElement::zero(SurfaceKind::torus);
  expected.add_term(Multicurve::torus_class(1, 1, 1), A(1));
  expected.add_term(Multicurve::torus_class(1, -1, 1), A(-1));
  CHECK(br == expected);
}

TEST_CASE("classification rules") {
  StateCurves trivial2;
  trivial2.components = {{{0, 0}}, {{0, 0}}};
  auto [t, m] = classify_state(SurfaceKind::torus, trivial2);
  CHECK(t == 2);
  CHECK(m.is_empty());

  StateCurves mixed;
  mixed.components = {{{-1, -2}}, {{0, 0}}, {{1, 2}}};
  auto [t2, m2] = classify_state(SurfaceKind::torus, mixed);
  CHECK(t2 == 1);
  CHECK(m2 == Multicurve::torus_class(1, 2, 2));  // (-1,-2) canonicalizes to (1,2)

  StateCurves imprim;
  imprim.components = {{{2, 4}}};
  CHECK_THROWS_AS(classify_state(SurfaceKind::torus, imprim), TopologyError);

  StateCurves skew;
  skew.components = {{{1, 0}}, {{0, 1}}};
  CHECK_THROWS_AS(classify_state(SurfaceKind::torus, skew), TopologyError);

  StateCurves wind2;
  wind2.components = {{{2}}};
  CHECK_THROWS_AS(classify_state(SurfaceKind::annulus, wind2), TopologyError);

  StateCurves disk_ess;
  disk_ess.components = {{{}}};
  auto [t3, m3] = classify_state(SurfaceKind::disk, disk_ess);
  CHECK(t3 == 1);
  CHECK(m3.is_empty());
}

TEST_CASE("mirror is an involution and inverts A") {
  for (const char* name : {"hopf.dgm", "trefoil.dgm", "kink_pos.dgm", "one_cross_torus.dgm"}) {
    CAPTURE(name);
    Diagram d = load_fixture(name);
    Diagram m = mirror(d);
    CHECK(mirror(m) == d);
    SkeinElement bd = bracket_resolve(d);
    SkeinElement bm = bracket_resolve(m);
    REQUIRE(bd.terms.size() == bm.terms.size());
    for (const auto& [curve, coeff] : bd.terms) {
      const LaurentPolynomial* mc = bm.coefficient(curve);
      REQUIRE(mc != nullptr);
      CHECK(*mc == coeff.invert_variable());
    }
  }
}

TEST_CASE("switching a crossing changes only that crossing") {
  Diagram d = load_fixture("hopf.dgm");
  Diagram s = switch_crossing(d, 0);
  CHECK(s.num_crossings == d.num_crossings);
  CHECK(switch_crossing(s, 0) == d);
  // switching both crossings of the Hopf link gives its mirror
  CHECK(switch_crossing(s, 1) == mirror(d));
}

TEST_CASE("bracket values of small links") {
  // raw bracket: every circle contributes -A^2 - A^-2
  LaurentPolynomial delta = LaurentPolynomial::loop_value();

  SkeinElement unknot = bracket_resolve(load_fixture("unknot0.dgm"));
  CHECK(unknot == SkeinElement::basis(Multicurve::empty(SurfaceKind::disk), delta));

  SkeinElement kink = bracket_resolve(load_fixture("kink_pos.dgm"));
  CHECK(kink == SkeinElement::basis(Multicurve::empty(SurfaceKind::disk), -A(3) * delta));

  SkeinElement hopf = bracket_resolve(load_fixture("hopf.dgm"));
  CHECK(hopf == SkeinElement::basis(Multicurve::empty(SurfaceKind::disk),
                                    A(6) + A(2) + A(-2) + A(-6)));

  SkeinElement w2 = bracket_resolve(load_fixture("annulus_w2.dgm"));
  SkeinElement expected = SkeinElement::zero(SurfaceKind::annulus);
  expected.add_term(Multicurve::core(2), A(1));
  expected.add_term(Multicurve::empty(SurfaceKind::annulus), A(-1) * delta);
  CHECK(w2 == expected);
}

TEST_CASE("resolver agrees with the surgery oracle") {
  std::vector<Diagram> cases;
  for (const char* name :
       {"hopf.dgm", "trefoil.dgm", "unknot0.dgm", "kink_pos.dgm", "one_cross_torus.dgm",
        "annulus_w2.dgm"})
    cases.push_back(load_fixture(name));

  cases.push_back(braid_closure(SurfaceKind::disk, 2, {1, 1, 1}));
  cases.push_back(braid_closure(SurfaceKind::disk, 3, {1, -2, 1, -2}));
  cases.push_back(braid_closure(SurfaceKind::annulus, 2, {1}));
  cases.push_back(braid_closure(SurfaceKind::annulus, 3, {1, 2}));
  cases.push_back(braid_closure(SurfaceKind::annulus, 3, {1, 2, 1, 2}));
  cases.push_back(braid_closure(SurfaceKind::disk, 4, {1, 2, 3, 1, 2, 3}));
  cases.push_back(insert_poke(load_fixture("one_cross_torus.dgm"), 0, 1));
  cases.push_back(insert_poke(load_fixture("hopf.dgm"), 0, 2));

  for (size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    CHECK(bracket_resolve(cases[i]) == skein::testing::oracle_bracket(cases[i]));
  }
}

TEST_CASE("state sums refuse oversized diagrams") {
  Diagram big = braid_closure(SurfaceKind::disk, 2, std::vector<int>(25, 1));
  CHECK_THROWS_AS(bracket_resolve(big), std::runtime_error);
  BracketOptions tight;
  tight.max_crossings = 10;
  Diagram mid = braid_closure(SurfaceKind::disk, 2, std::vector<int>(12, 1));
  CHECK_THROWS_AS(bracket_resolve(mid, tight), std::runtime_error);
  CHECK(bracket_resolve(mid) == skein::testing::oracle_bracket(mid));
}

TEST_CASE("moves preserve the bracket") {
  // Reidemeister II and III inside braids
  Diagram base = braid_closure(SurfaceKind::annulus, 3, {1, 2, -1});
  Diagram r2 = braid_closure(SurfaceKind::annulus, 3, {1, 2, 2, -2, -1});
  CHECK(bracket_resolve(base) == bracket_resolve(r2));

  Diagram r3a = braid_closure(SurfaceKind::disk, 3, {1, 2, 1});
  Diagram r3b = braid_closure(SurfaceKind::disk, 3, {2, 1, 2});
  CHECK(bracket_resolve(r3a) == bracket_resolve(r3b));

  // pokes on every arc pair of a small torus diagram
  Diagram t = load_fixture("one_cross_torus.dgm");
  SkeinElement bt = bracket_resolve(t);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      if (a == b) continue;
      CAPTURE(a);
      CAPTURE(b);
      CHECK(bracket_resolve(insert_poke(t, a, b)) == bt);
    }

  // a poke on top of a poke
  Diagram once = insert_poke(t, 0, 1);
  Diagram twice = insert_poke(once, 2, 3);
  CHECK(bracket_resolve(twice) == bt);
}
