#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sftlab;
using testsup::error_code_of;

namespace {

struct Fixture {
    SftMatrix a = testsup::full(2);
    BiPoint x = BiPoint::periodic(a, {1});
    BiPoint y = BiPoint::perturb(a, x, 0, 2);
    BiPoint z = BiPoint::perturb(a, x, 2, 2);
};

} // namespace

TEST_CASE("asymptotic-groupoid arrows carry exact tail depths") {
    Fixture f;
    AElement u = AElement::unit(f.x);
    CHECK(u.n == 0);
    CHECK(u.stable_depth == 0);
    CHECK(u.unstable_depth == 0);

    AElement g = AElement::make(f.x, 0, f.y);
    CHECK(g.stable_depth == 1);
    CHECK(g.unstable_depth == 1);

    AElement h = AElement::make(f.y, 3, f.x);
    CHECK(h.stable_depth == 0);
    CHECK(h.unstable_depth == 4);

    CHECK(error_code_of([&] {
              AElement::make(f.x, 0, BiPoint::periodic(f.a, {1, 2}));
          }) == "NotAsymptotic");
}

TEST_CASE("asymptotic-groupoid inverse and composition laws") {
    Fixture f;
    AElement g = AElement::make(f.x, 2, f.y);
    AElement gi = a_inverse(g);
    CHECK(gi.x == f.y);
    CHECK(gi.n == -2);
    CHECK(gi.z == f.x);

    AElement gg = a_compose(g, gi);
    CHECK(gg.x == f.x);
    CHECK(gg.n == 0);
    CHECK(gg.z == f.x);
    CHECK(gg.stable_depth == 0);
    CHECK(gg.unstable_depth == 0);

    AElement h = AElement::make(f.y, -1, f.z);
    AElement c = a_compose(g, h);
    CHECK(c.x == f.x);
    CHECK(c.n == 1);
    CHECK(c.z == f.z);
    CHECK(c.stable_depth == 3);
    CHECK(c.unstable_depth == 0);

    CHECK(error_code_of([&] { a_compose(g, g); }) == "NotComposable");
}

TEST_CASE("two-exponent arrows decouple the stable and unstable shifts") {
    Fixture f;
    SUElement u = SUElement::unit(f.x);
    CHECK(u.p == 0);
    CHECK(u.q == 0);

    SUElement s = SUElement::make(f.x, 5, -3, f.y);
    CHECK(s.stable_depth == 1);
    CHECK(s.unstable_depth == 1);
    CHECK_FALSE(diagonal_part(s).has_value());

    SUElement d = SUElement::make(f.x, 2, 2, f.y);
    auto diag = diagonal_part(d);
    REQUIRE(diag.has_value());
    CHECK(diag->n == 2);
    CHECK(diag->x == f.x);
    CHECK(diag->z == f.y);

    // On a period-2 orbit only even exponents preserve each tail relation.
    BiPoint w = BiPoint::periodic(f.a, {1, 2});
    SUElement t = SUElement::make(w, 2, 4, w);
    CHECK(t.stable_depth == 0);
    CHECK(t.unstable_depth == 0);
    SUElement ti = su_inverse(t);
    CHECK(ti.p == -2);
    CHECK(ti.q == -4);
    SUElement tt = su_compose(t, t);
    CHECK(tt.p == 4);
    CHECK(tt.q == 8);

    CHECK(error_code_of([&] { SUElement::make(w, 1, 2, w); }) == "NotStable");
    CHECK(error_code_of([&] { SUElement::make(w, 2, 1, w); }) == "NotUnstable");
    CHECK(error_code_of([&] { su_compose(SUElement::make(f.x, 0, 0, f.y), t); }) ==
          "NotComposable");
}

TEST_CASE("shortest connectors between symbols") {
    SftMatrix g = testsup::golden();
    CHECK(shortest_connector(g, 1, 1).empty());
    CHECK(shortest_connector(g, 1, 2).empty());
    CHECK(shortest_connector(g, 2, 2) == Word{1});
    CHECK(g.word_admissible({2, 1, 2})); // i ++ w ++ j is admissible

    SftMatrix reducible = SftMatrix::validate(testsup::mat2(1, 0, 1, 1), MatrixMode::NonNegative);
    CHECK(error_code_of([&] { shortest_connector(reducible, 1, 2); }) == "NotIrreducible");
}

TEST_CASE("essential-freeness certificates") {
    SftMatrix a = testsup::full(2);
    auto w = essential_freeness_witness(a, 3, {});
    REQUIRE(w.has_value());
    CHECK(*w == BiPoint::periodic(a, {1, 2}));
    CHECK_FALSE(asymptotic_pair(shift(*w, 3), *w).has_value());

    auto wn = essential_freeness_witness(a, -3, {});
    REQUIRE(wn.has_value());
    CHECK_FALSE(asymptotic_pair(shift(*wn, -3), *wn).has_value());

    SftMatrix g = testsup::golden();
    auto gw = essential_freeness_witness(g, 2, {2});
    REQUIRE(gw.has_value());
    CHECK(gw->at(0) == 2);
    CHECK_FALSE(asymptotic_pair(shift(*gw, 2), *gw).has_value());

    // All cycle lengths up to the search depth divide 6: no certificate,
    // which decides nothing.
    CHECK_FALSE(essential_freeness_witness(a, 6, {}, 3).has_value());
    CHECK_FALSE(essential_freeness_evidence(a, 6, {}, 3));
    CHECK(essential_freeness_evidence(a, 3, {}));

    CHECK(error_code_of([&] { essential_freeness_witness(a, 0, {}); }) == "ZeroExponent");
    CHECK(error_code_of([&] { essential_freeness_witness(g, 2, {2, 2}); }) == "NotAdmissible");
}
