#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sftlab;
using testsup::error_code_of;

TEST_CASE("point construction canonicalizes to a unique representation") {
    SftMatrix a = testsup::full(2);
    BiPoint p = BiPoint::make(a, {1}, {1, 1, 2}, {2}, 0);
    BiPoint q = BiPoint::make(a, {1}, {2}, {2}, 2);
    CHECK(p == q);
    CHECK(p.to_literal() == "1^inf.().2^inf@2");
    CHECK(p.left_period() == Word{1});
    CHECK(p.core().empty());
    CHECK(p.right_period() == Word{2});
    CHECK(p.core_offset() == 2);

    BiPoint r = BiPoint::periodic(a, {1, 2, 1, 2});
    CHECK(r == BiPoint::periodic(a, {1, 2}));
    CHECK(r.least_period() == 2);
    CHECK(shift(BiPoint::periodic(a, {2, 1}), 1) == BiPoint::periodic(a, {1, 2}));
    CHECK(error_code_of([&] { p.least_period(); }) == "NotPeriodic");
}

TEST_CASE("point factories validate admissibility") {
    SftMatrix g = testsup::golden();
    CHECK(error_code_of([&] { BiPoint::make(g, {}, {}, {1}, 0); }) == "EmptyPeriod");
    CHECK(error_code_of([&] { BiPoint::periodic(g, {}); }) == "EmptyPeriod");
    CHECK(error_code_of([&] { BiPoint::periodic(g, {2}); }) == "NotAdmissible");
    CHECK(error_code_of([&] { BiPoint::make(g, {1}, {2, 2}, {1}, 0); }) == "NotAdmissible");
    CHECK(error_code_of([&] { BiPoint::make(g, {1, 2}, {}, {1}, 0); }) == "");
}

TEST_CASE("coordinate access crosses both junctions consistently") {
    SftMatrix a = testsup::full(2);
    BiPoint x = BiPoint::make(a, {1, 2}, {2, 2, 1}, {1}, -1);
    std::vector<Symbol> want{1, 2, 1, 2, 2, 2, 1, 1, 1}; // x_{-5} .. x_3
    for (long j = -5; j <= 3; ++j) CHECK(x.at(j) == want[static_cast<std::size_t>(j + 5)]);
}

TEST_CASE("perturbation replaces one coordinate and validates the splice") {
    SftMatrix a = testsup::full(2);
    BiPoint x = BiPoint::periodic(a, {1});
    BiPoint y = BiPoint::perturb(a, x, 0, 2);
    CHECK(y.to_literal() == "1^inf.(2).1^inf@0");
    CHECK(y.at(0) == 2);
    CHECK(y.at(1) == 1);
    CHECK(y.at(-1) == 1);
    CHECK(BiPoint::perturb(a, y, 0, 1) == x);

    SftMatrix g = testsup::golden();
    BiPoint z = BiPoint::periodic(g, {1, 2});
    CHECK(error_code_of([&] { BiPoint::perturb(g, z, 0, 2); }) == "NotAdmissible");
    CHECK(error_code_of([&] { BiPoint::perturb(g, BiPoint::periodic(g, {1}), 0, 2); }) == "");
}

TEST_CASE("shift moves coordinates: shift(x,k)_j = x_{j+k}") {
    SftMatrix a = testsup::full(2);
    BiPoint y = BiPoint::perturb(a, BiPoint::periodic(a, {1}), 0, 2);
    BiPoint s = shift(y, 3);
    CHECK(s.core_offset() == -3);
    for (long j = -6; j <= 6; ++j) CHECK(s.at(j) == y.at(j + 3));
    CHECK(shift(shift(y, 5), -5) == y);
    CHECK(shift(y, 0) == y);
}

TEST_CASE("tail matching decides the stable and unstable relations exactly") {
    SftMatrix a = testsup::full(2);
    BiPoint x = BiPoint::periodic(a, {1});
    BiPoint y = BiPoint::perturb(a, x, 0, 2);
    auto r = right_tail_match(x, y);
    REQUIRE(r.has_value());
    CHECK(*r == 1);
    auto l = left_tail_match(x, y);
    REQUIRE(l.has_value());
    CHECK(*l == 1);
    auto pair = asymptotic_pair(x, y);
    REQUIRE(pair.has_value());
    CHECK(pair->first == 1);
    CHECK(pair->second == 1);

    CHECK(right_tail_match(x, x) == 0);
    CHECK(left_tail_match(x, x) == 0);

    BiPoint z = BiPoint::periodic(a, {1, 2});
    CHECK_FALSE(right_tail_match(z, x).has_value());
    CHECK_FALSE(left_tail_match(z, x).has_value());
    CHECK_FALSE(asymptotic_pair(z, x).has_value());

    // Stable only on one side: distinct pasts, identical futures.
    BiPoint w = BiPoint::make(a, {1, 2}, {}, {1}, 0);
    CHECK(right_tail_match(w, x).has_value());
    CHECK_FALSE(left_tail_match(w, x).has_value());
}

TEST_CASE("metric: exact powers of lambda0") {
    SftMatrix a = testsup::full(2);
    SftSpace space{a, 1, Rat(1, 2)};
    BiPoint x = BiPoint::periodic(a, {1});
    BiPoint y = BiPoint::perturb(a, x, 0, 2);
    BiPoint z = BiPoint::perturb(a, x, 2, 2);
    CHECK(metric(x, x, space) == 0);
    CHECK(metric(x, y, space) == 1);
    CHECK(metric(x, z, space) == Rat(1, 4));
    CHECK(metric(z, x, space) == Rat(1, 4));
    SftSpace third{a, 1, Rat(1, 3)};
    CHECK(metric(x, z, third) == Rat(1, 9));
    CHECK(error_code_of([&] { metric(x, y, SftSpace{a, 1, Rat(3, 2)}); }) == "BadLambda");
    CHECK(error_code_of([&] { metric(x, y, SftSpace{a, 1, Rat(1)}); }) == "BadLambda");
}

TEST_CASE("bracket glues x's past to y's future") {
    SftMatrix a = testsup::full(2);
    BiPoint x = BiPoint::periodic(a, {1, 2});
    BiPoint y = BiPoint::periodic(a, {1});
    BiPoint z = bracket(x, y);
    for (long j = -6; j <= 0; ++j) CHECK(z.at(j) == x.at(j));
    for (long j = 1; j <= 6; ++j) CHECK(z.at(j) == 1);
    BiPoint zz = bracket(y, x);
    for (long j = -6; j <= 0; ++j) CHECK(zz.at(j) == 1);
    for (long j = 1; j <= 6; ++j) CHECK(zz.at(j) == x.at(j));
    CHECK(bracket(x, x) == x);
    CHECK(error_code_of([&] { bracket(x, shift(x, 1)); }) == "BracketUndefined");
}

TEST_CASE("periodic counts and orbit enumeration agree") {
    SftMatrix g = testsup::golden();
    // Lucas numbers tr(A^n) for the golden mean shift.
    std::vector<long> lucas{1, 3, 4, 7, 11, 18, 29, 47};
    for (unsigned n = 1; n <= 8; ++n) CHECK(periodic_count(g, n) == lucas[n - 1]);
    CHECK(error_code_of([&] { periodic_count(g, 0); }) == "BadOrder");

    auto orbits = periodic_orbits(g, 5);
    REQUIRE(orbits.size() == 6);
    CHECK(orbits[0] == Orbit{BiPoint::periodic(g, {1}), 1});
    CHECK(orbits[1] == Orbit{BiPoint::periodic(g, {1, 2}), 2});
    CHECK(orbits[2] == Orbit{BiPoint::periodic(g, {1, 1, 2}), 3});
    CHECK(orbits[3] == Orbit{BiPoint::periodic(g, {1, 1, 1, 2}), 4});
    CHECK(orbits[4] == Orbit{BiPoint::periodic(g, {1, 1, 1, 1, 2}), 5});
    CHECK(orbits[5] == Orbit{BiPoint::periodic(g, {1, 1, 2, 1, 2}), 5});

    // sum over d | n of d * (#orbits of least period d) recovers |Per_n|.
    for (unsigned n = 1; n <= 8; ++n) {
        auto all = periodic_orbits(g, n);
        Int total = 0;
        for (const Orbit& o : all)
            if (n % o.length == 0) total += o.length;
        CHECK(total == periodic_count(g, n));
    }

    CHECK(closed_words(g, 3).size() == 4);
    CHECK(error_code_of([&] { closed_words(testsup::big_1954(), 2); }) == "NotZeroOne");
}

TEST_CASE("brute-force cycle census matches the trace formula") {
    SftMatrix g = testsup::golden();
    for (unsigned n = 1; n <= 9; ++n)
        CHECK(testsup::brute_force_periodic_count(g, n) == periodic_count(g, n));
    SftMatrix f3 = testsup::full(3);
    for (unsigned n = 1; n <= 6; ++n)
        CHECK(testsup::brute_force_periodic_count(f3, n) == periodic_count(f3, n));
}
