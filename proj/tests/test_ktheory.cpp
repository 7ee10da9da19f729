#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace sftlab;
using testsup::error_code_of;

TEST_CASE("Bowen-Franks groups of the standard examples") {
    CHECK(bowen_franks(testsup::full(2)).trivial());
    CHECK(bowen_franks(testsup::full(3)) == FinGenAbGroup{0, {Int(2)}});
    CHECK(bowen_franks(testsup::full(4)) == FinGenAbGroup{0, {Int(3)}});
    CHECK(bowen_franks(testsup::full(5)) == FinGenAbGroup{0, {Int(4)}});
    CHECK(bowen_franks(testsup::golden()).trivial());

    SftMatrix big = testsup::big_1954();
    FinGenAbGroup bf = bowen_franks(big);
    CHECK(bf == FinGenAbGroup{0, {Int(20)}});
    CHECK(bf.str() == "Z/20");

    // The group only depends on the flow class; transposing preserves it.
    SftMatrix bigt = SftMatrix::validate(transpose(big.mat()), MatrixMode::NonNegative);
    CHECK(bowen_franks(bigt) == bf);
}

TEST_CASE("stagewise K_0 approximations stabilize on small examples") {
    StagewiseGroup f2 = ruelle_k0_stagewise(testsup::full(2), 6);
    REQUIRE(f2.stages.size() == 5);
    for (std::size_t i = 0; i < f2.stages.size(); ++i) CHECK(f2.stages[i].first == i + 2);
    CHECK(f2.stabilized);
    CHECK(f2.stages.back().second == FinGenAbGroup{1, {}});

    StagewiseGroup g = ruelle_k0_stagewise(testsup::golden(), 6);
    CHECK(g.stabilized);
    CHECK(g.stages.back().second == FinGenAbGroup{2, {}});

    StagewiseGroup b = ruelle_k0_stagewise(testsup::big_1954(), 6);
    CHECK(b.stabilized);
    CHECK(b.stages.back().second == FinGenAbGroup{2, {}});

    CHECK(error_code_of([] { ruelle_k0_stagewise(testsup::full(2), 1); }) == "BadStage");
}

TEST_CASE("the rational picture of the full-shift inductive limit") {
    HAStageElement e{testsup::mat2(1, 2, 3, 4), 1};
    SftMatrix a = testsup::full(2);
    CHECK(xi_full_shift(e, 2) == 10);
    CHECK(xi_full_shift(ha_iota(e, a), 2) == 10);
    CHECK(xi_full_shift(ha_alpha(e, a), 2) == 10);
    CHECK(ha_iota(e, a).stage == 2);
    CHECK(ha_alpha(e, a).stage == 2);

    HAStageElement id1{IntMat::identity(2), 1};
    CHECK(xi_full_shift(id1, 2) == 2);
    HAStageElement id3{IntMat::identity(2), 3};
    CHECK(xi_full_shift(id3, 2) == Rat(1, 8));

    // Compatibility is an identity of the maps, not of these samples alone.
    std::mt19937 gen(11);
    for (unsigned n : {2u, 3u}) {
        SftMatrix fs = testsup::full(n);
        for (int trial = 0; trial < 50; ++trial) {
            IntMat t(n, n);
            for (Int& v : t.a) v = static_cast<long>(gen() % 11) - 5;
            unsigned stage = 1 + static_cast<unsigned>(gen() % 4);
            HAStageElement x{t, stage};
            Rat base = xi_full_shift(x, n);
            CHECK(xi_full_shift(ha_iota(x, fs), n) == base);
            CHECK(xi_full_shift(ha_alpha(x, fs), n) == base);
        }
    }

    CHECK(error_code_of([&] { ha_iota(HAStageElement{IntMat(3, 3), 1}, a); }) ==
          "ShapeMismatch");
    CHECK(error_code_of([&] { xi_full_shift(HAStageElement{IntMat(3, 3), 1}, 2); }) ==
          "NotFullShift");
    CHECK(error_code_of([&] { xi_full_shift(e, 1); }) == "NotFullShift");
}

TEST_CASE("localized subgroups of Q: construction and comparison") {
    LocalizedSubgroup z12 = LocalizedSubgroup::from_base(12);
    CHECK(z12.primes == std::vector<Int>{Int(2), Int(3)});
    CHECK(z12.str() == "Z[1/6]");
    CHECK(LocalizedSubgroup::from_base(1).primes.empty());
    CHECK(LocalizedSubgroup::from_base(1).str() == "Z");

    CHECK(z12.contains(Rat(5, 12)));
    CHECK(z12.contains(Rat(7, 18)));
    CHECK_FALSE(z12.contains(Rat(1, 5)));
    CHECK(LocalizedSubgroup::from_base(1).contains(Rat(3)));
    CHECK_FALSE(LocalizedSubgroup::from_base(1).contains(Rat(1, 2)));

    auto base = [](unsigned n) { return LocalizedSubgroup::from_base(Int(n)); };
    CHECK_FALSE(localized_equal(base(2), base(3)));
    CHECK(localized_equal(base(2), base(4)));
    CHECK(localized_equal(base(6), base(12)));
    CHECK_FALSE(localized_equal(base(2), base(6)));
    CHECK(localized_equal(base(12), base(18))); // both invert exactly {2, 3}

    CHECK(error_code_of([] { LocalizedSubgroup::from_base(0); }) == "BadBase");
}

TEST_CASE("K-groups and trace values of full-shift Ruelle algebras") {
    for (unsigned n = 2; n <= 12; ++n) {
        auto [k0, k1] = ruelle_k_groups_full_shift(n);
        CHECK(localized_equal(k0, k1));
        CHECK(localized_equal(k0, LocalizedSubgroup::from_base(Int(n))));
        CHECK(localized_equal(trace_value_group_full_shift(n), k0));
    }
    CHECK(trace_value_group_full_shift(6).str() == "Z[1/6]");
    CHECK(error_code_of([] { ruelle_k_groups_full_shift(1); }) == "NotFullShift");
    CHECK(error_code_of([] { trace_value_group_full_shift(0); }) == "NotFullShift");
}

TEST_CASE("Perron data: exact integer branch and numeric branch") {
    PerronData p = perron_data(testsup::mat2(1, 2, 1, 0));
    CHECK(p.integral);
    CHECK(p.lambda_integer == 2);
    CHECK(p.lambda == 2.0);
    CHECK(p.right_exact == std::vector<Rat>{Rat(2), Rat(1)});
    CHECK(p.left_exact == std::vector<Rat>{Rat(1), Rat(1)});

    PerronData f = perron_data(full_shift_matrix(3));
    CHECK(f.integral);
    CHECK(f.lambda_integer == 3);
    CHECK(f.right_exact == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});

    PerronData g = perron_data(testsup::golden().mat());
    CHECK_FALSE(g.integral);
    CHECK(std::fabs(g.lambda - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-9);
    // Residual of the eigen equations, componentwise.
    for (std::size_t i = 0; i < 2; ++i) {
        double sr = 0, sl = 0;
        for (std::size_t j = 0; j < 2; ++j) {
            sr += to_double(Rat(testsup::golden().mat().at(i, j))) * g.right[j];
            sl += to_double(Rat(testsup::golden().mat().at(j, i))) * g.left[j];
        }
        CHECK(std::fabs(sr - g.lambda * g.right[i]) < 1e-8);
        CHECK(std::fabs(sl - g.lambda * g.left[i]) < 1e-8);
    }

    PerronData b = perron_data(testsup::big_1954().mat());
    CHECK_FALSE(b.integral);
    CHECK(std::fabs(b.lambda - (10.0 + std::sqrt(101.0))) < 1e-8);

    CHECK(error_code_of([] { perron_data(IntMat(2, 3)); }) == "NonSquare");
}
