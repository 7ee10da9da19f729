#pragma once

#include "ck.hpp"
#include "cocycle.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "word.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sftlab {

struct SuiteCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<SuiteCheck> checks;
    bool pass = true;

    void add(std::string name, bool ok, std::string detail = "") {
        pass = pass && ok;
        checks.push_back(SuiteCheck{std::move(name), ok, std::move(detail)});
    }
};

namespace detail {

/// Deterministic admissible word of the requested length starting from a
/// vertex with out-edges (restarts on dead ends; every accepted matrix has
/// none, but the weaker mode may).
inline std::optional<Word> random_admissible_word(const SftMatrix& a, std::size_t len,
                                                  std::mt19937& gen,
                                                  std::optional<Symbol> first = std::nullopt) {
    unsigned n = static_cast<unsigned>(a.size());
    for (int attempt = 0; attempt < 64; ++attempt) {
        Word w;
        Symbol cur = first ? *first : static_cast<Symbol>(gen() % n + 1);
        w.push_back(cur);
        bool dead = false;
        while (w.size() < len) {
            std::vector<Symbol> nexts;
            for (Symbol j = 1; j <= static_cast<Symbol>(n); ++j)
                if (a.edge(cur, j)) nexts.push_back(j);
            if (nexts.empty()) {
                dead = true;
                break;
            }
            cur = nexts[gen() % nexts.size()];
            w.push_back(cur);
        }
        if (!dead) return w;
    }
    return std::nullopt;
}

/// Random corner-fixed monomial: both junction edges admissible, both legs
/// nonzero as pairs.
inline std::optional<TensorElement> random_corner_monomial(const SftMatrix& a,
                                                           const SftMatrix& at, std::mt19937& gen,
                                                           std::size_t lu_len, std::size_t lv_len,
                                                           std::size_t ru_len, std::size_t rv_len) {
    unsigned n = static_cast<unsigned>(a.size());
    for (int attempt = 0; attempt < 128; ++attempt) {
        Symbol i = static_cast<Symbol>(gen() % n + 1), i2 = static_cast<Symbol>(gen() % n + 1);
        std::vector<Symbol> js, js2;
        for (Symbol j = 1; j <= static_cast<Symbol>(n); ++j) {
            if (a.edge(i, j)) js.push_back(j);
            if (a.edge(i2, j)) js2.push_back(j);
        }
        if (js.empty() || js2.empty()) continue;
        Symbol j = js[gen() % js.size()], j2 = js2[gen() % js2.size()];
        auto lu = random_admissible_word(at, lu_len, gen, i);
        auto lv = random_admissible_word(at, lv_len, gen, i2);
        auto ru = random_admissible_word(a, ru_len, gen, j);
        auto rv = random_admissible_word(a, rv_len, gen, j2);
        if (!lu || !lv || !ru || !rv) continue;
        if (!ck_pair_nonzero(at, CkPair{*lu, *lv}) || !ck_pair_nonzero(a, CkPair{*ru, *rv}))
            continue;
        return TensorElement::monomial(a, *lu, *lv, *ru, *rv);
    }
    return std::nullopt;
}

/// Gauge-fixed corner monomial: |ru| + |lu| = |rv| + |lv|, so the term is
/// fixed by the diagonal gauge action.
inline std::optional<TensorElement> random_gauge_fixed_monomial(const SftMatrix& a,
                                                                const SftMatrix& at,
                                                                std::mt19937& gen) {
    std::size_t lu = gen() % 2 + 1, lv = gen() % 2 + 1, rv = gen() % 2 + 1;
    long ru = static_cast<long>(rv) + static_cast<long>(lv) - static_cast<long>(lu);
    if (ru < 1) return std::nullopt;
    return random_corner_monomial(a, at, gen, lu, lv, static_cast<std::size_t>(ru), rv);
}

} // namespace detail

/// The symbolic algebra verification battery for one matrix: generator
/// relations, the compression projection and its unitary, the compression
/// criterion as a characterization, the shift action on diagonal
/// generators, trace laws (full shifts), expectation laws, and the ring
/// axioms on sampled elements. Exhaustive parts scale by the alphabet; the
/// sampled parts draw `samples` tuples from the seeded generator.
inline SuiteReport ck_lemma_suite(const SftMatrix& a, unsigned max_word_len = 3,
                                  unsigned diag_budget = 4, unsigned samples = 200,
                                  unsigned seed = 1) {
    require(a.zero_one(), "NotZeroOne", "present the system as an edge shift first");
    SuiteReport rep;
    SftMatrix at = SftMatrix::validate(transpose(a.mat()));
    unsigned n = static_cast<unsigned>(a.size());
    std::mt19937 gen(seed);

    { // generator relations in both tensor factors
        CkElement unit_r = CkElement::unit(a), sum_r = CkElement::zero(a);
        CkElement unit_l = CkElement::unit(at), sum_l = CkElement::zero(at);
        for (Symbol j = 1; j <= static_cast<Symbol>(n); ++j) {
            sum_r = sum_r + CkElement::monomial(a, {j}, {j});
            sum_l = sum_l + CkElement::monomial(at, {j}, {j});
        }
        rep.add("unit-resolution", sum_r == unit_r && sum_l == unit_l);

        bool ok = true;
        for (Symbol i = 1; i <= static_cast<Symbol>(n) && ok; ++i) {
            CkElement lhs = CkElement::monomial(a, {}, {i}) * CkElement::monomial(a, {i}, {});
            CkElement rhs = CkElement::zero(a);
            for (Symbol j = 1; j <= static_cast<Symbol>(n); ++j)
                if (a.edge(i, j)) rhs = rhs + CkElement::monomial(a, {j}, {j});
            ok = ok && lhs == rhs;
            CkElement lhs_t = CkElement::monomial(at, {}, {i}) * CkElement::monomial(at, {i}, {});
            CkElement rhs_t = CkElement::zero(at);
            for (Symbol j = 1; j <= static_cast<Symbol>(n); ++j)
                if (at.edge(i, j)) rhs_t = rhs_t + CkElement::monomial(at, {j}, {j});
            ok = ok && lhs_t == rhs_t;
        }
        rep.add("range-relations", ok);
    }

    TensorElement e = projection_EA(a);
    TensorElement u = unitary_UA(a);

    { // the compression projection agrees with both of its defining sums
        TensorElement lhs = TensorElement::zero(a), rhs = TensorElement::zero(a);
        for (Symbol j = 1; j <= static_cast<Symbol>(n); ++j) {
            lhs = lhs + TensorElement::monomial(a, {j}, {j}, {}, {j}) *
                            TensorElement::monomial(a, {}, {}, {j}, {});
            rhs = rhs + TensorElement::monomial(a, {}, {j}, {j}, {j}) *
                            TensorElement::monomial(a, {j}, {}, {}, {});
        }
        rep.add("projection-two-presentations", lhs == e && rhs == e);
        rep.add("projection-laws", e * e == e && e.adjoint() == e);
    }

    { // the unitary of the corner
        bool ok = u * u.adjoint() == e && u.adjoint() * u == e && e * u == u && u * e == u;
        for (Symbol i = 1; i <= static_cast<Symbol>(n) && ok; ++i)
            for (Symbol j = 1; j <= static_cast<Symbol>(n) && ok; ++j) {
                if (i == j) continue;
                TensorElement ui = TensorElement::monomial(a, {}, {i}, {i}, {});
                TensorElement uj = TensorElement::monomial(a, {}, {j}, {j}, {});
                ok = ok && (ui.adjoint() * ui * (uj.adjoint() * uj)).is_zero();
            }
        rep.add("unitary-laws", ok);
        rep.add("alpha-fixes-projection", alpha_A(e) == e);
    }

    { // compression criterion <=> compression fixity, on nonzero monomials
        bool ok = true;
        std::string detail;
        long tested = 0;
        auto test_tuple = [&](const Word& lu, const Word& lv, const Word& ru, const Word& rv) {
            if (!ck_pair_nonzero(at, CkPair{lu, lv}) || !ck_pair_nonzero(a, CkPair{ru, rv}))
                return;
            TensorElement m = TensorElement::monomial(a, lu, lv, ru, rv);
            TensorTerm t{CkPair{lu, lv}, CkPair{ru, rv}, 1};
            bool crit = corner_criterion(a, t);
            bool fixed = compress(m) == m;
            ++tested;
            if (crit != fixed && ok) {
                ok = false;
                detail = "criterion " + std::to_string(crit) + " vs fixity " +
                         std::to_string(fixed) + " at " + word_str(lu) + " | " + word_str(lv) +
                         " | " + word_str(ru) + " | " + word_str(rv);
            }
        };
        if (n <= 2) {
            std::vector<Word> lefts, rights;
            for (unsigned len = 1; len <= max_word_len; ++len) {
                for (const Word& w : admissible_words(at, len)) lefts.push_back(w);
                for (const Word& w : admissible_words(a, len)) rights.push_back(w);
            }
            for (const Word& lu : lefts)
                for (const Word& lv : lefts)
                    for (const Word& ru : rights)
                        for (const Word& rv : rights) test_tuple(lu, lv, ru, rv);
        } else {
            for (unsigned s = 0; s < samples; ++s) {
                auto lu = detail::random_admissible_word(at, gen() % max_word_len + 1, gen);
                auto lv = detail::random_admissible_word(at, gen() % max_word_len + 1, gen);
                auto ru = detail::random_admissible_word(a, gen() % max_word_len + 1, gen);
                auto rv = detail::random_admissible_word(a, gen() % max_word_len + 1, gen);
                if (lu && lv && ru && rv) test_tuple(*lu, *lv, *ru, *rv);
            }
        }
        rep.add("compression-criterion", ok && tested > 0,
                ok ? std::to_string(tested) + " monomials" : detail);
    }

    { // shift action on diagonal generators
        bool ok = true;
        std::string detail;
        long tested = 0;
        for (unsigned kl = 1; kl + 1 <= diag_budget && ok; ++kl)
            for (unsigned km = 1; kl + km <= diag_budget && ok; ++km)
                for (const Word& lu : admissible_words(at, kl)) {
                    if (!ok) break;
                    for (const Word& ru : admissible_words(a, km)) {
                        if (!a.edge(lu.front(), ru.front())) continue;
                        TensorElement m = TensorElement::monomial(a, lu, lu, ru, ru);
                        Word lu2(lu.begin() + 1, lu.end());
                        Word ru2 = ru;
                        ru2.insert(ru2.begin(), lu.front());
                        TensorElement expect =
                            compress(TensorElement::monomial(a, lu2, lu2, ru2, ru2));
                        ++tested;
                        if (!(alpha_A(m) == expect)) {
                            ok = false;
                            detail = "at " + word_str(lu) + " | " + word_str(ru);
                            break;
                        }
                    }
                }
        rep.add("shift-on-diagonal", ok && tested > 0,
                ok ? std::to_string(tested) + " generators" : detail);
    }

    { // ring and star axioms on sampled corner elements
        bool ok = true;
        for (unsigned s = 0; s < samples / 4 + 4 && ok; ++s) {
            auto x = detail::random_corner_monomial(a, at, gen, gen() % 2 + 1, gen() % 2 + 1,
                                                    gen() % 2 + 1, gen() % 2 + 1);
            auto y = detail::random_corner_monomial(a, at, gen, gen() % 2 + 1, gen() % 2 + 1,
                                                    gen() % 2 + 1, gen() % 2 + 1);
            auto z = detail::random_corner_monomial(a, at, gen, gen() % 2 + 1, gen() % 2 + 1,
                                                    gen() % 2 + 1, gen() % 2 + 1);
            if (!x || !y || !z) continue;
            ok = ok && ((*x * *y) * *z == *x * (*y * *z));
            ok = ok && ((*x * *y).adjoint() == y->adjoint() * x->adjoint());
            ok = ok && (x->adjoint().adjoint() == *x);
            ok = ok && (compress(*x * *y) == compress(*x) * compress(*y));
        }
        rep.add("ring-star-axioms", ok);
    }

    { // conditional expectation laws
        bool ok = diagonal_expectation(e) == e;
        for (unsigned s = 0; s < samples / 8 + 4 && ok; ++s) {
            auto x = detail::random_corner_monomial(a, at, gen, gen() % 2 + 1, gen() % 2 + 1,
                                                    gen() % 2 + 1, gen() % 2 + 1);
            auto y = detail::random_corner_monomial(a, at, gen, gen() % 2 + 1, gen() % 2 + 1,
                                                    gen() % 2 + 1, gen() % 2 + 1);
            if (!x || !y) continue;
            TensorElement w = *x + Rat(2) * *y;
            TensorElement ew = diagonal_expectation(w);
            ok = ok && diagonal_expectation(ew) == ew;
            ok = ok && diagonal_expectation(w.adjoint()) == ew.adjoint();
        }
        rep.add("expectation-laws", ok);
    }

    if (auto fs = full_shift_size(a.mat())) { // trace laws, exact over Q
        unsigned nn = *fs;
        bool ok = trace_full_shift(e, nn) == Rat(1);
        Rat tu = trace_full_shift(compress(u * u.adjoint()), nn);
        ok = ok && tu == Rat(1);
        for (unsigned s = 0; s < samples / 8 + 4 && ok; ++s) {
            auto x = detail::random_gauge_fixed_monomial(a, at, gen);
            auto y = detail::random_gauge_fixed_monomial(a, at, gen);
            if (!x || !y) continue;
            ok = ok && trace_full_shift(*x * *y, nn) == trace_full_shift(*y * *x, nn);
            ok = ok && trace_full_shift(x->adjoint() * *x, nn) >= 0;
            ok = ok && trace_full_shift(alpha_A(*x), nn) == trace_full_shift(*x, nn);
            ParryTraceValue pv = trace_parry(*x);
            ok = ok && pv.exact && pv.rational == trace_full_shift(*x, nn);
        }
        rep.add("trace-laws", ok);
    }

    return rep;
}

} // namespace sftlab
