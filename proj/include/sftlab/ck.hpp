#pragma once

#include "error.hpp"
#include "groupoid.hpp"
#include "ktheory.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "word.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace sftlab {

/// S_u S_v^* in symbolic form. Words are admissible for the algebra's
/// matrix; the pair is zero in the algebra iff no symbol can follow both
/// word ends (an empty word imposes no constraint).
struct CkPair {
    Word u, v;

    bool operator==(const CkPair& o) const { return u == o.u && v == o.v; }
    bool operator<(const CkPair& o) const { return std::tie(u, v) < std::tie(o.u, o.v); }
};

inline bool ck_pair_nonzero(const SftMatrix& m, const CkPair& p) {
    for (Symbol j = 1; j <= static_cast<Symbol>(m.size()); ++j)
        if ((p.u.empty() || m.edge(p.u.back(), j)) && (p.v.empty() || m.edge(p.v.back(), j)))
            return true;
    return false;
}

inline void ck_check_pair(const SftMatrix& m, const CkPair& p) {
    require(m.word_admissible(p.u) && m.word_admissible(p.v), "NotAdmissible",
            "pair words must be admissible");
}

/// (S_{x.u} S_{x.v}^*)(S_{y.u} S_{y.v}^*) resolved by the relations: a list
/// of pairs, each with coefficient 1 (a sum appears exactly when the middle
/// words coincide and are nonempty).
inline std::vector<CkPair> ck_mul_pairs(const SftMatrix& m, const CkPair& x, const CkPair& y) {
    const Word &a = x.v, &b = y.u;
    auto is_prefix = [](const Word& p, const Word& w) {
        return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
    };
    if (a == b) {
        if (a.empty()) return {CkPair{x.u, y.v}};
        std::vector<CkPair> out;
        for (Symbol j = 1; j <= static_cast<Symbol>(m.size()); ++j) {
            if (!m.edge(a.back(), j)) continue;
            if (!x.u.empty() && !m.edge(x.u.back(), j)) continue;
            if (!y.v.empty() && !m.edge(y.v.back(), j)) continue;
            Word nu = x.u, nv = y.v;
            nu.push_back(j);
            nv.push_back(j);
            out.push_back(CkPair{std::move(nu), std::move(nv)});
        }
        return out;
    }
    if (is_prefix(a, b)) { // b = a w: S_a^* S_b = S_w
        Word w(b.begin() + static_cast<long>(a.size()), b.end());
        if (!x.u.empty() && !m.edge(x.u.back(), w.front())) return {};
        Word nu = x.u;
        nu.insert(nu.end(), w.begin(), w.end());
        return {CkPair{std::move(nu), y.v}};
    }
    if (is_prefix(b, a)) { // a = b w: S_a^* S_b = S_w^*
        Word w(a.begin() + static_cast<long>(b.size()), a.end());
        if (!y.v.empty() && !m.edge(y.v.back(), w.front())) return {};
        Word nv = y.v;
        nv.insert(nv.end(), w.begin(), w.end());
        return {CkPair{x.u, std::move(nv)}};
    }
    return {};
}

/// One application of the summed range relation in the middle of the pair:
/// S_u S_v^* = sum_j S_{uj} S_{vj}^* over symbols j that may follow both.
inline std::vector<CkPair> ck_expand_pair(const SftMatrix& m, const CkPair& p) {
    std::vector<CkPair> out;
    for (Symbol j = 1; j <= static_cast<Symbol>(m.size()); ++j) {
        if (!p.u.empty() && !m.edge(p.u.back(), j)) continue;
        if (!p.v.empty() && !m.edge(p.v.back(), j)) continue;
        Word nu = p.u, nv = p.v;
        nu.push_back(j);
        nv.push_back(j);
        out.push_back(CkPair{std::move(nu), std::move(nv)});
    }
    return out;
}

struct CkTerm {
    CkPair p;
    Rat c = 1;
};

/// Z-linear combination of pairs in one Cuntz-Krieger algebra, kept in the
/// leveled canonical form: within each class of constant |u| - |v| all v
/// words have the common maximal length, a lone unit pair is expanded one
/// level, zero pairs and zero coefficients are dropped, terms are sorted.
class CkElement {
public:
    explicit CkElement(SftMatrix m) : m_(std::move(m)) {}

    static CkElement zero(const SftMatrix& m) { return CkElement(m); }

    static CkElement unit(const SftMatrix& m) {
        CkElement e(m);
        e.terms_.push_back(CkTerm{CkPair{{}, {}}, 1});
        e.normalize();
        return e;
    }

    static CkElement monomial(const SftMatrix& m, Word u, Word v, Rat c = 1) {
        CkElement e(m);
        CkPair p{std::move(u), std::move(v)};
        ck_check_pair(m, p);
        e.terms_.push_back(CkTerm{std::move(p), std::move(c)});
        e.normalize();
        return e;
    }

    const SftMatrix& matrix() const { return m_; }
    const std::vector<CkTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CkElement adjoint() const {
        CkElement r(m_);
        for (const CkTerm& t : terms_) r.terms_.push_back(CkTerm{CkPair{t.p.v, t.p.u}, t.c});
        r.normalize();
        return r;
    }

    friend CkElement operator+(const CkElement& x, const CkElement& y) {
        require(x.m_ == y.m_, "ShapeMismatch", "elements live over different matrices");
        CkElement r = x;
        r.terms_.insert(r.terms_.end(), y.terms_.begin(), y.terms_.end());
        r.normalize();
        return r;
    }

    friend CkElement operator-(const CkElement& x, const CkElement& y) {
        return x + (Rat(-1) * y);
    }

    friend CkElement operator*(const Rat& c, const CkElement& x) {
        CkElement r = x;
        for (CkTerm& t : r.terms_) t.c *= c;
        r.normalize();
        return r;
    }

    friend CkElement operator*(const CkElement& x, const CkElement& y) {
        require(x.m_ == y.m_, "ShapeMismatch", "elements live over different matrices");
        CkElement r(x.m_);
        for (const CkTerm& s : x.terms_)
            for (const CkTerm& t : y.terms_)
                for (CkPair& p : ck_mul_pairs(x.m_, s.p, t.p))
                    r.terms_.push_back(CkTerm{std::move(p), s.c * t.c});
        r.normalize();
        return r;
    }

    bool operator==(const CkElement& o) const {
        require(m_ == o.m_, "ShapeMismatch", "elements live over different matrices");
        return (*this - o).terms_.empty();
    }

private:
    void normalize() {
        std::vector<CkTerm> live;
        for (CkTerm& t : terms_) {
            if (t.c == 0) continue;
            if (!ck_pair_nonzero(m_, t.p)) continue;
            live.push_back(std::move(t));
        }
        std::map<long, std::size_t> target; // class (|u| - |v|) -> max |v|
        std::map<long, bool> has_unit;
        for (const CkTerm& t : live) {
            long d = static_cast<long>(t.p.u.size()) - static_cast<long>(t.p.v.size());
            target[d] = std::max(target[d], t.p.v.size());
            if (t.p.u.empty() && t.p.v.empty()) has_unit[d] = true;
        }
        for (auto& [d, lvl] : target)
            if (has_unit.count(d)) lvl = std::max<std::size_t>(lvl, 1);

        std::map<CkPair, Rat> acc;
        std::vector<CkTerm> queue = std::move(live);
        while (!queue.empty()) {
            CkTerm t = std::move(queue.back());
            queue.pop_back();
            long d = static_cast<long>(t.p.u.size()) - static_cast<long>(t.p.v.size());
            if (t.p.v.size() < target[d]) {
                for (CkPair& ch : ck_expand_pair(m_, t.p))
                    queue.push_back(CkTerm{std::move(ch), t.c});
                continue;
            }
            acc[t.p] += t.c;
        }
        terms_.clear();
        for (auto& [p, c] : acc)
            if (c != 0) terms_.push_back(CkTerm{p, c});
    }

    SftMatrix m_;
    std::vector<CkTerm> terms_;
};

struct Bidegree {
    long p = 0, q = 0;
    bool operator==(const Bidegree& o) const { return p == o.p && q == o.q; }
};

/// Elementary tensor (left pair) x (right pair) with an integer coefficient.
/// The left factor lives over the transposed matrix, the right factor over
/// the matrix itself.
struct TensorTerm {
    CkPair l, r;
    Rat c = 1;
};

inline Bidegree term_bidegree(const TensorTerm& t) {
    return Bidegree{static_cast<long>(t.r.u.size()) - static_cast<long>(t.r.v.size()),
                    static_cast<long>(t.l.v.size()) - static_cast<long>(t.l.u.size())};
}

/// Z-linear combination of elementary tensors over O_{A^t} (x) O_A, kept in
/// the leveled canonical form per (left class, right class) group, with
/// factor-units expanded one level.
class TensorElement {
public:
    explicit TensorElement(const SftMatrix& a)
        : a_(a), at_(SftMatrix::validate(transpose(a.mat()))) {}

    static TensorElement zero(const SftMatrix& a) { return TensorElement(a); }

    static TensorElement unit(const SftMatrix& a) {
        TensorElement e(a);
        e.terms_.push_back(TensorTerm{CkPair{{}, {}}, CkPair{{}, {}}, 1});
        e.normalize();
        return e;
    }

    static TensorElement monomial(const SftMatrix& a, Word lu, Word lv, Word ru, Word rv,
                                  Rat c = 1) {
        TensorElement e(a);
        CkPair l{std::move(lu), std::move(lv)}, r{std::move(ru), std::move(rv)};
        ck_check_pair(e.at_, l);
        ck_check_pair(e.a_, r);
        e.terms_.push_back(TensorTerm{std::move(l), std::move(r), std::move(c)});
        e.normalize();
        return e;
    }

    const SftMatrix& matrix() const { return a_; }
    const SftMatrix& matrix_left() const { return at_; }
    const std::vector<TensorTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TensorElement adjoint() const {
        TensorElement r(a_);
        for (const TensorTerm& t : terms_)
            r.terms_.push_back(TensorTerm{CkPair{t.l.v, t.l.u}, CkPair{t.r.v, t.r.u}, t.c});
        r.normalize();
        return r;
    }

    friend TensorElement operator+(const TensorElement& x, const TensorElement& y) {
        require(x.a_ == y.a_, "ShapeMismatch", "elements live over different matrices");
        TensorElement r = x;
        r.terms_.insert(r.terms_.end(), y.terms_.begin(), y.terms_.end());
        r.normalize();
        return r;
    }

    friend TensorElement operator-(const TensorElement& x, const TensorElement& y) {
        return x + (Rat(-1) * y);
    }

    friend TensorElement operator*(const Rat& c, const TensorElement& x) {
        TensorElement r = x;
        for (TensorTerm& t : r.terms_) t.c *= c;
        r.normalize();
        return r;
    }

    friend TensorElement operator*(const TensorElement& x, const TensorElement& y) {
        require(x.a_ == y.a_, "ShapeMismatch", "elements live over different matrices");
        TensorElement r(x.a_);
        for (const TensorTerm& s : x.terms_)
            for (const TensorTerm& t : y.terms_) {
                auto ls = ck_mul_pairs(x.at_, s.l, t.l);
                if (ls.empty()) continue;
                auto rs = ck_mul_pairs(x.a_, s.r, t.r);
                for (const CkPair& lp : ls)
                    for (const CkPair& rp : rs)
                        r.terms_.push_back(TensorTerm{lp, rp, s.c * t.c});
            }
        r.normalize();
        return r;
    }

    bool operator==(const TensorElement& o) const {
        require(a_ == o.a_, "ShapeMismatch", "elements live over different matrices");
        return (*this - o).terms_.empty();
    }

    /// Common bidegree of the terms; zero element reports (0,0); nullopt for
    /// inhomogeneous elements.
    std::optional<Bidegree> bidegree() const {
        if (terms_.empty()) return Bidegree{0, 0};
        Bidegree b = term_bidegree(terms_.front());
        for (const TensorTerm& t : terms_)
            if (!(term_bidegree(t) == b)) return std::nullopt;
        return b;
    }

private:
    void normalize() {
        std::vector<TensorTerm> live;
        for (TensorTerm& t : terms_) {
            if (t.c == 0) continue;
            if (!ck_pair_nonzero(at_, t.l) || !ck_pair_nonzero(a_, t.r)) continue;
            live.push_back(std::move(t));
        }
        using Cls = std::pair<long, long>;
        auto cls = [](const TensorTerm& t) {
            return Cls{static_cast<long>(t.l.u.size()) - static_cast<long>(t.l.v.size()),
                       static_cast<long>(t.r.u.size()) - static_cast<long>(t.r.v.size())};
        };
        std::map<Cls, std::pair<std::size_t, std::size_t>> target; // (|lv|, |rv|) maxima
        std::map<Cls, std::pair<bool, bool>> has_unit;
        for (const TensorTerm& t : live) {
            auto& tg = target[cls(t)];
            tg.first = std::max(tg.first, t.l.v.size());
            tg.second = std::max(tg.second, t.r.v.size());
            auto& hu = has_unit[cls(t)];
            hu.first = hu.first || (t.l.u.empty() && t.l.v.empty());
            hu.second = hu.second || (t.r.u.empty() && t.r.v.empty());
        }
        for (auto& [k, tg] : target) {
            if (has_unit[k].first) tg.first = std::max<std::size_t>(tg.first, 1);
            if (has_unit[k].second) tg.second = std::max<std::size_t>(tg.second, 1);
        }

        std::map<std::tuple<Word, Word, Word, Word>, Rat> acc;
        std::vector<TensorTerm> queue = std::move(live);
        while (!queue.empty()) {
            TensorTerm t = std::move(queue.back());
            queue.pop_back();
            auto tg = target[cls(t)];
            if (t.l.v.size() < tg.first) {
                for (CkPair& ch : ck_expand_pair(at_, t.l))
                    queue.push_back(TensorTerm{std::move(ch), t.r, t.c});
                continue;
            }
            if (t.r.v.size() < tg.second) {
                for (CkPair& ch : ck_expand_pair(a_, t.r))
                    queue.push_back(TensorTerm{t.l, std::move(ch), t.c});
                continue;
            }
            acc[std::make_tuple(t.l.u, t.l.v, t.r.u, t.r.v)] += t.c;
        }
        terms_.clear();
        for (auto& [k, c] : acc)
            if (c != 0)
                terms_.push_back(TensorTerm{CkPair{std::get<0>(k), std::get<1>(k)},
                                            CkPair{std::get<2>(k), std::get<3>(k)}, c});
    }

    SftMatrix a_, at_;
    std::vector<TensorTerm> terms_;
};

/// E_A = sum over edges (i,j) of (i,i)-diagonal (x) (j,j)-diagonal; the
/// compressing projection of the tensor algebra.
inline TensorElement projection_EA(const SftMatrix& a) {
    TensorElement e = TensorElement::zero(a);
    for (Symbol i = 1; i <= static_cast<Symbol>(a.size()); ++i)
        for (Symbol j = 1; j <= static_cast<Symbol>(a.size()); ++j) {
            if (!a.edge(i, j)) continue;
            e = e + TensorElement::monomial(a, {i}, {i}, {j}, {j});
        }
    return e;
}

inline TensorElement compress(const TensorElement& x) {
    TensorElement e = projection_EA(x.matrix());
    return e * x * e;
}

/// U_A = sum_i 1 T_i^* (x) S_i 1^*; a partial isometry with
/// U U^* = U^* U = E_A implementing the one-sided shift on both legs.
inline TensorElement unitary_UA(const SftMatrix& a) {
    TensorElement u = TensorElement::zero(a);
    for (Symbol i = 1; i <= static_cast<Symbol>(a.size()); ++i)
        u = u + TensorElement::monomial(a, {}, {i}, {i}, {});
    return u;
}

/// The gauge-compatible automorphism of the compressed corner: conjugation
/// by U_A. Defined only on corner-fixed elements.
inline TensorElement alpha_A(const TensorElement& x) {
    require(compress(x) == x, "NotInCorner", "alpha is defined on the compressed corner");
    TensorElement u = unitary_UA(x.matrix());
    return u * x * u.adjoint();
}

/// Conditional expectation onto the fixed-point algebra of the diagonal
/// gauge action: keeps the terms whose word-length differences cancel
/// across the two legs, i.e. |l.u| + |r.u| == |l.v| + |r.v|.
inline TensorElement diagonal_expectation(const TensorElement& x) {
    TensorElement r = TensorElement::zero(x.matrix());
    for (const TensorTerm& t : x.terms()) {
        Bidegree b = term_bidegree(t);
        if (b.p == b.q)
            r = r + TensorElement::monomial(x.matrix(), t.l.u, t.l.v, t.r.u, t.r.v, t.c);
    }
    return r;
}

inline bool is_fixed_by_diagonal(const TensorElement& x) { return diagonal_expectation(x) == x; }

/// Boundary-edge criterion for compression-invariance of a monomial all of
/// whose words are nonempty: the corner fixes it iff the two word junctions
/// are admissible.
inline bool corner_criterion(const SftMatrix& a, const TensorTerm& t) {
    require(!t.l.u.empty() && !t.l.v.empty() && !t.r.u.empty() && !t.r.v.empty(), "EmptyWord",
            "criterion applies to monomials with nonempty words");
    return a.edge(t.l.u.front(), t.r.u.front()) && a.edge(t.l.v.front(), t.r.v.front());
}

inline void check_gauge_fixed(const TensorElement& x) {
    for (const TensorTerm& t : x.terms()) {
        Bidegree b = term_bidegree(t);
        require(b.p == b.q, "NotGaugeFixed",
                "trace needs an element fixed by the diagonal gauge action");
    }
}

/// Trace on the fixed-point algebra of the diagonal gauge action for the
/// full N-shift: each diagonal term contributes coeff / N^{|lu| + |ru|}.
inline Rat trace_full_shift(const TensorElement& x, unsigned n) {
    auto fs = full_shift_size(x.matrix().mat());
    require(fs.has_value() && *fs == n, "NotFullShift", "element does not live over the full N-shift");
    check_gauge_fixed(x);
    Rat acc = 0;
    for (const TensorTerm& t : x.terms()) {
        if (!(t.l.u == t.l.v) || !(t.r.u == t.r.v)) continue;
        acc += t.c / Rat(int_pow(Int(n), static_cast<unsigned>(t.l.u.size() + t.r.u.size())));
    }
    return acc;
}

struct ParryTraceValue {
    bool exact = false;
    Rat rational = 0; // meaningful when exact
    double value = 0.0;
};

/// Trace with respect to the Parry measure (the measure of maximal entropy):
/// a diagonal term fixes the cylinder word reverse(lu) ++ ru, whose measure
/// is u_{w_1} v_{w_len} / (lambda^{len-1} <u, v>). Exact over Q when the
/// Perron value is an integer.
inline ParryTraceValue trace_parry(const TensorElement& x, double tol = 1e-10) {
    check_gauge_fixed(x);
    const SftMatrix& a = x.matrix();
    PerronData pd = perron_data(a.mat());
    if (!pd.integral) {
        // the numeric promise: eigenvector residual within tol
        double resid = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double sr = 0, sl = 0;
            for (std::size_t j = 0; j < a.size(); ++j) {
                sr += to_double(Rat(a.mat().at(i, j))) * pd.right[j];
                sl += to_double(Rat(a.mat().at(j, i))) * pd.left[j];
            }
            resid = std::max(resid, std::fabs(sr - pd.lambda * pd.right[i]));
            resid = std::max(resid, std::fabs(sl - pd.lambda * pd.left[i]));
        }
        require(resid <= tol * std::max(1.0, pd.lambda), "InterpolationError",
                "Perron data residual exceeds the requested tolerance");
    }
    ParryTraceValue out;
    out.exact = pd.integral;

    auto cylinder_word = [&](const TensorTerm& t) -> std::optional<Word> {
        if (!(t.l.u == t.l.v) || !(t.r.u == t.r.v)) return std::nullopt;
        Word w = reversed(t.l.u);
        w.insert(w.end(), t.r.u.begin(), t.r.u.end());
        if (w.empty()) return std::nullopt;
        if (!a.word_admissible(w)) return Word{}; // measure zero: junction breaks
        return w;
    };

    if (pd.integral) {
        Rat inner = 0;
        for (std::size_t i = 0; i < a.size(); ++i) inner += pd.left_exact[i] * pd.right_exact[i];
        Rat acc = 0;
        for (const TensorTerm& t : x.terms()) {
            auto w = cylinder_word(t);
            if (!w || w->empty()) continue;
            Rat lam_pow = int_pow(pd.lambda_integer, static_cast<unsigned>(w->size() - 1));
            acc += t.c * pd.left_exact[static_cast<std::size_t>(w->front() - 1)] *
                   pd.right_exact[static_cast<std::size_t>(w->back() - 1)] / (lam_pow * inner);
        }
        out.rational = acc;
        out.value = to_double(acc);
        return out;
    }

    double inner = 0;
    for (std::size_t i = 0; i < a.size(); ++i) inner += pd.left[i] * pd.right[i];
    double acc = 0;
    for (const TensorTerm& t : x.terms()) {
        auto w = cylinder_word(t);
        if (!w || w->empty()) continue;
        double lam_pow = std::pow(pd.lambda, static_cast<double>(w->size() - 1));
        acc += to_double(t.c) * pd.left[static_cast<std::size_t>(w->front() - 1)] *
               pd.right[static_cast<std::size_t>(w->back() - 1)] / (lam_pow * inner);
    }
    out.value = acc;
    return out;
}

/// The groupoid picture of a corner-fixed monomial: points reading
/// reverse(lu) ++ ru from coordinate 1 - |lu| are mapped to points reading
/// reverse(lv) ++ rv from 1 - |lv|, with tail shifts p (right) and q (left).
inline GroupoidCylinder phi_generator_map(const TensorElement& x) {
    require(x.terms().size() == 1 && x.terms().front().c == 1, "NotMonomial",
            "the generator map takes a single monomial with coefficient 1");
    require(compress(x) == x, "CompressionCriterionFails",
            "the generator map is defined on the compressed corner");
    const TensorTerm& t = x.terms().front();
    GroupoidCylinder g;
    g.source_word = reversed(t.l.u);
    g.source_word.insert(g.source_word.end(), t.r.u.begin(), t.r.u.end());
    g.source_start = 1 - static_cast<long>(t.l.u.size());
    g.target_word = reversed(t.l.v);
    g.target_word.insert(g.target_word.end(), t.r.v.begin(), t.r.v.end());
    g.target_start = 1 - static_cast<long>(t.l.v.size());
    Bidegree b = term_bidegree(t);
    g.p = b.p;
    g.q = b.q;
    return g;
}

} // namespace sftlab
