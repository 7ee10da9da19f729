#pragma once

#include "bipoint.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "orbits.hpp"
#include "word.hpp"

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sftlab {

/// Arrow (x, n, z) of the Z-extension of the asymptotic groupoid:
/// shift(x, n) is doubly asymptotic to z. The stored depths certify that
/// pair and are recomputed from the points at construction, so they are
/// always the exact least witnesses.
struct AElement {
    BiPoint x;
    long n = 0;
    BiPoint z;
    long stable_depth = 0;   // shift(x,n)_i = z_i for all i >= stable_depth
    long unstable_depth = 0; // shift(x,n)_i = z_i for all i <= -unstable_depth

    static AElement make(const BiPoint& x, long n, const BiPoint& z) {
        auto w = asymptotic_pair(shift(x, n), z);
        require(w.has_value(), "NotAsymptotic", "shifted source is not asymptotic to the target");
        return AElement{x, n, z, w->first, w->second};
    }

    static AElement unit(const BiPoint& x) { return make(x, 0, x); }
};

inline AElement a_inverse(const AElement& g) { return AElement::make(g.z, -g.n, g.x); }

inline AElement a_compose(const AElement& g, const AElement& h) {
    require(g.z == h.x, "NotComposable", "middle points of the arrows must agree");
    return AElement::make(g.x, g.n + h.n, h.z);
}

/// Arrow (x, p, q, y) of the two-exponent stable/unstable extension:
/// shift(x, p) and y share right tails, shift(x, q) and y share left tails.
struct SUElement {
    BiPoint x;
    long p = 0, q = 0;
    BiPoint y;
    long stable_depth = 0;   // witness for the right-tail relation at exponent p
    long unstable_depth = 0; // witness for the left-tail relation at exponent q

    static SUElement make(const BiPoint& x, long p, long q, const BiPoint& y) {
        auto s = right_tail_match(shift(x, p), y);
        require(s.has_value(), "NotStable", "shift(x,p) and y do not share right tails");
        auto u = left_tail_match(shift(x, q), y);
        require(u.has_value(), "NotUnstable", "shift(x,q) and y do not share left tails");
        return SUElement{x, p, q, y, *s, *u};
    }

    static SUElement unit(const BiPoint& x) { return make(x, 0, 0, x); }
};

inline SUElement su_inverse(const SUElement& g) {
    return SUElement::make(g.y, -g.p, -g.q, g.x);
}

inline SUElement su_compose(const SUElement& g, const SUElement& h) {
    require(g.y == h.x, "NotComposable", "middle points of the arrows must agree");
    return SUElement::make(g.x, g.p + h.p, g.q + h.q, h.y);
}

/// Restriction to the diagonal subgroupoid: (x, p, p, y) is an arrow of the
/// Z-extension of the asymptotic groupoid; off-diagonal exponents give
/// nothing.
inline std::optional<AElement> diagonal_part(const SUElement& g) {
    if (g.p != g.q) return std::nullopt;
    return AElement::make(g.x, g.p, g.y);
}

/// Compact open bisection datum used when mapping algebra monomials into the
/// groupoid picture: points whose coordinates read source_word starting at
/// source_start are carried to points reading target_word at target_start,
/// shifting by p on the right tail and q on the left tail.
struct GroupoidCylinder {
    Word source_word;
    long source_start = 0;
    Word target_word;
    long target_start = 0;
    long p = 0;
    long q = 0;

    bool operator==(const GroupoidCylinder& o) const {
        return source_word == o.source_word && source_start == o.source_start &&
               target_word == o.target_word && target_start == o.target_start && p == o.p &&
               q == o.q;
    }
};

/// Shortest strictly-interior symbol path from i to j: the returned word w
/// makes i w j admissible, and is empty when i -> j is already an edge.
inline Word shortest_connector(const SftMatrix& a, Symbol i, Symbol j) {
    if (a.edge(i, j)) return {};
    std::size_t n = a.size();
    std::vector<int> prev(n + 1, 0);
    std::deque<Symbol> queue{i};
    std::vector<bool> seen(n + 1, false);
    while (!queue.empty()) {
        Symbol u = queue.front();
        queue.pop_front();
        for (Symbol v = 1; v <= static_cast<Symbol>(n); ++v) {
            if (!a.edge(u, v) || seen[v]) continue;
            seen[v] = true;
            prev[v] = u;
            if (a.edge(v, j)) {
                Word w{v};
                while (prev[w.front()] != i) w.insert(w.begin(), prev[w.front()]);
                return w;
            }
            queue.push_back(v);
        }
    }
    fail("NotIrreducible", "no path between symbols; matrix is not irreducible");
}

/// Searches the given cylinder for a point x with asymptotic_pair(shift(x,n), x)
/// absent: both tails are a primitive cycle v whose length does not divide n,
/// so the shifted tails never re-align. A returned point certifies that the
/// cylinder is not contained in the n-asymptotic periodic set.
inline std::optional<BiPoint> essential_freeness_witness(const SftMatrix& a, long n,
                                                         const Word& word,
                                                         unsigned search_depth = 12) {
    require(n != 0, "ZeroExponent", "every point is 0-asymptotically periodic");
    require(word.empty() || a.word_admissible(word), "NotAdmissible",
            "cylinder word is not admissible");
    long an = std::labs(n);
    for (unsigned len = 1; len <= search_depth; ++len) {
        if (an % static_cast<long>(len) == 0) continue;
        for (const Word& v : closed_words(a, len)) {
            if (primitive_root_length(v) != v.size()) continue;
            BiPoint x = [&] {
                if (word.empty()) return BiPoint::make(a, v, {}, v, 0);
                Word pre = shortest_connector(a, v.back(), word.front());
                Word post = shortest_connector(a, word.back(), v.front());
                Word core = concat(concat(pre, word), post);
                return BiPoint::make(a, v, core, v, -static_cast<long>(pre.size()));
            }();
            if (!asymptotic_pair(shift(x, n), x).has_value()) return x;
        }
    }
    return std::nullopt;
}

/// Certificate search only: true proves the cylinder meets the complement of
/// the n-asymptotic periodic set; false means no certificate was found
/// within search_depth, which disproves nothing.
inline bool essential_freeness_evidence(const SftMatrix& a, long n, const Word& word,
                                        unsigned search_depth = 12) {
    return essential_freeness_witness(a, n, word, search_depth).has_value();
}

} // namespace sftlab
