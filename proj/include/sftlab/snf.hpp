#pragma once

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

#include <string>
#include <vector>

namespace sftlab {

struct SmithResult {
    IntMat u, d, v; // u * input * v == d, with u, v unimodular
};

/// Smith normal form over Z. Returns (U, D, V) with U M V = D diagonal,
/// nonnegative, each diagonal entry dividing the next. U and V are products
/// of integer elementary operations, hence unimodular.
inline SmithResult smith_normal_form(const IntMat& m) {
    std::size_t r = m.rows, c = m.cols;
    SmithResult s{IntMat::identity(r), m, IntMat::identity(c)};
    IntMat& d = s.d;

    auto row_sub = [&](std::size_t i, std::size_t t, const Int& q) {
        for (std::size_t j = 0; j < c; ++j) d.at(i, j) -= q * d.at(t, j);
        for (std::size_t j = 0; j < r; ++j) s.u.at(i, j) -= q * s.u.at(t, j);
    };
    auto col_sub = [&](std::size_t j, std::size_t t, const Int& q) {
        for (std::size_t i = 0; i < r; ++i) d.at(i, j) -= q * d.at(i, t);
        for (std::size_t i = 0; i < c; ++i) s.v.at(i, j) -= q * s.v.at(i, t);
    };
    auto row_swap = [&](std::size_t i, std::size_t t) {
        if (i == t) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(d.at(i, j), d.at(t, j));
        for (std::size_t j = 0; j < r; ++j) std::swap(s.u.at(i, j), s.u.at(t, j));
    };
    auto col_swap = [&](std::size_t j, std::size_t t) {
        if (j == t) return;
        for (std::size_t i = 0; i < r; ++i) std::swap(d.at(i, j), d.at(i, t));
        for (std::size_t i = 0; i < c; ++i) std::swap(s.v.at(i, j), s.v.at(i, t));
    };

    std::size_t rank = 0;
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        // Smallest-magnitude pivot in the trailing submatrix.
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (d.at(i, j) != 0 &&
                    (!found || abs_int(d.at(i, j)) < abs_int(d.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        row_swap(pi, t);
        col_swap(pj, t);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = round_div(d.at(i, t), d.at(t, t));
                row_sub(i, t, q);
                if (d.at(i, t) != 0) { // remainder strictly smaller: promote it
                    row_swap(i, t);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = round_div(d.at(t, j), d.at(t, t));
                col_sub(j, t, q);
                if (d.at(t, j) != 0) {
                    col_swap(j, t);
                    clean = false;
                }
            }
            if (clean) break;
        }
        rank = t + 1;
    }

    // Divisibility chain: fold non-divisible entries back into earlier pivots.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t t = 0; t + 1 < rank; ++t) {
            for (std::size_t j = t + 1; j < rank; ++j) {
                if (d.at(j, j) % d.at(t, t) == 0) continue;
                // Mix column j into column t, then re-eliminate the 2x2 block.
                for (std::size_t i = 0; i < r; ++i) d.at(i, t) += d.at(i, j);
                for (std::size_t i = 0; i < c; ++i) s.v.at(i, t) += s.v.at(i, j);
                for (;;) {
                    if (d.at(j, t) != 0 && abs_int(d.at(j, t)) < abs_int(d.at(t, t)))
                        row_swap(j, t);
                    if (d.at(j, t) != 0) {
                        Int q = round_div(d.at(j, t), d.at(t, t));
                        row_sub(j, t, q);
                        continue;
                    }
                    if (d.at(t, j) != 0) {
                        Int q = round_div(d.at(t, j), d.at(t, t));
                        col_sub(j, t, q);
                        if (d.at(t, j) != 0) col_swap(j, t);
                        continue;
                    }
                    break;
                }
                changed = true;
            }
        }
    }

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        if (d.at(t, t) < 0) {
            for (std::size_t j = 0; j < c; ++j) d.at(t, j) = -d.at(t, j);
            for (std::size_t j = 0; j < r; ++j) s.u.at(t, j) = -s.u.at(t, j);
        }
    }
    return s;
}

inline unsigned smith_rank(const SmithResult& s) {
    unsigned k = 0;
    for (std::size_t t = 0; t < std::min(s.d.rows, s.d.cols); ++t)
        if (s.d.at(t, t) != 0) ++k;
    return k;
}

/// Finitely generated abelian group in invariant-factor form.
struct FinGenAbGroup {
    unsigned free_rank = 0;
    std::vector<Int> torsion; // invariant factors >= 2, each dividing the next

    bool operator==(const FinGenAbGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool trivial() const { return free_rank == 0 && torsion.empty(); }

    std::string str() const {
        if (trivial()) return "0";
        std::string out;
        auto append = [&](const std::string& piece) {
            if (!out.empty()) out += " + ";
            out += piece;
        };
        if (free_rank == 1) append("Z");
        else if (free_rank > 1) append("Z^" + std::to_string(free_rank));
        for (const Int& t : torsion) append("Z/" + to_string(t));
        return out;
    }
};

/// Z^rows / image(M), read off the Smith normal form.
inline FinGenAbGroup cokernel(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    FinGenAbGroup g;
    unsigned rank = smith_rank(s);
    g.free_rank = static_cast<unsigned>(m.rows) - rank;
    for (std::size_t t = 0; t < rank; ++t)
        if (s.d.at(t, t) >= 2) g.torsion.push_back(s.d.at(t, t));
    return g;
}

inline unsigned kernel_rank(const IntMat& m) {
    return static_cast<unsigned>(m.cols) - smith_rank(smith_normal_form(m));
}

/// Integer basis of ker(M): the columns of V beyond the rank, since
/// M (V e_j) = U^{-1} D e_j = 0 exactly when the j-th diagonal entry is 0.
inline std::vector<std::vector<Int>> kernel_basis(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    unsigned rank = smith_rank(s);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = rank; j < m.cols; ++j) {
        std::vector<Int> col(m.cols);
        for (std::size_t i = 0; i < m.cols; ++i) col[i] = s.v.at(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

} // namespace sftlab
