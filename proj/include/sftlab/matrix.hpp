#pragma once

#include "error.hpp"
#include "numeric.hpp"
#include "word.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace sftlab {

/// Dense exact-integer matrix, row-major.
struct IntMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    IntMat(std::initializer_list<std::initializer_list<long long>> init) {
        rows = init.size();
        cols = rows ? init.begin()->size() : 0;
        a.reserve(rows * cols);
        for (const auto& row : init) {
            require(row.size() == cols, "NonSquare", "ragged initializer");
            for (long long v : row) a.emplace_back(v);
        }
    }

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline IntMat operator*(const IntMat& x, const IntMat& y) {
    require(x.cols == y.rows, "ShapeMismatch", "matrix product shape");
    IntMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

inline IntMat operator+(const IntMat& x, const IntMat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "ShapeMismatch", "matrix sum shape");
    IntMat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

inline IntMat operator-(const IntMat& x, const IntMat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "ShapeMismatch", "matrix difference shape");
    IntMat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

inline IntMat transpose(const IntMat& m) {
    IntMat r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

inline Int trace(const IntMat& m) {
    require(m.rows == m.cols, "NonSquare", "trace of non-square matrix");
    Int t = 0;
    for (std::size_t i = 0; i < m.rows; ++i) t += m.at(i, i);
    return t;
}

inline IntMat mat_pow(const IntMat& m, unsigned long e) {
    require(m.rows == m.cols, "NonSquare", "power of non-square matrix");
    IntMat r = IntMat::identity(m.rows), b = m;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/// Exact determinant via fraction-free Bareiss elimination.
inline Int det(IntMat m) {
    require(m.rows == m.cols, "NonSquare", "determinant of non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

enum class MatrixMode { Sft, NonNegative };

/// Validated adjacency matrix. In Sft mode entries are 0/1 and the standing
/// assumptions hold (no zero row/column, irreducible, not a permutation
/// matrix). NonNegative mode keeps general nonnegative integer matrices for
/// the linear-algebra level (zeta, Bowen-Franks, Perron data) and records
/// the same flags without enforcing them.
class SftMatrix {
public:
    static SftMatrix validate(const IntMat& m, MatrixMode mode = MatrixMode::Sft) {
        require(m.rows == m.cols && m.rows > 0, "NonSquare", "adjacency matrix must be square and nonempty");
        for (const Int& v : m.a)
            require(v >= 0, "NotZeroOne", "negative entry");
        SftMatrix s;
        s.m_ = m;
        s.n_ = m.rows;
        bool zero_one = true;
        for (const Int& v : m.a)
            if (v > 1) zero_one = false;
        s.zero_one_ = zero_one;

        s.zero_row_or_col_ = false;
        for (std::size_t i = 0; i < s.n_; ++i) {
            Int rs = 0, cs = 0;
            for (std::size_t j = 0; j < s.n_; ++j) {
                rs += m.at(i, j);
                cs += m.at(j, i);
            }
            if (rs == 0 || cs == 0) s.zero_row_or_col_ = true;
        }

        s.permutation_ = true;
        for (std::size_t i = 0; i < s.n_ && s.permutation_; ++i) {
            Int rs = 0, cs = 0;
            for (std::size_t j = 0; j < s.n_; ++j) {
                rs += m.at(i, j);
                cs += m.at(j, i);
            }
            if (rs != 1 || cs != 1) s.permutation_ = false;
        }

        s.irreducible_ = reachability_irreducible(m);

        if (mode == MatrixMode::Sft) {
            require(zero_one, "NotZeroOne", "SFT mode requires a 0-1 matrix");
            require(!s.zero_row_or_col_, "ZeroRowOrCol", "zero row or column");
            require(!s.permutation_, "Permutation", "permutation matrices are excluded");
            require(s.irreducible_, "NotIrreducible", "matrix must be irreducible");
        } else {
            require(!s.zero_row_or_col_, "ZeroRowOrCol", "zero row or column");
        }
        return s;
    }

    std::size_t size() const { return n_; }
    const IntMat& mat() const { return m_; }
    bool zero_one() const { return zero_one_; }
    bool irreducible() const { return irreducible_; }
    bool permutation() const { return permutation_; }
    bool zero_row_or_col() const { return zero_row_or_col_; }

    /// Transition test with 1-based symbols; meaningful for 0-1 matrices.
    bool edge(Symbol i, Symbol j) const {
        return m_.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) != 0;
    }

    bool word_admissible(const Word& w) const {
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (!edge(w[i], w[i + 1])) return false;
        for (Symbol s : w)
            if (s < 1 || static_cast<std::size_t>(s) > n_) return false;
        return true;
    }

    bool cycle_admissible(const Word& w) const {
        if (w.empty()) return false;
        return word_admissible(w) && edge(w.back(), w.front());
    }

    bool operator==(const SftMatrix& o) const { return m_ == o.m_; }

private:
    static bool reachability_irreducible(const IntMat& m) {
        const std::size_t n = m.rows;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<bool> seen(n, false);
            std::vector<std::size_t> stack{s};
            // seen[s] intentionally deferred: s must be re-reachable via a cycle
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                for (std::size_t v = 0; v < n; ++v)
                    if (m.at(u, v) != 0 && !seen[v]) {
                        seen[v] = true;
                        stack.push_back(v);
                    }
            }
            for (std::size_t v = 0; v < n; ++v)
                if (!seen[v]) return false;
        }
        return true;
    }

    IntMat m_;
    std::size_t n_ = 0;
    bool zero_one_ = false, irreducible_ = false, permutation_ = false, zero_row_or_col_ = false;
};

/// Full N-shift detection: the all-ones N×N matrix, or the 1×1 matrix [N]
/// in edge-shift disguise. Returns N when the shift is a full shift on N
/// symbols with N >= 2.
inline std::optional<unsigned> full_shift_size(const IntMat& m) {
    if (m.rows != m.cols || m.rows == 0) return std::nullopt;
    if (m.rows == 1) {
        if (m.at(0, 0) >= 2) return static_cast<unsigned>(m.at(0, 0).convert_to<long>());
        return std::nullopt;
    }
    for (const Int& v : m.a)
        if (v != 1) return std::nullopt;
    return static_cast<unsigned>(m.rows);
}

inline IntMat full_shift_matrix(unsigned n) {
    IntMat m(n, n);
    for (auto& v : m.a) v = 1;
    return m;
}

/// Edge-shift presentation of a nonnegative integer matrix: one symbol per
/// edge (A(i,j) parallel edges i -> j), E(e,f) = 1 iff head(e) = tail(f).
/// Traces and det(I - tE) agree with the original matrix, and the edge SFT
/// carries the point-level dynamics for matrices with entries > 1.
struct EdgeShift {
    SftMatrix matrix;                          // 0-1, one row per edge
    std::vector<std::pair<int, int>> edges;    // edge k (0-based): tail, head (1-based nodes)
};

inline EdgeShift edge_shift(const SftMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long mult = a.mat().at(i, j).convert_to<long>();
            for (long k = 0; k < mult; ++k)
                edges.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
        }
    const std::size_t ne = edges.size();
    IntMat e(ne, ne);
    for (std::size_t p = 0; p < ne; ++p)
        for (std::size_t q = 0; q < ne; ++q)
            e.at(p, q) = (edges[p].second == edges[q].first) ? 1 : 0;
    return EdgeShift{SftMatrix::validate(e, MatrixMode::Sft), std::move(edges)};
}

/// The SFT presentation used for point-level work: the matrix itself when
/// it is already 0-1, otherwise its edge shift.
inline SftMatrix point_presentation(const SftMatrix& a) {
    if (a.zero_one()) return SftMatrix::validate(a.mat(), MatrixMode::Sft);
    return edge_shift(a).matrix;
}

} // namespace sftlab
