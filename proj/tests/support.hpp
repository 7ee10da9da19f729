#pragma once

#include <sftlab/sftlab.hpp>

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testsup {

using namespace sftlab;

inline IntMat mat2(long a, long b, long c, long d) {
    IntMat m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

inline SftMatrix golden() { return SftMatrix::validate(mat2(1, 1, 1, 0)); }
inline SftMatrix full(unsigned n) { return SftMatrix::validate(full_shift_matrix(n)); }
inline SftMatrix big_1954() {
    return SftMatrix::validate(mat2(19, 5, 4, 1), MatrixMode::NonNegative);
}

/// Runs f and returns the code of the Error it throws ("" when none).
template <typename F>
inline std::string error_code_of(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const Error& e) {
        return e.code();
    } catch (...) {
        return "<non-library-exception>";
    }
    return "";
}

/// All n x n 0-1 matrices passing full validation (irreducible,
/// no zero row/column, not a permutation).
inline std::vector<SftMatrix> all_accepted(unsigned n) {
    std::vector<SftMatrix> out;
    const unsigned bits = n * n;
    for (unsigned long mask = 0; mask < (1UL << bits); ++mask) {
        IntMat m(n, n);
        for (unsigned b = 0; b < bits; ++b)
            if (mask & (1UL << b)) m.a[b] = 1;
        try {
            out.push_back(SftMatrix::validate(m));
        } catch (const Error&) {
        }
    }
    return out;
}

/// Seeded random accepted 0-1 matrix via rejection sampling.
inline SftMatrix random_accepted(unsigned n, std::mt19937& gen) {
    for (;;) {
        IntMat m(n, n);
        for (auto& v : m.a) v = (gen() & 1) ? 1 : 0;
        try {
            return SftMatrix::validate(m);
        } catch (const Error&) {
        }
    }
}

/// Independent periodic-point count: depth-first enumeration of the symbol
/// cycles x_0 .. x_{len-1} with every transition (including the wrap)
/// admissible. 0-1 matrices only; no matrix powers involved.
inline Int brute_force_periodic_count(const SftMatrix& a, unsigned len) {
    const int n = static_cast<int>(a.size());
    Int count = 0;
    std::vector<int> path;
    auto rec = [&](auto&& self) -> void {
        if (path.size() == len) {
            if (a.edge(path.back(), path.front())) ++count;
            return;
        }
        for (int s = 1; s <= n; ++s) {
            if (!path.empty() && !a.edge(path.back(), s)) continue;
            path.push_back(s);
            self(self);
            path.pop_back();
        }
    };
    rec(rec);
    return count;
}

} // namespace testsup
