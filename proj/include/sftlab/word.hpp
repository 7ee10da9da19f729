#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace sftlab {

/// Alphabet symbols are 1-based (symbol `s` indexes matrix row/column s-1).
using Symbol = int;
using Word = std::vector<Symbol>;

inline Word rotate_left(Word w, std::size_t k) {
    if (w.empty()) return w;
    k %= w.size();
    std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    return w;
}

/// Length of the primitive root of w (smallest p with w = u^{|w|/p}, |u| = p).
inline std::size_t primitive_root_length(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = (w[i] == w[i - p]);
        if (ok) return p;
    }
    return n;
}

inline Word primitive_root(const Word& w) {
    return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(primitive_root_length(w)));
}

/// Starting index of the lexicographically least rotation of w.
/// Quadratic, which is plenty for the short words handled here.
inline std::size_t least_rotation_index(const Word& w) {
    const std::size_t n = w.size();
    if (n <= 1) return 0;
    std::size_t best = 0;
    for (std::size_t c = 1; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            Symbol a = w[(c + i) % n], b = w[(best + i) % n];
            if (a != b) {
                if (a < b) best = c;
                break;
            }
        }
    }
    return best;
}

inline Word least_rotation(const Word& w) { return rotate_left(w, least_rotation_index(w)); }

inline Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

inline std::string word_str(const Word& w, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(w[i]);
    }
    return s;
}

} // namespace sftlab
