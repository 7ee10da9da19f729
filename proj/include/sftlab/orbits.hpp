#pragma once

#include "bipoint.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "word.hpp"

#include <vector>

namespace sftlab {

/// |Per_n| = tr(A^n), exact. Valid for general nonnegative matrices via the
/// edge-shift correspondence.
inline Int periodic_count(const SftMatrix& a, unsigned long n) {
    require(n >= 1, "BadOrder", "periodic_count needs n >= 1");
    return trace(mat_pow(a.mat(), n));
}

/// All admissible words w of length n whose wrap transition w_last -> w_first
/// is also admissible. These are in bijection with Per_n via x_j = w[j mod n].
inline std::vector<Word> closed_words(const SftMatrix& a, unsigned n) {
    require(n >= 1, "BadOrder", "closed_words needs n >= 1");
    require(a.zero_one(), "NotZeroOne", "closed words need a 0-1 matrix (use the edge shift)");
    std::vector<Word> out;
    Word w;
    auto rec = [&](auto&& self) -> void {
        if (w.size() == n) {
            if (a.edge(w.back(), w.front())) out.push_back(w);
            return;
        }
        for (Symbol s = 1; s <= static_cast<Symbol>(a.size()); ++s) {
            if (!w.empty() && !a.edge(w.back(), s)) continue;
            w.push_back(s);
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
    return out;
}

struct Orbit {
    BiPoint representative; // purely periodic, least-rotation period word
    unsigned length;        // least period

    bool operator==(const Orbit& o) const {
        return length == o.length && representative == o.representative;
    }
};

/// All periodic orbits of least period <= max_len, one necklace
/// representative each, ordered by (length, word).
inline std::vector<Orbit> periodic_orbits(const SftMatrix& a, unsigned max_len) {
    require(max_len >= 1, "BadOrder", "periodic_orbits needs max_len >= 1");
    std::vector<Orbit> out;
    for (unsigned n = 1; n <= max_len; ++n)
        for (const Word& w : closed_words(a, n)) {
            if (primitive_root_length(w) != w.size()) continue;
            if (least_rotation_index(w) != 0) continue;
            out.push_back(Orbit{BiPoint::periodic(a, w), n});
        }
    return out;
}

} // namespace sftlab
