#pragma once

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "word.hpp"

#include <compare>
#include <cstdlib>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

namespace sftlab {

/// Eventually periodic bi-infinite point of a shift space:
///
///     ... L L L | core | R R R ...
///
/// `left` repeats leftward and is anchored so its last symbol sits at
/// coordinate off-1; `core` occupies [off, off+|core|); `right` repeats
/// rightward from off+|core|. Values are canonicalized on construction:
/// periods primitive, core maximally absorbed into the tails, the junction
/// of a core-free point slid right as far as it goes, and purely periodic
/// points stored as the least rotation with off in [0, period).
/// Admissibility is checked in the factory functions and preserved by
/// every operation, so the point itself carries no matrix.
class BiPoint {
public:
    /// Validating factory. `left`/`right` must be nonempty cyclically
    /// admissible words and every junction transition must be admissible.
    static BiPoint make(const SftMatrix& a, Word left, Word core, Word right, long off) {
        require(!left.empty() && !right.empty(), "EmptyPeriod", "periodic tails must be nonempty");
        require(a.cycle_admissible(left), "NotAdmissible", "left period not cyclically admissible");
        require(a.cycle_admissible(right), "NotAdmissible", "right period not cyclically admissible");
        require(a.word_admissible(core), "NotAdmissible", "core not admissible");
        Symbol before = left.back();
        Symbol first_after = core.empty() ? right.front() : core.front();
        require(a.edge(before, first_after), "NotAdmissible", "left junction not admissible");
        if (!core.empty())
            require(a.edge(core.back(), right.front()), "NotAdmissible", "right junction not admissible");
        BiPoint p(std::move(left), std::move(core), std::move(right), off);
        p.canonicalize();
        return p;
    }

    /// The purely periodic point x with x_j = w[j mod |w|].
    static BiPoint periodic(const SftMatrix& a, const Word& w) {
        require(!w.empty(), "EmptyPeriod", "periodic word must be nonempty");
        require(a.cycle_admissible(w), "NotAdmissible", "word not cyclically admissible");
        Word p = primitive_root(w);
        BiPoint x(p, Word{}, p, 0);
        x.canonicalize();
        return x;
    }

    /// Copy of x with coordinate `pos` replaced by `s` (validated against a).
    static BiPoint perturb(const SftMatrix& a, const BiPoint& x, long pos, Symbol s) {
        require(a.edge(x.at(pos - 1), s) && a.edge(s, x.at(pos + 1)), "NotAdmissible",
                "perturbed coordinate breaks admissibility");
        long lo = std::min(x.off_, pos);
        long hi = std::max(x.off_ + static_cast<long>(x.core_.size()), pos + 1);
        Word core;
        for (long j = lo; j < hi; ++j) core.push_back(j == pos ? s : x.at(j));
        BiPoint p(x.left_anchored_at(lo), std::move(core), x.right_anchored_at(hi), lo);
        p.canonicalize();
        return p;
    }

    /// Coordinate x_j for any j in Z.
    Symbol at(long j) const {
        long end = off_ + static_cast<long>(core_.size());
        if (j >= end) return right_[static_cast<std::size_t>(positive_mod(j - end, static_cast<long>(right_.size())))];
        if (j >= off_) return core_[static_cast<std::size_t>(j - off_)];
        std::size_t p = left_.size();
        long k = positive_mod(off_ - 1 - j, static_cast<long>(p));
        return left_[p - 1 - static_cast<std::size_t>(k)];
    }

    const Word& left_period() const { return left_; }
    const Word& core() const { return core_; }
    const Word& right_period() const { return right_; }
    long core_offset() const { return off_; }

    bool purely_periodic() const { return core_.empty() && left_ == right_; }

    /// Least period; only meaningful for purely periodic points.
    unsigned least_period() const {
        require(purely_periodic(), "NotPeriodic", "least_period of a non-periodic point");
        return static_cast<unsigned>(right_.size());
    }

    bool operator==(const BiPoint& o) const {
        return off_ == o.off_ && core_ == o.core_ && left_ == o.left_ && right_ == o.right_;
    }

    /// Arbitrary but stable total order so points can key ordered containers.
    auto tie() const { return std::tie(off_, core_, left_, right_); }
    bool operator<(const BiPoint& o) const { return tie() < o.tie(); }

    std::string to_literal() const {
        auto side = [](const Word& w) {
            if (w.size() == 1) return std::to_string(w[0]);
            return "(" + word_str(w) + ")";
        };
        return side(left_) + "^inf.(" + word_str(core_) + ")." + side(right_) + "^inf@" +
               std::to_string(off_);
    }

    friend BiPoint shift(const BiPoint& p, long k) {
        BiPoint q = p;
        q.off_ -= k;
        q.canonicalize();
        return q;
    }

    /// [x,y]: x's past, y's future. Defined iff x_0 = y_0.
    friend BiPoint bracket(const BiPoint& x, const BiPoint& y) {
        require(x.at(0) == y.at(0), "BracketUndefined", "bracket needs x_0 = y_0");
        long a = std::min(x.off_, 0L);
        long b = std::max(y.off_ + static_cast<long>(y.core_.size()), 1L);
        Word core;
        for (long j = a; j <= 0; ++j) core.push_back(x.at(j));
        for (long j = 1; j < b; ++j) core.push_back(y.at(j));
        BiPoint z(x.left_anchored_at(a), std::move(core), y.right_anchored_at(b), a);
        z.canonicalize();
        return z;
    }

    /// Least n >= 0 with x_i = y_i for all i >= n, if the right tails ever
    /// merge; decides the stable relation with its exact depth witness.
    friend std::optional<long> right_tail_match(const BiPoint& x, const BiPoint& y) {
        long m0 = std::max({x.off_ + static_cast<long>(x.core_.size()),
                            y.off_ + static_cast<long>(y.core_.size()), 0L});
        long period = static_cast<long>(std::lcm(x.right_.size(), y.right_.size()));
        for (long j = m0; j < m0 + period; ++j)
            if (x.at(j) != y.at(j)) return std::nullopt;
        long n = m0;
        while (n > 0 && x.at(n - 1) == y.at(n - 1)) --n;
        return n;
    }

    /// Least n >= 0 with x_i = y_i for all i <= -n (unstable mirror).
    friend std::optional<long> left_tail_match(const BiPoint& x, const BiPoint& y) {
        long s0 = std::min({x.off_ - 1, y.off_ - 1, 0L});
        long period = static_cast<long>(std::lcm(x.left_.size(), y.left_.size()));
        for (long j = s0; j > s0 - period; --j)
            if (x.at(j) != y.at(j)) return std::nullopt;
        long m = s0;
        while (m < 0 && x.at(m + 1) == y.at(m + 1)) ++m;
        return -m;
    }

    friend std::optional<std::pair<long, long>> asymptotic_pair(const BiPoint& x, const BiPoint& y) {
        auto ns = right_tail_match(x, y);
        if (!ns) return std::nullopt;
        auto nu = left_tail_match(x, y);
        if (!nu) return std::nullopt;
        return std::make_pair(*ns, *nu);
    }

private:
    BiPoint(Word l, Word c, Word r, long off)
        : left_(std::move(l)), core_(std::move(c)), right_(std::move(r)), off_(off) {}

    /// Rotation of the left period anchored to end at position t-1.
    Word left_anchored_at(long t) const {
        std::size_t p = left_.size();
        Word w(p);
        for (std::size_t k = 0; k < p; ++k) w[p - 1 - k] = at(t - 1 - static_cast<long>(k));
        return w;
    }

    /// Rotation of the right period anchored to start at position t.
    Word right_anchored_at(long t) const {
        std::size_t p = right_.size();
        Word w(p);
        for (std::size_t k = 0; k < p; ++k) w[k] = at(t + static_cast<long>(k));
        return w;
    }

    void canonicalize() {
        left_ = primitive_root(left_);
        right_ = primitive_root(right_);
        for (;;) {
            bool changed = false;
            while (!core_.empty() && core_.back() == right_.back()) {
                core_.pop_back();
                std::rotate(right_.begin(), right_.end() - 1, right_.end());
                changed = true;
            }
            while (!core_.empty() && core_.front() == left_.front()) {
                core_.erase(core_.begin());
                left_ = rotate_left(left_, 1);
                ++off_;
                changed = true;
            }
            if (!changed) break;
        }
        if (!core_.empty()) return;
        if (left_ == right_) {
            std::size_t s = least_rotation_index(right_);
            long p = static_cast<long>(right_.size());
            right_ = rotate_left(right_, s);
            left_ = right_;
            off_ = positive_mod(off_ + static_cast<long>(s), p);
            return;
        }
        // Mixed core-free point: slide the junction right to its maximum.
        // Termination: a slide surviving lcm(|L|,|R|) steps would make the
        // point purely periodic, excluded above.
        std::size_t guard = std::lcm(left_.size(), right_.size()) + 1;
        while (left_.front() == right_.front()) {
            left_ = rotate_left(left_, 1);
            right_ = rotate_left(right_, 1);
            ++off_;
            if (--guard == 0) throw std::logic_error("junction slide failed to terminate");
        }
    }

    Word left_;
    Word core_;
    Word right_;
    long off_ = 0;
};

/// Exact shift-space metric: 0 if equal, 1 if x_0 != y_0, else
/// lambda0^{k+1} with k the largest radius of central agreement.
struct SftSpace {
    SftMatrix matrix;
    Rat epsilon0 = 1;
    Rat lambda0 = Rat(1, 2);
};

inline Rat metric(const BiPoint& x, const BiPoint& y, const SftSpace& space) {
    require(space.lambda0 > 0 && space.lambda0 < 1, "BadLambda", "lambda0 must lie in (0,1)");
    if (x == y) return Rat(0);
    if (x.at(0) != y.at(0)) return Rat(1);
    long bound = std::llabs(x.core_offset()) + std::llabs(y.core_offset()) +
                 static_cast<long>(x.core().size() + y.core().size()) +
                 static_cast<long>(std::lcm(x.right_period().size(), y.right_period().size())) +
                 static_cast<long>(std::lcm(x.left_period().size(), y.left_period().size())) + 2;
    for (long n = 1; n <= bound; ++n)
        if (x.at(n) != y.at(n) || x.at(-n) != y.at(-n)) {
            // agreement radius k = n-1; distance lambda0^{k+1} = lambda0^n
            Rat d = 1;
            for (long i = 0; i < n; ++i) d *= space.lambda0;
            return d;
        }
    throw std::logic_error("distinct points with no central disagreement");
}

} // namespace sftlab
