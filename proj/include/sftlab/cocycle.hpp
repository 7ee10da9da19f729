#pragma once

#include "bipoint.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "word.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sftlab {

/// All admissible words of the given length (length 0 gives the empty word).
inline std::vector<Word> admissible_words(const SftMatrix& a, unsigned len) {
    std::vector<Word> out;
    Word w;
    auto rec = [&](auto&& self) -> void {
        if (w.size() == len) {
            out.push_back(w);
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

/// Continuous integer function on the shift space in finite-window form:
/// the value at x depends only on the block x_{lo} .. x_{hi}.
class WindowFunction {
public:
    static WindowFunction constant(long v) {
        WindowFunction f;
        f.const_ = v;
        return f;
    }

    static WindowFunction from_table(long lo, long hi, std::map<Word, long> table) {
        require(lo <= hi, "BadWindow", "window must satisfy lo <= hi");
        WindowFunction f;
        f.lo_ = lo;
        f.hi_ = hi;
        f.table_ = std::move(table);
        return f;
    }

    bool is_constant() const { return const_.has_value(); }
    std::optional<long> constant_value() const { return const_; }
    long window_lo() const { return const_ ? 0 : lo_; }
    long window_hi() const { return const_ ? 0 : hi_; }
    const std::map<Word, long>& table() const { return table_; }

    long operator()(const BiPoint& x) const {
        if (const_) return *const_;
        Word key;
        for (long j = lo_; j <= hi_; ++j) key.push_back(x.at(j));
        auto it = table_.find(key);
        require(it != table_.end(), "BlockMissing",
                "window function undefined on block " + word_str(key));
        return it->second;
    }

    long max_abs() const {
        if (const_) return std::labs(*const_);
        long m = 0;
        for (const auto& [k, v] : table_) m = std::max(m, std::labs(v));
        return m;
    }

    /// Totality on every admissible block of the window length.
    void validate_total(const SftMatrix& a) const {
        if (const_) return;
        for (const Word& w : admissible_words(a, static_cast<unsigned>(hi_ - lo_ + 1)))
            require(table_.count(w) > 0, "BlockMissing",
                    "window function undefined on admissible block " + word_str(w));
    }

private:
    std::optional<long> const_;
    long lo_ = 0, hi_ = 0;
    std::map<Word, long> table_;
};

/// f^n(x): the one-cocycle extension of f along forward/backward orbit
/// segments (sum over [0,n) for n > 0, empty for n = 0, negated sum over
/// [n,0) for n < 0).
inline long f_power(const WindowFunction& f, const BiPoint& x, long n) {
    long acc = 0;
    if (n > 0)
        for (long i = 0; i < n; ++i) acc += f(shift(x, i));
    else
        for (long i = n; i < 0; ++i) acc -= f(shift(x, i));
    return acc;
}

/// Shift-commuting map in Curtis-Hedlund-Lyndon form: target symbol at j is
/// table[x_{j+lo} .. x_{j+hi}]. Construction validates totality and that
/// image sequences are admissible for the target matrix.
class SlidingBlockCode {
public:
    static SlidingBlockCode identity(const SftMatrix& a) {
        std::map<Word, Symbol> t;
        for (Symbol s = 1; s <= static_cast<Symbol>(a.size()); ++s) t[{s}] = s;
        return make(a, a, 0, 0, std::move(t));
    }

    static SlidingBlockCode make(const SftMatrix& source, const SftMatrix& target, long lo,
                                 long hi, std::map<Word, Symbol> table) {
        require(lo <= 0 && 0 <= hi, "BadWindow", "code window must contain 0");
        SlidingBlockCode c;
        c.source_ = source;
        c.target_ = target;
        c.lo_ = lo;
        c.hi_ = hi;
        c.table_ = std::move(table);
        unsigned len = static_cast<unsigned>(hi - lo + 1);
        for (const Word& w : admissible_words(source, len)) {
            auto it = c.table_.find(w);
            require(it != c.table_.end(), "BlockMissing",
                    "code table undefined on admissible block " + word_str(w));
            Symbol s = it->second;
            require(s >= 1 && static_cast<std::size_t>(s) <= target.size(), "BadSymbol",
                    "code emits symbol outside the target alphabet");
        }
        // Image admissibility on every overlapping pair of admissible blocks.
        for (const Word& w : admissible_words(source, len + 1)) {
            Word head(w.begin(), w.end() - 1), tail(w.begin() + 1, w.end());
            Symbol a = c.table_.at(head), b = c.table_.at(tail);
            require(target.edge(a, b), "NotAdmissible",
                    "code image breaks target admissibility on block " + word_str(w));
        }
        return c;
    }

    const SftMatrix& source() const { return source_; }
    const SftMatrix& target() const { return target_; }
    long window_lo() const { return lo_; }
    long window_hi() const { return hi_; }
    const std::map<Word, Symbol>& table() const { return table_; }

    Symbol symbol_at(const BiPoint& x, long j) const {
        Word key;
        for (long i = j + lo_; i <= j + hi_; ++i) key.push_back(x.at(i));
        auto it = table_.find(key);
        require(it != table_.end(), "BlockMissing",
                "code undefined on block " + word_str(key));
        return it->second;
    }

    BiPoint operator()(const BiPoint& x) const {
        long a0 = x.core_offset() - hi_;
        long b0 = x.core_offset() + static_cast<long>(x.core().size()) - lo_;
        if (b0 < a0) b0 = a0;
        std::size_t lp = x.left_period().size(), rp = x.right_period().size();
        Word yl(lp), yr(rp), core;
        for (std::size_t k = 0; k < lp; ++k)
            yl[lp - 1 - k] = symbol_at(x, a0 - 1 - static_cast<long>(k));
        for (std::size_t k = 0; k < rp; ++k) yr[k] = symbol_at(x, b0 + static_cast<long>(k));
        for (long j = a0; j < b0; ++j) core.push_back(symbol_at(x, j));
        return BiPoint::make(target_, std::move(yl), std::move(core), std::move(yr), a0);
    }

private:
    SftMatrix source_, target_;
    long lo_ = 0, hi_ = 0;
    std::map<Word, Symbol> table_;
};

/// Integer two-cocycle on the asymptotic relation: zero, a coboundary
/// d(x,z) = sum_{n in Z} (g(sigma^n x) - g(sigma^n z)) of a window function
/// (the sum is finite on asymptotic pairs), or a custom evaluator accepted
/// on a sample-verified basis.
class TwoCocycle {
public:
    enum class Kind { Zero, Coboundary, Custom };

    static TwoCocycle zero() { return TwoCocycle(); }

    static TwoCocycle coboundary(WindowFunction g) {
        TwoCocycle d;
        d.kind_ = Kind::Coboundary;
        d.g_ = std::move(g);
        return d;
    }

    static TwoCocycle custom(std::function<long(const BiPoint&, const BiPoint&)> f) {
        TwoCocycle d;
        d.kind_ = Kind::Custom;
        d.fn_ = std::move(f);
        return d;
    }

    Kind kind() const { return kind_; }
    bool sample_verified_only() const { return kind_ == Kind::Custom; }
    const std::optional<WindowFunction>& potential() const { return g_; }

    long operator()(const BiPoint& x, const BiPoint& z) const {
        switch (kind_) {
        case Kind::Zero:
            return 0;
        case Kind::Custom:
            return fn_(x, z);
        case Kind::Coboundary: {
            auto w = asymptotic_pair(x, z);
            require(w.has_value(), "NotAsymptotic", "two-cocycle evaluated off the asymptotic relation");
            auto [ns, nu] = *w;
            long lo = g_->window_lo(), hi = g_->window_hi();
            long acc = 0;
            // g(sigma^n x) = g(sigma^n z) once the window [n+lo, n+hi] lies
            // inside the agreement region (i >= ns or i <= -nu).
            for (long n = -nu - hi + 1; n <= ns - lo - 1; ++n)
                acc += g_->operator()(shift(x, n)) - g_->operator()(shift(z, n));
            return acc;
        }
        }
        return 0;
    }

private:
    Kind kind_ = Kind::Zero;
    std::optional<WindowFunction> g_;
    std::function<long(const BiPoint&, const BiPoint&)> fn_;
};

} // namespace sftlab
