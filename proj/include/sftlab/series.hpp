#pragma once

#include "error.hpp"
#include "numeric.hpp"
#include "poly.hpp"

#include <cstddef>
#include <vector>

namespace sftlab {

/// Truncated formal power series with exact rational coefficients c_0..c_order.
struct PowerSeries {
    std::vector<Rat> c; // size order+1

    unsigned order() const { return static_cast<unsigned>(c.size()) - 1; }
    static PowerSeries zero(unsigned order) { return PowerSeries{std::vector<Rat>(order + 1, Rat(0))}; }
    static PowerSeries one(unsigned order) {
        PowerSeries s = zero(order);
        s.c[0] = 1;
        return s;
    }

    bool operator==(const PowerSeries& o) const { return c == o.c; }
};

inline PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
    require(a.c.size() == b.c.size(), "OrderMismatch", "series order mismatch");
    PowerSeries r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    require(a.c.size() == b.c.size(), "OrderMismatch", "series order mismatch");
    PowerSeries r = PowerSeries::zero(a.order());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; i + j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

/// exp(f) for f with zero constant term, via the logarithmic-derivative
/// recurrence n g_n = sum_{k=1..n} k f_k g_{n-k}.
inline PowerSeries series_exp(const PowerSeries& f) {
    require(f.c[0] == 0, "BadConstantTerm", "series_exp needs zero constant term");
    PowerSeries g = PowerSeries::zero(f.order());
    g.c[0] = 1;
    for (std::size_t n = 1; n < g.c.size(); ++n) {
        Rat acc = 0;
        for (std::size_t k = 1; k <= n; ++k) acc += Rat(k) * f.c[k] * g.c[n - k];
        g.c[n] = acc / Rat(n);
    }
    return g;
}

/// 1/f for f with unit constant term.
inline PowerSeries series_inverse(const PowerSeries& f) {
    require(f.c[0] != 0, "BadConstantTerm", "series_inverse needs invertible constant term");
    PowerSeries g = PowerSeries::zero(f.order());
    g.c[0] = Rat(1) / f.c[0];
    for (std::size_t n = 1; n < g.c.size(); ++n) {
        Rat acc = 0;
        for (std::size_t k = 1; k <= n; ++k) acc += f.c[k] * g.c[n - k];
        g.c[n] = -acc / f.c[0];
    }
    return g;
}

inline PowerSeries series_of_poly(const IntPoly& p, unsigned order) {
    PowerSeries s = PowerSeries::zero(order);
    for (std::size_t i = 0; i < p.size() && i <= order; ++i) s.c[i] = Rat(p[i]);
    return s;
}

/// Taylor expansion of a rational function to the given order.
inline PowerSeries series_of_rational(const RationalFunction& rf, unsigned order) {
    return series_mul(series_of_poly(rf.num, order), series_inverse(series_of_poly(rf.den, order)));
}

} // namespace sftlab
