#pragma once

#include "cocycle.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "orbits.hpp"
#include "poly.hpp"
#include "series.hpp"

#include <map>
#include <vector>

namespace sftlab {

/// zeta(t) = 1 / det(I - tA), exact.
inline RationalFunction zeta_rational(const SftMatrix& a) {
    return make_rational_function({Int(1)}, det_identity_minus_t(a.mat()));
}

/// Truncation of exp(sum_n tr(A^n)/n t^n) to the given order.
inline PowerSeries zeta_series(const SftMatrix& a, unsigned order) {
    PowerSeries log = PowerSeries::zero(order);
    for (unsigned n = 1; n <= order; ++n) log.c[n] = Rat(periodic_count(a, n)) / Rat(n);
    return series_exp(log);
}

/// prod_orbits (1 - t^{len})^{-1} truncated to the given order; lengths is a
/// multiset of primitive orbit lengths. The enumeration cutoff (how far the
/// orbit list was collected) must reach the requested order for the result
/// to be exact.
inline PowerSeries orbit_product_series(const std::vector<unsigned>& lengths, unsigned order,
                                        unsigned cutoff = 0) {
    if (cutoff == 0) cutoff = order;
    require(cutoff >= order, "CutoffTooSmall",
            "orbit enumeration cutoff below the requested series order");
    PowerSeries acc = PowerSeries::one(order);
    for (unsigned len : lengths) {
        if (len == 0 || len > order) continue;
        PowerSeries fac = PowerSeries::one(order); // 1/(1 - t^len) = sum t^{k len}
        for (unsigned k = len; k <= order; k += len) fac.c[k] = 1;
        acc = series_mul(acc, fac);
    }
    return acc;
}

/// Weighted zeta: exp(sum_n (1/n) sum_{x in Per_n} t^{|c^n(x)|}).
/// Each fixed point of sigma^n contributes t^{|c^n(x)|}; a zero weight on a
/// periodic point is rejected. max_period bounds the periods enumerated; the
/// default (= order) is exact whenever |c^n(x)| >= n on periodic points,
/// which holds for the everywhere-nonzero integer weights used here.
inline PowerSeries weighted_zeta_series(const SftMatrix& a, const WindowFunction& c,
                                        unsigned order, unsigned max_period = 0) {
    if (max_period == 0) max_period = order;
    PowerSeries log = PowerSeries::zero(order);
    if (c.is_constant()) {
        long v = c.max_abs();
        require(v != 0, "ZeroWeightPeriodicPoint", "weight vanishes on a periodic point");
        for (unsigned n = 1; n <= max_period; ++n) {
            Int cnt = periodic_count(a, n);
            if (cnt == 0) continue;
            unsigned long deg = static_cast<unsigned long>(v) * n;
            if (deg <= order) log.c[static_cast<unsigned>(deg)] += Rat(cnt) / Rat(n);
        }
        return series_exp(log);
    }
    require(a.zero_one(), "NotZeroOne",
            "weighted zeta enumerates points; present the system as an edge shift first");
    for (unsigned n = 1; n <= max_period; ++n) {
        for (const Word& w : closed_words(a, n)) {
            BiPoint x = BiPoint::periodic(a, w);
            long s = f_power(c, x, static_cast<long>(n));
            require(s != 0, "ZeroWeightPeriodicPoint",
                    "weight vanishes on the periodic point of " + word_str(w));
            unsigned long deg = static_cast<unsigned long>(std::labs(s));
            if (deg <= order) log.c[static_cast<unsigned>(deg)] += Rat(1) / Rat(n);
        }
    }
    return series_exp(log);
}

} // namespace sftlab
