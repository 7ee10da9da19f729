#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>

namespace sftlab {

/// Arbitrary-precision integer. Everything countable in the library
/// (traces, periodic point counts, series coefficients, SNF entries)
/// goes through this type; no silent overflow anywhere.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, always kept in lowest terms by the backend.
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Rat rat(const Int& num, const Int& den = 1) { return Rat(num, den); }

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& v) {
    if (boost::multiprecision::denominator(v) == 1)
        return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

inline double to_double(const Rat& v) { return v.template convert_to<double>(); }
inline double to_double(const Int& v) { return v.template convert_to<double>(); }

/// Floor division (rounds toward negative infinity). The remainder a - q*b
/// then has the sign of b and magnitude below |b|.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

/// Nearest-integer division; exact ties keep the floor quotient. The
/// remainder a - q*b has magnitude at most |b|/2, which is what keeps the
/// Smith normal form pivots shrinking.
inline Int round_div(const Int& a, const Int& b) {
    Int q = floor_div(a, b);
    Int r = a - q * b; // same sign as b, |r| < |b|
    if (2 * abs_int(r) > abs_int(b)) ++q; // moves the remainder to r - b
    return q;
}

inline long positive_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace sftlab
