#pragma once

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sftlab {

/// Dense integer polynomial, coeffs[i] = coefficient of t^i.
using IntPoly = std::vector<Int>;

inline IntPoly poly_trim(IntPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline long poly_degree(const IntPoly& p) {
    for (std::size_t i = p.size(); i > 0; --i)
        if (p[i - 1] != 0) return static_cast<long>(i - 1);
    return -1;
}

inline Int poly_eval(const IntPoly& p, const Int& t) {
    Int r = 0;
    for (std::size_t i = p.size(); i > 0; --i) r = r * t + p[i - 1];
    return r;
}

inline Rat poly_eval(const IntPoly& p, const Rat& t) {
    Rat r = 0;
    for (std::size_t i = p.size(); i > 0; --i) r = r * t + Rat(p[i - 1]);
    return r;
}

inline double poly_eval_d(const IntPoly& p, double t) {
    double r = 0;
    for (std::size_t i = p.size(); i > 0; --i) r = r * t + to_double(p[i - 1]);
    return r;
}

inline IntPoly poly_derivative(const IntPoly& p) {
    IntPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Int(i) * p[i]);
    return poly_trim(d);
}

inline std::string poly_str(const IntPoly& p) {
    if (poly_degree(p) < 0) return "0";
    std::string s;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        Int c = p[i];
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += (c < 0) ? " - " : " + ";
        }
        Int ac = abs_int(c);
        if (ac != 1 || i == 0) s += ac.str();
        if (i >= 1) s += (ac != 1) ? "*t" : "t";
        if (i >= 2) s += "^" + std::to_string(i);
        first = false;
    }
    return s;
}

/// Exact characteristic polynomial det(tI - A), monic, via evaluation of
/// det(sI - A) at s = 0..n (Bareiss) and Lagrange interpolation.
inline IntPoly char_poly(const IntMat& a) {
    require(a.rows == a.cols, "NonSquare", "characteristic polynomial of non-square matrix");
    const std::size_t n = a.rows;
    std::vector<Int> vals(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        IntMat m = a;
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Int(s) - a.at(i, i);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) m.at(i, j) = -a.at(i, j);
        vals[s] = det(m);
    }
    // Lagrange interpolation at the integer nodes 0..n; coefficients are
    // integers because the target polynomial is.
    std::vector<Rat> coeff(n + 1, Rat(0));
    for (std::size_t s = 0; s <= n; ++s) {
        std::vector<Rat> basis{Rat(1)}; // product of (t - r) over r != s
        Int denom = 1;
        for (std::size_t r = 0; r <= n; ++r) {
            if (r == s) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i] += basis[i] * Rat(-static_cast<long>(r));
                next[i + 1] += basis[i];
            }
            basis = std::move(next);
            denom *= Int(s) - Int(r);
        }
        Rat w = Rat(vals[s]) / Rat(denom);
        for (std::size_t i = 0; i < basis.size(); ++i) coeff[i] += basis[i] * w;
    }
    IntPoly out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        require(boost::multiprecision::denominator(coeff[i]) == 1, "InterpolationError",
                "characteristic polynomial coefficient not integral");
        out[i] = boost::multiprecision::numerator(coeff[i]);
    }
    return poly_trim(out);
}

/// det(I - tA) as an integer polynomial: the reversed characteristic
/// polynomial, det(I - tA) = t^n chi(1/t).
inline IntPoly det_identity_minus_t(const IntMat& a) {
    IntPoly chi = char_poly(a);
    const std::size_t n = a.rows;
    IntPoly p(n + 1, Int(0));
    for (std::size_t k = 0; k < chi.size(); ++k) p[n - k] = chi[k];
    return poly_trim(p);
}

struct RationalFunction {
    IntPoly num;
    IntPoly den; // den[0] = 1 after normalization

    bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }
};

/// gcd-reduce num/den over Q and normalize den(0) = 1.
inline RationalFunction make_rational_function(IntPoly num, IntPoly den) {
    num = poly_trim(std::move(num));
    den = poly_trim(std::move(den));
    require(poly_degree(den) >= 0, "ZeroDenominator", "rational function with zero denominator");
    // Euclidean gcd over Q on rational copies.
    auto to_rat = [](const IntPoly& p) {
        std::vector<Rat> r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = Rat(p[i]);
        return r;
    };
    auto rtrim = [](std::vector<Rat> p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        return p;
    };
    auto rmod = [&](std::vector<Rat> a, const std::vector<Rat>& b) {
        while (a.size() >= b.size() && !a.empty()) {
            Rat q = a.back() / b.back();
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
            a = rtrim(std::move(a));
            if (a.empty()) break;
        }
        return a;
    };
    std::vector<Rat> x = rtrim(to_rat(num)), y = rtrim(to_rat(den));
    while (!y.empty()) {
        auto r = rmod(x, y);
        x = y;
        y = r;
    }
    // x is a gcd over Q; divide both by it when nontrivial.
    if (!x.empty() && x.size() > 1) {
        auto rdiv = [&](std::vector<Rat> a, const std::vector<Rat>& b) {
            std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
            while (a.size() >= b.size() && !a.empty()) {
                Rat c = a.back() / b.back();
                std::size_t off = a.size() - b.size();
                q[off] = c;
                for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
                a = rtrim(std::move(a));
            }
            return q;
        };
        std::vector<Rat> qn = rdiv(to_rat(num), x), qd = rdiv(to_rat(den), x);
        // Clear denominators back to integer polynomials.
        auto to_int = [](const std::vector<Rat>& p) {
            Int l = 1;
            for (const Rat& c : p) l = lcm_int(l, boost::multiprecision::denominator(c));
            IntPoly r(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
                Rat v = p[i] * Rat(l);
                r[i] = boost::multiprecision::numerator(v);
            }
            return r;
        };
        num = poly_trim(to_int(qn));
        den = poly_trim(to_int(qd));
    }
    // Normalize constant term of den to 1 when possible (always for zeta).
    require(!den.empty(), "ZeroDenominator", "rational function with zero denominator");
    if (den[0] != 0) {
        // divide out a common integer content first
        Int g = 0;
        for (const Int& c : num) g = gcd_int(g, c);
        for (const Int& c : den) g = gcd_int(g, c);
        if (g > 1) {
            for (Int& c : num) c /= g;
            for (Int& c : den) c /= g;
        }
        if (den[0] < 0) {
            for (Int& c : num) c = -c;
            for (Int& c : den) c = -c;
        }
        require(den[0] == 1, "NotNormalizable", "denominator constant term is not a unit");
    }
    return RationalFunction{std::move(num), std::move(den)};
}

} // namespace sftlab
