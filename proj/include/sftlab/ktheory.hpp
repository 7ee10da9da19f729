#pragma once

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "poly.hpp"
#include "snf.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace sftlab {

/// Bowen-Franks group Z^n / (I - A^t) Z^n.
inline FinGenAbGroup bowen_franks(const SftMatrix& a) {
    const IntMat& m = a.mat();
    return cokernel(IntMat::identity(m.rows) - transpose(m));
}

/// Element of the stationary inductive system whose limit carries the
/// asymptotic Ruelle algebra's K_0: an integer matrix tagged with its stage.
struct HAStageElement {
    IntMat t;
    unsigned stage = 1;

    bool operator==(const HAStageElement& o) const {
        return stage == o.stage && t.rows == o.t.rows && t.cols == o.t.cols && t.a == o.t.a;
    }
};

inline void check_stage_shape(const IntMat& t, const SftMatrix& a) {
    require(t.rows == a.size() && t.cols == a.size(), "ShapeMismatch",
            "stage element must be n x n for the n-state matrix");
}

/// Connecting map of the system: T at stage k maps to A T A at stage k+1.
inline HAStageElement ha_iota(const HAStageElement& e, const SftMatrix& a) {
    check_stage_shape(e.t, a);
    return {a.mat() * e.t * a.mat(), e.stage + 1};
}

/// The induced automorphism, written one stage up: T at stage k maps to
/// A^2 T at stage k+1 (so it lands in the same stage as ha_iota(e)).
inline HAStageElement ha_alpha(const HAStageElement& e, const SftMatrix& a) {
    check_stage_shape(e.t, a);
    return {a.mat() * a.mat() * e.t, e.stage + 1};
}

/// For the full N-shift the limit group is identified with a subgroup of Q:
/// [T, k] maps to (sum of entries of T) / N^{2k-2}. Compatible with ha_iota
/// and invariant under ha_alpha.
inline Rat xi_full_shift(const HAStageElement& e, unsigned n) {
    require(n >= 2, "NotFullShift", "full shift needs N >= 2");
    require(e.t.rows == n && e.t.cols == n, "NotFullShift",
            "element shape does not match the full N-shift");
    require(e.stage >= 1, "ShapeMismatch", "stages are numbered from 1");
    Int s = 0;
    for (const Int& v : e.t.a) s += v;
    return Rat(s) / Rat(int_pow(Int(n), 2 * (e.stage - 1)));
}

/// Subgroup Z[1/m] of Q, stored by the set of primes inverted.
struct LocalizedSubgroup {
    std::vector<Int> primes; // sorted, distinct

    static LocalizedSubgroup from_base(Int n) {
        require(n >= 1, "BadBase", "localization base must be positive");
        LocalizedSubgroup g;
        for (Int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                g.primes.push_back(p);
                while (n % p == 0) n /= p;
            }
        if (n > 1) g.primes.push_back(n);
        return g;
    }

    bool contains(const Rat& q) const {
        Int den = boost::multiprecision::denominator(q);
        for (const Int& p : primes)
            while (den % p == 0) den /= p;
        return den == 1;
    }

    std::string str() const {
        if (primes.empty()) return "Z";
        Int m = 1;
        for (const Int& p : primes) m *= p;
        return "Z[1/" + to_string(m) + "]";
    }
};

inline bool localized_equal(const LocalizedSubgroup& a, const LocalizedSubgroup& b) {
    return a.primes == b.primes;
}

/// (K_0, K_1) of the asymptotic Ruelle algebra of the full N-shift:
/// both are Z[1/N].
inline std::pair<LocalizedSubgroup, LocalizedSubgroup> ruelle_k_groups_full_shift(unsigned n) {
    require(n >= 2, "NotFullShift", "full shift needs N >= 2");
    auto g = LocalizedSubgroup::from_base(Int(n));
    return {g, g};
}

/// Subgroup of R generated by the canonical traces of the gauge-fixed part
/// for the full N-shift: again Z[1/N].
inline LocalizedSubgroup trace_value_group_full_shift(unsigned n) {
    require(n >= 2, "NotFullShift", "full shift needs N >= 2");
    return LocalizedSubgroup::from_base(Int(n));
}

struct StagewiseGroup {
    std::vector<std::pair<unsigned, FinGenAbGroup>> stages; // (K, group), K = 2..max_stage
    bool stabilized = false;
};

/// Stage-K approximation to K_0 of the asymptotic Ruelle algebra: the image
/// of stage K-1 inside Z^{n^2} / R_K, where R_K is spanned by the telescoped
/// relations A^m E A^m - A^{m+1} E A^{m-1} (m = 1..K-1, E elementary). The
/// image is Z^{n^2} / L with L the set of c with iota(c) in R_K, computed
/// from the integer kernel of [M_iota | -R_K].
inline StagewiseGroup ruelle_k0_stagewise(const SftMatrix& a, unsigned max_stage) {
    require(max_stage >= 2, "BadStage", "need max_stage >= 2");
    std::size_t n = a.size(), n2 = n * n;
    std::vector<IntMat> pw{IntMat::identity(n)};
    for (unsigned k = 1; k <= max_stage; ++k) pw.push_back(pw.back() * a.mat());

    // vec(A^l E_{ij} A^r) has (p,q) entry (A^l)_{p i} (A^r)_{j q}.
    auto vec_col = [&](unsigned l, unsigned r, std::size_t i, std::size_t j,
                       IntMat& dst, std::size_t col) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                dst.at(p * n + q, col) = pw[l].at(p, i) * pw[r].at(j, q);
    };

    StagewiseGroup out;
    for (unsigned cap = 2; cap <= max_stage; ++cap) {
        std::size_t rel_cols = static_cast<std::size_t>(cap - 1) * n2;
        IntMat big(n2, n2 + rel_cols);
        std::size_t col = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) vec_col(1, 1, i, j, big, col++);
        for (unsigned m = 1; m <= cap - 1; ++m)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    IntMat plus(n2, 1), minus(n2, 1);
                    vec_col(m, m, i, j, plus, 0);
                    vec_col(m + 1, m - 1, i, j, minus, 0);
                    for (std::size_t rix = 0; rix < n2; ++rix)
                        big.at(rix, col) = -(plus.at(rix, 0) - minus.at(rix, 0));
                    ++col;
                }
        auto ker = kernel_basis(big);
        IntMat lat(n2, ker.size());
        for (std::size_t jx = 0; jx < ker.size(); ++jx)
            for (std::size_t ix = 0; ix < n2; ++ix) lat.at(ix, jx) = ker[jx][ix];
        out.stages.emplace_back(cap, cokernel(lat));
    }
    std::size_t m = out.stages.size();
    out.stabilized = m >= 2 && out.stages[m - 1].second == out.stages[m - 2].second;
    return out;
}

/// Perron eigendata of a nonnegative irreducible matrix. When the spectral
/// radius is an integer (the only way it can be rational, the characteristic
/// polynomial being monic over Z), eigenvectors are computed exactly over Q;
/// otherwise double-precision power iteration on A + I is used (A + I is
/// primitive for irreducible A, so the iteration converges).
struct PerronData {
    bool integral = false;
    Int lambda_integer = 0;
    double lambda = 0.0;
    std::vector<Rat> left_exact, right_exact; // populated when integral
    std::vector<double> left, right;          // always populated
};

namespace detail {

inline std::vector<double> power_iterate(const std::vector<double>& m, std::size_t n,
                                         double& lam) {
    std::vector<double> x(n, 1.0), y(n);
    for (int it = 0; it < 200000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * x[j];
            y[i] = s;
        }
        double nrm = 0;
        for (double v : y) nrm = std::max(nrm, std::fabs(v));
        for (std::size_t i = 0; i < n; ++i) y[i] /= nrm;
        double resid = 0;
        for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::fabs(y[i] - x[i]));
        x = y;
        lam = nrm;
        if (resid < 1e-14 && it > 3) break;
    }
    return x;
}

} // namespace detail

inline PerronData perron_data(const IntMat& a) {
    require(a.rows == a.cols, "NonSquare", "Perron data needs a square matrix");
    std::size_t n = a.rows;
    PerronData pd;

    std::vector<double> md(n * n), mtd(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = to_double(Rat(a.at(i, j)));
            md[i * n + j] = v + (i == j ? 1.0 : 0.0);
            mtd[j * n + i] = v + (i == j ? 1.0 : 0.0);
        }
    double lam_r = 0, lam_l = 0;
    pd.right = detail::power_iterate(md, n, lam_r);
    pd.left = detail::power_iterate(mtd, n, lam_l);
    // Rayleigh-quotient refinement: u^T (A+I) v / u^T v beats the iterate's
    // own normalization estimate once the vectors have converged.
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double av = 0;
        for (std::size_t j = 0; j < n; ++j) av += md[i * n + j] * pd.right[j];
        num += pd.left[i] * av;
        den += pd.left[i] * pd.right[i];
    }
    pd.lambda = (den != 0 ? num / den : (lam_r + lam_l) / 2.0) - 1.0;

    IntPoly chi = char_poly(a);
    std::size_t low = 0;
    while (low < chi.size() && chi[low] == 0) ++low; // factor out t^low
    Int c0 = abs_int(chi[low]);
    for (Int d = 1; d * d <= c0 || d <= 1; ++d) {
        if (d == 0 || c0 % d != 0) continue;
        for (const Int& cand : {Int(d), Int(c0 / d)}) {
            IntPoly shifted(chi.begin() + static_cast<long>(low), chi.end());
            if (poly_eval(shifted, cand) == 0 &&
                std::fabs(to_double(Rat(cand)) - pd.lambda) < 1e-6) {
                pd.integral = true;
                pd.lambda_integer = cand;
            }
        }
        if (d * d > c0) break;
    }

    if (pd.integral) {
        pd.lambda = to_double(Rat(pd.lambda_integer));
        IntMat shift_r = a, shift_l = transpose(a);
        for (std::size_t i = 0; i < n; ++i) {
            shift_r.at(i, i) -= pd.lambda_integer;
            shift_l.at(i, i) -= pd.lambda_integer;
        }
        auto kr = kernel_basis(shift_r), kl = kernel_basis(shift_l);
        require(kr.size() == 1 && kl.size() == 1, "InterpolationError",
                "Perron eigenspace of an irreducible matrix must be one-dimensional");
        auto normalize = [&](std::vector<Int> v) {
            bool neg = false;
            for (const Int& e : v)
                if (e != 0) {
                    neg = e < 0;
                    break;
                }
            std::vector<Rat> out;
            for (const Int& e : v) out.push_back(Rat(neg ? -e : e));
            return out;
        };
        pd.right_exact = normalize(kr[0]);
        pd.left_exact = normalize(kl[0]);
        pd.right.assign(n, 0.0);
        pd.left.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            pd.right[i] = to_double(pd.right_exact[i]);
            pd.left[i] = to_double(pd.left_exact[i]);
        }
    }
    return pd;
}

} // namespace sftlab
