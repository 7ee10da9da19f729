#pragma once

#include "bipoint.hpp"
#include "cocycle.hpp"
#include "error.hpp"
#include "groupoid.hpp"
#include "matrix.hpp"
#include "orbits.hpp"
#include "word.hpp"
#include "zeta.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sftlab {

/// A topological Markov shift together with the direction its dynamics runs
/// in. The inverse of a shift is presented by the same matrix with the flag
/// set, rather than by literally reversing sequences; step/stable/unstable
/// are the direction-aware primitives everything else goes through.
struct ShiftSystem {
    SftMatrix matrix;
    bool reversed = false;

    BiPoint step(const BiPoint& x, long k) const { return shift(x, reversed ? -k : k); }

    /// Least depth witness for shared forward tails (forward = the system's
    /// own future side).
    std::optional<long> stable_match(const BiPoint& x, const BiPoint& y) const {
        return reversed ? left_tail_match(x, y) : right_tail_match(x, y);
    }
    std::optional<long> unstable_match(const BiPoint& x, const BiPoint& y) const {
        return reversed ? right_tail_match(x, y) : left_tail_match(x, y);
    }
};

/// Direction-aware orbit sum of a window function along the system's steps.
inline long f_power(const WindowFunction& f, const BiPoint& x, long n, const ShiftSystem& sys) {
    long acc = 0;
    if (n > 0)
        for (long i = 0; i < n; ++i) acc += f(sys.step(x, i));
    else
        for (long i = n; i < 0; ++i) acc -= f(sys.step(x, i));
    return acc;
}

/// Candidate orbit-equivalence data: a sliding-block homeomorphism pair,
/// transfer functions c1 (on the source) and c2 (on the target), and
/// two-cocycles d1, d2 on the respective asymptotic pair groupoids.
struct CocycleWitness {
    ShiftSystem source, target;
    SlidingBlockCode h, h_inv;
    WindowFunction c1, c2;
    TwoCocycle d1, d2;
    long depth = 16;
};

/// The conjugacy-shaped witness: h = id, c1 = c2 = 1, d1 = d2 = 0 between
/// the system and itself.
inline CocycleWitness identity_witness(const SftMatrix& a) {
    require(a.zero_one(), "NotZeroOne", "present the system as an edge shift first");
    SlidingBlockCode id = SlidingBlockCode::identity(a);
    return CocycleWitness{ShiftSystem{a, false}, ShiftSystem{a, false}, id,
                          id,                    WindowFunction::constant(1),
                          WindowFunction::constant(1), TwoCocycle::zero(), TwoCocycle::zero()};
}

/// The witness relating a shift to its inverse: h = id on points, target
/// dynamics reversed, c1 = c2 = -1, d1 = d2 = 0.
inline CocycleWitness inverse_witness(const SftMatrix& a) {
    require(a.zero_one(), "NotZeroOne", "present the system as an edge shift first");
    SlidingBlockCode id = SlidingBlockCode::identity(a);
    return CocycleWitness{ShiftSystem{a, false}, ShiftSystem{a, true}, id,
                          id,                    WindowFunction::constant(-1),
                          WindowFunction::constant(-1), TwoCocycle::zero(), TwoCocycle::zero()};
}

/// Default test set: all periodic points of whole periods up to max_period
/// while the budget lasts, then all single-coordinate perturbations of them,
/// round-robin over positions 0, -1, 1, -2, 2, ... Deterministic.
inline std::vector<BiPoint> default_test_points(const SftMatrix& a, unsigned max_period = 4,
                                                std::size_t cap = 1500) {
    std::vector<BiPoint> pts;
    std::set<BiPoint> seen;
    auto push = [&](const BiPoint& x) {
        if (seen.insert(x).second) pts.push_back(x);
        return pts.size() < cap;
    };
    for (unsigned n = 1; n <= max_period; ++n) {
        if (Int(pts.size()) + periodic_count(a, n) > Int(cap)) break;
        for (const Word& w : closed_words(a, n)) push(BiPoint::periodic(a, w));
    }
    std::size_t base = pts.size();
    std::vector<long> positions{0};
    for (long r = 1; r <= static_cast<long>(max_period); ++r) {
        positions.push_back(-r);
        positions.push_back(r);
    }
    for (long pos : positions)
        for (std::size_t i = 0; i < base; ++i) {
            const BiPoint x = pts[i];
            for (Symbol s = 1; s <= static_cast<Symbol>(a.size()); ++s) {
                if (s == x.at(pos)) continue;
                if (!a.edge(x.at(pos - 1), s) || !a.edge(s, x.at(pos + 1))) continue;
                if (!push(BiPoint::perturb(a, x, pos, s))) return pts;
            }
        }
    return pts;
}

/// Default asymptotic pairs: units, base-vs-perturbation, and
/// perturbation-vs-perturbation at nearby coordinates.
inline std::vector<std::pair<BiPoint, BiPoint>> default_test_pairs(
    const SftMatrix& a, const std::vector<BiPoint>& pts, std::size_t cap = 1500) {
    std::vector<std::pair<BiPoint, BiPoint>> pairs;
    auto push = [&](const BiPoint& x, const BiPoint& z) {
        pairs.emplace_back(x, z);
        return pairs.size() < cap;
    };
    for (std::size_t i = 0; i < pts.size() && i < 8; ++i)
        if (!push(pts[i], pts[i])) return pairs;
    for (const BiPoint& x : pts) {
        std::vector<BiPoint> vars;
        for (long pos : {0L, 1L, -1L})
            for (Symbol s = 1; s <= static_cast<Symbol>(a.size()); ++s) {
                if (s == x.at(pos)) continue;
                if (!a.edge(x.at(pos - 1), s) || !a.edge(s, x.at(pos + 1))) continue;
                vars.push_back(BiPoint::perturb(a, x, pos, s));
            }
        for (const BiPoint& z : vars)
            if (!push(x, z)) return pairs;
        for (std::size_t i = 0; i + 1 < vars.size() && i < 2; ++i)
            if (!push(vars[i], vars[i + 1])) return pairs;
    }
    return pairs;
}

enum class ConditionStatus { Pass, Fail, DepthExceeded };

struct ConditionReport {
    std::string name;
    ConditionStatus status = ConditionStatus::Pass;
    std::string counterexample;
};

struct CheckReport {
    std::vector<ConditionReport> conditions;
    std::vector<long> k1_witnesses, k2_witnesses, m1_witnesses, m2_witnesses;
    long k1 = 0, k2 = 0, m1 = 0, m2 = 0; // maxima over the test set
    bool pass = false;

    const ConditionReport& condition(const std::string& name) const {
        for (const ConditionReport& c : conditions)
            if (c.name == name) return c;
        fail("BadCondition", "no condition named " + name);
    }
};

namespace detail {

inline std::string point_str(const BiPoint& x) { return x.to_literal(); }

struct ConditionSink {
    ConditionReport rep;
    explicit ConditionSink(std::string name) { rep.name = std::move(name); }
    void fail_with(const std::string& cex) {
        if (rep.status != ConditionStatus::Fail) {
            rep.status = ConditionStatus::Fail;
            rep.counterexample = cex;
        }
    }
    void depth_exceeded(const std::string& cex) {
        if (rep.status == ConditionStatus::Pass) {
            rep.status = ConditionStatus::DepthExceeded;
            rep.counterexample = cex;
        }
    }
};

} // namespace detail

/// Full verification of the orbit-equivalence conditions (1), (2) and
/// (i)-(viii) on the supplied test set. Pairs for the target side are the
/// h-images of the supplied source pairs. Least depth witnesses for the
/// one-sided conditions are computed exactly from tail matches; a condition
/// whose witness exceeds witness.depth is reported DepthExceeded, distinct
/// from Fail.
inline CheckReport check_acoe(const CocycleWitness& wt, const SftMatrix& a, const SftMatrix& b,
                              const std::vector<BiPoint>& test_points,
                              const std::vector<std::pair<BiPoint, BiPoint>>& test_pairs) {
    require(wt.source.matrix == a && wt.target.matrix == b, "ShapeMismatch",
            "witness systems do not match the given matrices");
    require(wt.h.source() == a && wt.h.target() == b, "ShapeMismatch",
            "h must map the source shift to the target shift");
    require(wt.h_inv.source() == b && wt.h_inv.target() == a, "ShapeMismatch",
            "h_inv must map the target shift to the source shift");
    wt.c1.validate_total(a);
    wt.c2.validate_total(b);
    for (const auto& [x, z] : test_pairs)
        require(asymptotic_pair(x, z).has_value(), "NotAsymptotic",
                "test pairs must be asymptotic pairs of the source shift");
    for (const BiPoint& x : test_points) {
        require(wt.h_inv(wt.h(x)) == x, "NotInverse", "h_inv(h(x)) != x on a test point");
        require(wt.h(wt.h_inv(wt.h(x))) == wt.h(x), "NotInverse", "h(h_inv(y)) != y on a test point");
    }

    const ShiftSystem &sa = wt.source, &sb = wt.target;
    const long range = 4; // exercised exponents for the integer identities

    std::vector<BiPoint> ys;
    for (const BiPoint& x : test_points) ys.push_back(wt.h(x));
    std::vector<std::pair<BiPoint, BiPoint>> bpairs;
    for (const auto& [x, z] : test_pairs) {
        BiPoint y = wt.h(x), w = wt.h(z);
        if (asymptotic_pair(y, w).has_value()) bpairs.emplace_back(std::move(y), std::move(w));
    }

    CheckReport out;

    { // (1) and (2): the transfer functions and pair cocycles interlock
        detail::ConditionSink s1("1"), s2("2");
        for (const auto& [x, z] : test_pairs)
            for (long m = -range; m <= range; ++m) {
                long lhs = f_power(wt.c1, x, m, sa) + wt.d1(sa.step(x, m), sa.step(z, m));
                long rhs = f_power(wt.c1, z, m, sa) + wt.d1(x, z);
                if (lhs != rhs) {
                    s1.fail_with("x = " + detail::point_str(x) + ", z = " + detail::point_str(z) +
                                 ", m = " + std::to_string(m));
                    break;
                }
            }
        for (const auto& [y, w] : bpairs)
            for (long m = -range; m <= range; ++m) {
                long lhs = f_power(wt.c2, y, m, sb) + wt.d2(sb.step(y, m), sb.step(w, m));
                long rhs = f_power(wt.c2, w, m, sb) + wt.d2(y, w);
                if (lhs != rhs) {
                    s2.fail_with("y = " + detail::point_str(y) + ", w = " + detail::point_str(w) +
                                 ", m = " + std::to_string(m));
                    break;
                }
            }
        out.conditions.push_back(s1.rep);
        out.conditions.push_back(s2.rep);
    }

    // One-sided intertwining conditions: the least admissible depth for a
    // point is the larger of the two exact tail-match witnesses.
    auto one_sided = [&](const std::string& name, const ShiftSystem& sys, auto&& lhs_point,
                         auto&& rhs_point, const auto& domain, std::vector<long>& wit,
                         long& wit_max) {
        detail::ConditionSink s(name);
        for (const auto& item : domain) {
            BiPoint y = lhs_point(item), w = rhs_point(item);
            auto st = sys.stable_match(y, w);
            auto un = sys.unstable_match(y, w);
            if (!st || !un) {
                s.fail_with("no finite witness; compared " + detail::point_str(y) + " with " +
                            detail::point_str(w));
                continue;
            }
            long k = std::max(*st, *un);
            wit.push_back(k);
            wit_max = std::max(wit_max, k);
            if (k > wt.depth)
                s.depth_exceeded("least witness " + std::to_string(k) + " exceeds depth " +
                                 std::to_string(wt.depth));
        }
        out.conditions.push_back(s.rep);
    };

    one_sided(
        "i", sb, [&](const BiPoint& x) { return sb.step(wt.h(x), wt.c1(x)); },
        [&](const BiPoint& x) { return wt.h(sa.step(x, 1)); }, test_points, out.k1_witnesses,
        out.k1);
    one_sided(
        "ii", sa, [&](const BiPoint& y) { return sa.step(wt.h_inv(y), wt.c2(y)); },
        [&](const BiPoint& y) { return wt.h_inv(sb.step(y, 1)); }, ys, out.k2_witnesses, out.k2);
    one_sided(
        "iii", sb,
        [&](const std::pair<BiPoint, BiPoint>& p) {
            return sb.step(wt.h(p.first), wt.d1(p.first, p.second));
        },
        [&](const std::pair<BiPoint, BiPoint>& p) { return wt.h(p.second); }, test_pairs,
        out.m1_witnesses, out.m1);
    one_sided(
        "iv", sa,
        [&](const std::pair<BiPoint, BiPoint>& p) {
            return sa.step(wt.h_inv(p.first), wt.d2(p.first, p.second));
        },
        [&](const std::pair<BiPoint, BiPoint>& p) { return wt.h_inv(p.second); }, bpairs,
        out.m2_witnesses, out.m2);

    { // (v), (vi): the transfer functions invert each other through h
        detail::ConditionSink s5("v"), s6("vi");
        for (const BiPoint& x : test_points) {
            BiPoint hx = wt.h(x);
            for (long n = -range; n <= range; ++n) {
                long cn = f_power(wt.c1, x, n, sa);
                BiPoint yb = sb.step(hx, cn), wb = wt.h(sa.step(x, n));
                if (!asymptotic_pair(yb, wb).has_value()) {
                    s5.fail_with("pair leaves the asymptotic relation; x = " +
                                 detail::point_str(x) + ", n = " + std::to_string(n));
                    break;
                }
                if (f_power(wt.c2, hx, cn, sb) + wt.d2(yb, wb) != n) {
                    s5.fail_with("x = " + detail::point_str(x) + ", n = " + std::to_string(n));
                    break;
                }
            }
        }
        for (const BiPoint& y : ys) {
            BiPoint hy = wt.h_inv(y);
            for (long n = -range; n <= range; ++n) {
                long cn = f_power(wt.c2, y, n, sb);
                BiPoint ya = sa.step(hy, cn), wa = wt.h_inv(sb.step(y, n));
                if (!asymptotic_pair(ya, wa).has_value()) {
                    s6.fail_with("pair leaves the asymptotic relation; y = " +
                                 detail::point_str(y) + ", n = " + std::to_string(n));
                    break;
                }
                if (f_power(wt.c1, hy, cn, sa) + wt.d1(ya, wa) != n) {
                    s6.fail_with("y = " + detail::point_str(y) + ", n = " + std::to_string(n));
                    break;
                }
            }
        }
        out.conditions.push_back(s5.rep);
        out.conditions.push_back(s6.rep);
    }

    { // (vii), (viii): the pair cocycles are killed through h
        detail::ConditionSink s7("vii"), s8("viii");
        for (const auto& [x, z] : test_pairs) {
            long dd = wt.d1(x, z);
            BiPoint hx = wt.h(x);
            BiPoint yb = sb.step(hx, dd), wb = wt.h(z);
            if (!asymptotic_pair(yb, wb).has_value()) {
                s7.fail_with("pair leaves the asymptotic relation; x = " + detail::point_str(x) +
                             ", z = " + detail::point_str(z));
                continue;
            }
            if (f_power(wt.c2, hx, dd, sb) + wt.d2(yb, wb) != 0)
                s7.fail_with("x = " + detail::point_str(x) + ", z = " + detail::point_str(z));
        }
        for (const auto& [y, w] : bpairs) {
            long dd = wt.d2(y, w);
            BiPoint hy = wt.h_inv(y);
            BiPoint ya = sa.step(hy, dd), wa = wt.h_inv(w);
            if (!asymptotic_pair(ya, wa).has_value()) {
                s8.fail_with("pair leaves the asymptotic relation; y = " + detail::point_str(y) +
                             ", w = " + detail::point_str(w));
                continue;
            }
            if (f_power(wt.c1, hy, dd, sa) + wt.d1(ya, wa) != 0)
                s8.fail_with("y = " + detail::point_str(y) + ", w = " + detail::point_str(w));
        }
        out.conditions.push_back(s7.rep);
        out.conditions.push_back(s8.rep);
    }

    out.pass = true;
    for (const ConditionReport& c : out.conditions)
        if (c.status != ConditionStatus::Pass) out.pass = false;
    return out;
}

/// Same check on the default test family of the source shift.
inline CheckReport check_acoe(const CocycleWitness& wt, const SftMatrix& a, const SftMatrix& b) {
    std::vector<BiPoint> pts = default_test_points(a);
    return check_acoe(wt, a, b, pts, default_test_pairs(a, pts));
}

/// Degree cocycle of the witness on extension arrows:
/// c_phi(x, n, z) = c1^n(x) + d1(step^n(x), z).
inline long c_phi(const CocycleWitness& wt, const AElement& g) {
    return f_power(wt.c1, g.x, g.n, wt.source) + wt.d1(wt.source.step(g.x, g.n), g.z);
}

/// Image of a periodic point under the orbit transfer: the limit of
/// step_target^{q k}(h(x)) with q = |c1^p(x)| over the least period p —
/// computed exactly as the q-periodic extension of the appropriate tail of
/// h(x), with the claimed periodicity verified on a full lcm window.
inline BiPoint eta_h(const CocycleWitness& wt, const BiPoint& x) {
    long p = static_cast<long>(x.least_period());
    long qs = f_power(wt.c1, x, p, wt.source);
    require(qs != 0, "ZeroAsymptoticPeriod", "c1 sums to zero over the period of " + x.to_literal());
    long q = std::labs(qs);
    BiPoint y = wt.h(x);

    Word w(static_cast<std::size_t>(q));
    if (!wt.target.reversed) {
        long core_end = y.core_offset() + static_cast<long>(y.core().size());
        long r = static_cast<long>(y.right_period().size());
        long window = std::max<long>(std::lcm(q, r), q);
        long m = q * (std::max(core_end, 1L) / q + 1);
        for (long j = 0; j < window; ++j)
            require(y.at(m + j) == y.at(m + j + q), "LimitDiverges",
                    "tail of h(x) is not " + std::to_string(q) + "-periodic");
        for (long j = 0; j < q; ++j) w[static_cast<std::size_t>(j)] = y.at(m + j);
    } else {
        long core_start = y.core_offset();
        long r = static_cast<long>(y.left_period().size());
        long window = std::max<long>(std::lcm(q, r), q);
        long m = q * (std::max(window - core_start, 1L) / q + 1);
        for (long j = 0; j < window; ++j)
            require(y.at(j - m) == y.at(j - m - q), "LimitDiverges",
                    "tail of h(x) is not " + std::to_string(q) + "-periodic");
        for (long j = 0; j < q; ++j) w[static_cast<std::size_t>(j)] = y.at(j - m);
    }
    return BiPoint::periodic(wt.target.matrix, w);
}

/// Orbit-level transfer: each source orbit of length <= max_len is paired
/// with the target orbit of eta_h of its representative.
inline std::vector<std::pair<Orbit, Orbit>> xi_h_orbit_map(const CocycleWitness& wt,
                                                           unsigned max_len) {
    std::vector<std::pair<Orbit, Orbit>> out;
    for (const Orbit& ga : periodic_orbits(wt.source.matrix, max_len)) {
        BiPoint e = eta_h(wt, ga.representative);
        unsigned q = e.least_period();
        Word w;
        for (unsigned j = 0; j < q; ++j) w.push_back(e.at(static_cast<long>(j)));
        Orbit gb{BiPoint::periodic(wt.target.matrix, least_rotation(w)), q};
        out.emplace_back(ga, gb);
    }
    return out;
}

struct ZetaTransferResult {
    bool ok = true;
    std::string side;         // which identity broke: "forward" or "mirror"
    unsigned coefficient = 0; // index of the first differing coefficient
    Rat lhs = 0, rhs = 0;
    explicit operator bool() const { return ok; }
};

/// The orbit-transfer consequence on zeta functions: the c1-weighted zeta
/// series of the source equals the target's zeta series, and mirrored.
inline ZetaTransferResult zeta_transfer_check(const CocycleWitness& wt, const SftMatrix& a,
                                              const SftMatrix& b, unsigned order) {
    require(wt.source.matrix == a && wt.target.matrix == b, "ShapeMismatch",
            "witness systems do not match the given matrices");
    ZetaTransferResult out;
    auto compare = [&](const PowerSeries& l, const PowerSeries& r, const std::string& side) {
        for (unsigned k = 0; k <= order; ++k)
            if (l.c[k] != r.c[k]) {
                out.ok = false;
                out.side = side;
                out.coefficient = k;
                out.lhs = l.c[k];
                out.rhs = r.c[k];
                return false;
            }
        return true;
    };
    if (!compare(weighted_zeta_series(a, wt.c1, order), zeta_series(b, order), "forward"))
        return out;
    compare(weighted_zeta_series(b, wt.c2, order), zeta_series(a, order), "mirror");
    return out;
}

/// Sampled check of the two-cocycle identity d(x,z) + d(z,w) = d(x,w) on
/// composable triples drawn from a pair list sharing middle points.
inline bool two_cocycle_identity_ok(const TwoCocycle& d,
                                    const std::vector<std::pair<BiPoint, BiPoint>>& pairs) {
    for (const auto& [x, z] : pairs)
        for (const auto& [z2, w] : pairs) {
            if (!(z == z2)) continue;
            if (d(x, z) + d(z, w) != d(x, w)) return false;
        }
    return true;
}

} // namespace sftlab
