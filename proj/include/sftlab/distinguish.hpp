#pragma once

#include "error.hpp"
#include "ktheory.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "snf.hpp"
#include "zeta.hpp"

#include <optional>
#include <string>

namespace sftlab {

enum class DistinguishReason { ZetaMismatchNotApplicable, TracePrimes, PerronIntegrality, BowenFranks };

inline const char* reason_str(DistinguishReason r) {
    switch (r) {
        case DistinguishReason::ZetaMismatchNotApplicable: return "zeta-mismatch-not-applicable";
        case DistinguishReason::TracePrimes: return "trace-primes";
        case DistinguishReason::PerronIntegrality: return "perron-integrality";
        case DistinguishReason::BowenFranks: return "bowen-franks";
    }
    return "?";
}

/// Everything the battery measured about one system, reported whether or
/// not it ended up deciding anything.
struct SystemEvidence {
    RationalFunction zeta;
    FinGenAbGroup bowen_franks_group;
    PerronData perron;
    std::optional<unsigned> full_shift;           // N when the matrix is a full shift
    std::optional<LocalizedSubgroup> trace_group; // known exactly only for full shifts
};

struct Verdict {
    bool distinguished = false;
    std::optional<DistinguishReason> reason;
    SystemEvidence a, b;
    std::string note;
    explicit operator bool() const { return distinguished; }
};

inline SystemEvidence gather_evidence(const SftMatrix& m) {
    SystemEvidence e;
    e.zeta = zeta_rational(m);
    e.bowen_franks_group = bowen_franks(m);
    e.perron = perron_data(m.mat());
    e.full_shift = full_shift_size(m.mat());
    if (e.full_shift) e.trace_group = trace_value_group_full_shift(*e.full_shift);
    return e;
}

/// Invariant battery for telling two systems apart up to asymptotic
/// continuous orbit equivalence. Deliberately conservative: zeta functions
/// and Bowen-Franks groups are measured and reported but never used to
/// distinguish (a shift and its transpose share neither obstruction yet are
/// equivalent), so the only certificates issued are the trace-value
/// subgroup of the reduced group for full shifts and its integrality
/// consequence against a non-integral Perron value.
inline Verdict distinguish(const SftMatrix& a, const SftMatrix& b) {
    Verdict v;
    v.a = gather_evidence(a);
    v.b = gather_evidence(b);

    if (v.a.full_shift && v.b.full_shift) {
        if (!localized_equal(*v.a.trace_group, *v.b.trace_group)) {
            v.distinguished = true;
            v.reason = DistinguishReason::TracePrimes;
            v.note = "trace-value subgroups " + v.a.trace_group->str() + " and " +
                     v.b.trace_group->str() + " differ";
            return v;
        }
        v.note = "both full shifts with equal trace-value subgroups";
        return v;
    }

    auto one_sided = [&](const SystemEvidence& full, const SystemEvidence& other) -> bool {
        return full.full_shift && !other.perron.integral;
    };
    if (one_sided(v.a, v.b) || one_sided(v.b, v.a)) {
        v.distinguished = true;
        v.reason = DistinguishReason::PerronIntegrality;
        const SystemEvidence& other = v.a.full_shift ? v.b : v.a;
        v.note = "a full shift has integer trace values, but the other system's Perron value " +
                 std::to_string(other.perron.lambda) + " is not an integer";
        return v;
    }

    v.note = "no invariant in the battery separates the systems";
    return v;
}

} // namespace sftlab
