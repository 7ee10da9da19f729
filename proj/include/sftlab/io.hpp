#pragma once

#include "acoe.hpp"
#include "bipoint.hpp"
#include "ck.hpp"
#include "cocycle.hpp"
#include "distinguish.hpp"
#include "error.hpp"
#include "groupoid.hpp"
#include "ktheory.hpp"
#include "matrix.hpp"
#include "orbits.hpp"
#include "poly.hpp"
#include "series.hpp"
#include "snf.hpp"
#include "zeta.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace sftlab {

/// Ordered so emitted documents have a stable field order.
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- numbers

inline Json int_json(const Int& v) { return to_string(v); }

inline Json rat_json(const Rat& v) {
    return Json{{"num", boost::multiprecision::numerator(v).str()},
                {"den", boost::multiprecision::denominator(v).str()}};
}

// ------------------------------------------------------------------ words

inline Json word_json(const Word& w) {
    Json j = Json::array();
    for (Symbol s : w) j.push_back(s);
    return j;
}

inline Word word_from_json(const Json& j) {
    require(j.is_array(), "BadFormat", "word must be a JSON array of symbols");
    Word w;
    for (const Json& s : j) w.push_back(s.get<Symbol>());
    return w;
}

/// Space-separated symbols, e.g. "1 2 1".
inline Word parse_word(const std::string& s) {
    Word w;
    std::istringstream in(s);
    long v;
    while (in >> v) {
        require(v >= 1, "BadSymbol", "symbols are positive integers");
        w.push_back(static_cast<Symbol>(v));
    }
    return w;
}

/// "p/q" or "p" with nonzero q.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    require(den != 0, "ZeroDenominator", "rational with zero denominator");
    return Rat(num, den);
}

// --------------------------------------------------------------- matrices

inline IntMat matrix_from_json(const Json& j) {
    const Json& rows = j.is_array() ? j : j.at("rows");
    require(rows.is_array() && !rows.empty(), "BadFormat", "matrix rows must be a nonempty array");
    std::size_t n = rows.size(), m = rows.front().size();
    IntMat out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        require(rows[i].size() == m, "BadFormat", "matrix rows have unequal lengths");
        for (std::size_t k = 0; k < m; ++k) out.at(i, k) = Int(rows[i][k].get<long long>());
    }
    if (j.is_object() && j.contains("n"))
        require(j.at("n").get<std::size_t>() == n, "BadFormat", "matrix 'n' disagrees with rows");
    return out;
}

/// Plain text form: one row per line, entries whitespace separated.
inline IntMat parse_matrix_text(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<Int> row;
        long long v;
        while (ls >> v) row.emplace_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    require(!rows.empty(), "BadFormat", "empty matrix text");
    IntMat out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == rows.front().size(), "BadFormat",
                "matrix rows have unequal lengths");
        for (std::size_t k = 0; k < rows[i].size(); ++k) out.at(i, k) = rows[i][k];
    }
    return out;
}

inline IntMat parse_matrix(const std::string& src) {
    std::size_t i = 0;
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    if (i < src.size() && (src[i] == '{' || src[i] == '['))
        return matrix_from_json(Json::parse(src));
    return parse_matrix_text(src);
}

/// A matrix argument is a file path when such a file exists, otherwise the
/// argument text itself.
inline IntMat load_matrix_arg(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_matrix(buf.str());
    }
    return parse_matrix(arg);
}

/// Accepts the matrix either fully validated or in the weaker nonnegative
/// mode (edge-shift presentations cover the difference downstream).
inline SftMatrix load_system_arg(const std::string& arg) {
    IntMat m = load_matrix_arg(arg);
    try {
        return SftMatrix::validate(m);
    } catch (const Error&) {
        return SftMatrix::validate(m, MatrixMode::NonNegative);
    }
}

inline Json matrix_json(const IntMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols; ++k)
            row.push_back(m.at(i, k).template convert_to<long long>());
        rows.push_back(std::move(row));
    }
    return Json{{"n", m.rows}, {"rows", std::move(rows)}};
}

// ----------------------------------------------------------------- points

inline Json point_json(const BiPoint& x) {
    return Json{{"left_period", word_json(x.left_period())},
                {"core", word_json(x.core())},
                {"right_period", word_json(x.right_period())},
                {"core_offset", x.core_offset()},
                {"literal", x.to_literal()}};
}

/// Parses the "1^inf.(2 1).1^inf@0" literal syntax (periods may be
/// parenthesized words, @offset optional).
inline BiPoint parse_point(const SftMatrix& a, const std::string& lit) {
    std::size_t i = 0;
    auto ws = [&] {
        while (i < lit.size() && std::isspace(static_cast<unsigned char>(lit[i]))) ++i;
    };
    auto number = [&]() -> long {
        ws();
        std::size_t j = i;
        if (j < lit.size() && (lit[j] == '-' || lit[j] == '+')) ++j;
        std::size_t k = j;
        while (k < lit.size() && std::isdigit(static_cast<unsigned char>(lit[k]))) ++k;
        require(k > j, "BadLiteral", "expected an integer in point literal");
        long v = std::stol(lit.substr(i, k - i));
        i = k;
        return v;
    };
    auto expect = [&](const std::string& s) {
        ws();
        require(lit.compare(i, s.size(), s) == 0, "BadLiteral",
                "expected '" + s + "' in point literal");
        i += s.size();
    };
    auto group = [&]() -> Word {
        Word w;
        ws();
        require(i < lit.size() && lit[i] == '(', "BadLiteral", "expected '(' in point literal");
        ++i;
        ws();
        while (i < lit.size() && lit[i] != ')') {
            w.push_back(static_cast<Symbol>(number()));
            ws();
        }
        require(i < lit.size(), "BadLiteral", "unterminated '(' in point literal");
        ++i;
        return w;
    };
    auto side = [&]() -> Word {
        ws();
        if (i < lit.size() && lit[i] == '(') return group();
        return Word{static_cast<Symbol>(number())};
    };

    Word left = side();
    expect("^inf");
    expect(".");
    Word core = group();
    expect(".");
    Word right = side();
    expect("^inf");
    long off = 0;
    ws();
    if (i < lit.size() && lit[i] == '@') {
        ++i;
        off = number();
    }
    ws();
    require(i == lit.size(), "BadLiteral", "trailing characters in point literal");
    return BiPoint::make(a, std::move(left), std::move(core), std::move(right), off);
}

// ------------------------------------------------- cocycle data / witness

inline Json window_function_json(const WindowFunction& f) {
    if (f.is_constant()) return Json{{"constant", *f.constant_value()}};
    Json table = Json::object();
    for (const auto& [w, v] : f.table()) table[word_str(w)] = v;
    return Json{{"window", Json::array({f.window_lo(), f.window_hi()})},
                {"table", std::move(table)}};
}

inline WindowFunction window_function_from_json(const Json& j) {
    if (j.is_number_integer()) return WindowFunction::constant(j.get<long>());
    if (j.contains("constant")) return WindowFunction::constant(j.at("constant").get<long>());
    const Json& win = j.at("window");
    std::map<Word, long> table;
    for (const auto& [k, v] : j.at("table").items()) table[parse_word(k)] = v.get<long>();
    return WindowFunction::from_table(win.at(0).get<long>(), win.at(1).get<long>(),
                                      std::move(table));
}

inline Json code_json(const SlidingBlockCode& c) {
    Json table = Json::object();
    for (const auto& [w, s] : c.table()) table[word_str(w)] = s;
    return Json{{"window", Json::array({c.window_lo(), c.window_hi()})},
                {"table", std::move(table)}};
}

inline SlidingBlockCode code_from_json(const SftMatrix& source, const SftMatrix& target,
                                       const Json& j) {
    if (j.is_string() && j.get<std::string>() == "identity") {
        require(source == target, "BadFormat", "identity code needs equal source and target");
        return SlidingBlockCode::identity(source);
    }
    const Json& win = j.at("window");
    std::map<Word, Symbol> table;
    for (const auto& [k, v] : j.at("table").items())
        table[parse_word(k)] = v.get<Symbol>();
    return SlidingBlockCode::make(source, target, win.at(0).get<long>(), win.at(1).get<long>(),
                                  std::move(table));
}

inline Json cocycle_json(const TwoCocycle& d) {
    switch (d.kind()) {
    case TwoCocycle::Kind::Zero:
        return Json{{"kind", "zero"}};
    case TwoCocycle::Kind::Coboundary:
        return Json{{"kind", "coboundary"}, {"potential", window_function_json(*d.potential())}};
    case TwoCocycle::Kind::Custom:
        break;
    }
    fail("BadFormat", "custom two-cocycles have no serialized form");
}

inline TwoCocycle cocycle_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return TwoCocycle::zero();
    if (kind == "coboundary")
        return TwoCocycle::coboundary(window_function_from_json(j.at("potential")));
    fail("BadFormat", "unknown two-cocycle kind '" + kind + "'");
}

inline Json witness_json(const CocycleWitness& w) {
    return Json{{"h", code_json(w.h)},
                {"h_inv", code_json(w.h_inv)},
                {"c1", window_function_json(w.c1)},
                {"c2", window_function_json(w.c2)},
                {"d1", cocycle_json(w.d1)},
                {"d2", cocycle_json(w.d2)},
                {"depth", w.depth},
                {"source_reversed", w.source.reversed},
                {"target_reversed", w.target.reversed}};
}

inline CocycleWitness witness_from_json(const SftMatrix& a, const SftMatrix& b, const Json& j) {
    bool src_rev = j.value("source_reversed", false);
    bool tgt_rev = j.value("target_reversed", false);
    CocycleWitness w{ShiftSystem{a, src_rev},
                     ShiftSystem{b, tgt_rev},
                     code_from_json(a, b, j.at("h")),
                     code_from_json(b, a, j.at("h_inv")),
                     window_function_from_json(j.at("c1")),
                     window_function_from_json(j.at("c2")),
                     j.contains("d1") ? cocycle_from_json(j.at("d1")) : TwoCocycle::zero(),
                     j.contains("d2") ? cocycle_from_json(j.at("d2")) : TwoCocycle::zero()};
    w.depth = j.value("depth", 16L);
    return w;
}

// ------------------------------------------------------- groups / spectra

inline Json group_json(const FinGenAbGroup& g) {
    Json torsion = Json::array();
    for (const Int& t : g.torsion) torsion.push_back(int_json(t));
    return Json{{"free_rank", g.free_rank}, {"torsion", std::move(torsion)}, {"name", g.str()}};
}

inline Json localized_json(const LocalizedSubgroup& g) {
    Json primes = Json::array();
    for (const Int& p : g.primes) primes.push_back(int_json(p));
    return Json{{"primes", std::move(primes)}, {"name", g.str()}};
}

inline Json stagewise_json(const StagewiseGroup& s) {
    Json stages = Json::array();
    for (const auto& [k, g] : s.stages)
        stages.push_back(Json{{"stage", k}, {"group", group_json(g)}});
    return Json{{"stages", std::move(stages)}, {"stabilized", s.stabilized}};
}

inline Json perron_json(const PerronData& p) {
    Json j{{"integral", p.integral}, {"lambda", p.lambda}};
    if (p.integral) {
        j["lambda_integer"] = int_json(p.lambda_integer);
        Json l = Json::array(), r = Json::array();
        for (const Rat& v : p.left_exact) l.push_back(to_string(v));
        for (const Rat& v : p.right_exact) r.push_back(to_string(v));
        j["left_exact"] = std::move(l);
        j["right_exact"] = std::move(r);
    }
    j["left"] = p.left;
    j["right"] = p.right;
    return j;
}

// -------------------------------------------------------- polys / series

inline Json poly_json(const IntPoly& p) {
    Json j = Json::array();
    for (const Int& c : p) j.push_back(int_json(c));
    return j;
}

inline Json rational_function_json(const RationalFunction& f) {
    return Json{{"num", poly_json(f.num)}, {"den", poly_json(f.den)}};
}

inline Json series_json(const PowerSeries& s) {
    Json j = Json::array();
    for (const Rat& c : s.c) j.push_back(to_string(c));
    return j;
}

// --------------------------------------------------- tensor term literals

namespace detail {

inline std::string leg_str(char gen, const CkPair& p) {
    std::string out;
    if (!p.u.empty()) out += std::string(1, gen) + "[" + word_str(p.u) + "]";
    if (!p.v.empty()) out += std::string(1, gen) + "[" + word_str(p.v) + "]*";
    if (out.empty()) out = "1";
    return out;
}

} // namespace detail

inline std::string tensor_term_str(const TensorTerm& t) {
    std::string coef;
    if (t.c == -1) coef = "-";
    else if (t.c != 1) coef = to_string(t.c) + "*";
    return coef + detail::leg_str('T', t.l) + " x " + detail::leg_str('S', t.r);
}

inline std::string tensor_literal(const TensorElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < x.terms().size(); ++i) {
        const TensorTerm& t = x.terms()[i];
        if (i == 0) {
            out += tensor_term_str(t);
            continue;
        }
        if (t.c < 0) {
            TensorTerm neg = t;
            neg.c = -t.c;
            out += " - " + tensor_term_str(neg);
        } else {
            out += " + " + tensor_term_str(t);
        }
    }
    return out;
}

/// Parses "T[2 1]* x S[1 2]" style literals: per term an optional integer
/// coefficient with '*', a T-leg, ' x ', an S-leg; legs are '1' or up to
/// one unstarred and one starred bracketed word; terms joined by +/-.
inline TensorElement parse_tensor_literal(const SftMatrix& a, const std::string& s) {
    TensorElement acc = TensorElement::zero(a);
    std::size_t i = 0, n = s.size();
    auto ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto number = [&]() -> Int {
        std::size_t k = i;
        while (k < n && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        require(k > i, "BadLiteral", "expected an integer in term literal");
        Int v(s.substr(i, k - i));
        i = k;
        return v;
    };
    auto bracket_word = [&]() -> Word {
        require(i < n && s[i] == '[', "BadLiteral", "expected '[' in term literal");
        std::size_t close = s.find(']', i);
        require(close != std::string::npos, "BadLiteral", "unterminated '[' in term literal");
        Word w = parse_word(s.substr(i + 1, close - i - 1));
        i = close + 1;
        return w;
    };
    auto leg = [&](char gen, Word& wu, Word& wv) {
        ws();
        if (i < n && s[i] == '1') {
            ++i;
            return;
        }
        bool any = false;
        while (i < n && s[i] == gen) {
            ++i;
            Word w = bracket_word();
            bool star = i < n && s[i] == '*';
            if (star) ++i;
            if (star) {
                require(wv.empty(), "BadLiteral", "duplicate starred factor in term literal");
                wv = std::move(w);
            } else {
                require(wu.empty() && wv.empty(), "BadLiteral",
                        "unstarred factor must come first in term literal");
                wu = std::move(w);
            }
            any = true;
            ws();
        }
        require(any, "BadLiteral", std::string("expected a ") + gen + "-leg in term literal");
    };

    ws();
    require(i < n, "BadLiteral", "empty term literal");
    if (s[i] == '0') {
        ++i;
        ws();
        require(i == n, "BadLiteral", "trailing characters after 0");
        return acc;
    }
    bool first = true;
    while (i < n) {
        ws();
        Int sign = 1;
        if (!first || (i < n && (s[i] == '+' || s[i] == '-'))) {
            require(i < n && (s[i] == '+' || s[i] == '-'), "BadLiteral",
                    "expected '+' or '-' between terms");
            if (s[i] == '-') sign = -1;
            ++i;
            ws();
        }
        Int coef = sign;
        if (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = sign * number();
            ws();
            require(i < n && s[i] == '*', "BadLiteral", "coefficient must be followed by '*'");
            ++i;
        }
        Word lu, lv, ru, rv;
        leg('T', lu, lv);
        ws();
        require(i < n && s[i] == 'x', "BadLiteral", "expected 'x' between tensor legs");
        ++i;
        leg('S', ru, rv);
        acc = acc + TensorElement::monomial(a, lu, lv, ru, rv, coef);
        first = false;
        ws();
    }
    return acc;
}

inline Json tensor_json(const TensorElement& x) {
    Json terms = Json::array();
    for (const TensorTerm& t : x.terms())
        terms.push_back(Json{{"lu", word_json(t.l.u)},
                             {"lv", word_json(t.l.v)},
                             {"ru", word_json(t.r.u)},
                             {"rv", word_json(t.r.v)},
                             {"c", to_string(t.c)}});
    return Json{{"terms", std::move(terms)}, {"literal", tensor_literal(x)}};
}

inline Json ck_json(const CkElement& x) {
    Json terms = Json::array();
    for (const CkTerm& t : x.terms())
        terms.push_back(
            Json{{"u", word_json(t.p.u)}, {"v", word_json(t.p.v)}, {"c", to_string(t.c)}});
    return Json{{"terms", std::move(terms)}};
}

// ---------------------------------------------------------------- reports

inline const char* status_str(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Pass: return "pass";
        case ConditionStatus::Fail: return "fail";
        case ConditionStatus::DepthExceeded: return "depth-exceeded";
    }
    return "?";
}

inline Json check_report_json(const CheckReport& r) {
    Json conds = Json::array();
    for (const ConditionReport& c : r.conditions) {
        Json jc{{"name", c.name}, {"status", status_str(c.status)}};
        if (!c.counterexample.empty()) jc["counterexample"] = c.counterexample;
        conds.push_back(std::move(jc));
    }
    return Json{{"conditions", std::move(conds)},
                {"k1", r.k1},
                {"k2", r.k2},
                {"m1", r.m1},
                {"m2", r.m2},
                {"pass", r.pass}};
}

inline Json zeta_transfer_json(const ZetaTransferResult& r) {
    Json j{{"ok", r.ok}};
    if (!r.ok) {
        j["side"] = r.side;
        j["coefficient"] = r.coefficient;
        j["lhs"] = to_string(r.lhs);
        j["rhs"] = to_string(r.rhs);
    }
    return j;
}

inline Json system_evidence_json(const SystemEvidence& e) {
    Json j{{"zeta", rational_function_json(e.zeta)},
           {"bowen_franks", group_json(e.bowen_franks_group)},
           {"perron", perron_json(e.perron)}};
    if (e.full_shift) j["full_shift"] = *e.full_shift;
    if (e.trace_group) j["trace_group"] = localized_json(*e.trace_group);
    return j;
}

inline Json verdict_json(const Verdict& v) {
    Json j{{"distinguished", v.distinguished}};
    if (v.reason) j["reason"] = reason_str(*v.reason);
    j["note"] = v.note;
    j["evidence"] = Json{{"a", system_evidence_json(v.a)}, {"b", system_evidence_json(v.b)}};
    return j;
}

inline Json orbit_json(const Orbit& o) {
    return Json{{"representative", o.representative.to_literal()}, {"length", o.length}};
}

inline Json cylinder_json(const GroupoidCylinder& c) {
    return Json{{"source_word", word_json(c.source_word)},
                {"source_start", c.source_start},
                {"target_word", word_json(c.target_word)},
                {"target_start", c.target_start},
                {"p", c.p},
                {"q", c.q}};
}

} // namespace sftlab
