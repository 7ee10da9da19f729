// Command-line front end: exact invariants and orbit-equivalence checks for
// two-sided shifts of finite type. Every subcommand prints a single JSON
// document to stdout. Exit codes: 0 = success / check passed, 1 = check
// failed / systems distinguished / no certificate found, 2 = error (a JSON
// error object goes to stderr).

#include <sftlab/sftlab.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sftlab;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

/// JSON argument accepted as a file path or inline text.
Json json_arg(const std::string& arg) {
    std::ifstream in(arg);
    std::string text = arg;
    if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail("BadFormat", std::string("cannot parse JSON argument '") + arg + "': " + e.what());
    }
}

long mobius(unsigned long n) {
    long m = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

int cmd_zeta(const std::string& matrix_arg, unsigned order) {
    SftMatrix a = load_system_arg(matrix_arg);
    Json out;
    out["rational"] = rational_function_json(zeta_rational(a));
    out["series"] = series_json(zeta_series(a, order));
    emit(out);
    return 0;
}

int cmd_periodic(const std::string& matrix_arg, unsigned order) {
    SftMatrix a = load_system_arg(matrix_arg);
    require(order >= 1, "BadOrder", "order must be >= 1");
    std::vector<Int> p(order + 1);
    Json counts = Json::array(), orbit_counts = Json::array();
    for (unsigned n = 1; n <= order; ++n) {
        p[n] = periodic_count(a, n);
        counts.push_back(int_json(p[n]));
    }
    for (unsigned n = 1; n <= order; ++n) {
        Int q = 0;
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) q += Int(mobius(n / d)) * p[d];
        orbit_counts.push_back(int_json(q / n));
    }
    Json out;
    out["counts"] = counts;
    out["orbit_counts"] = orbit_counts;
    emit(out);
    return 0;
}

int cmd_orbits(const std::string& matrix_arg, unsigned order) {
    SftMatrix a = load_system_arg(matrix_arg);
    Json out;
    if (!a.zero_one()) {
        a = point_presentation(a);
        out["presentation"] = "edge-shift";
    }
    Json arr = Json::array();
    for (const Orbit& o : periodic_orbits(a, order)) arr.push_back(orbit_json(o));
    out["orbits"] = arr;
    emit(out);
    return 0;
}

int cmd_kgroups(const std::string& matrix_arg, unsigned max_stage) {
    SftMatrix a = load_system_arg(matrix_arg);
    Json out;
    out["bowen_franks"] = group_json(bowen_franks(a));
    if (auto n = full_shift_size(a.mat())) {
        auto [k0, k1] = ruelle_k_groups_full_shift(*n);
        Json rf;
        rf["k0"] = localized_json(k0);
        rf["k1"] = localized_json(k1);
        rf["trace_values"] = localized_json(trace_value_group_full_shift(*n));
        out["ruelle_full_shift"] = rf;
    }
    out["stagewise"] = stagewise_json(ruelle_k0_stagewise(a, max_stage));
    out["perron"] = perron_json(perron_data(a.mat()));
    emit(out);
    return 0;
}

int cmd_ck_verify(const std::string& matrix_arg, unsigned samples, unsigned seed) {
    SftMatrix a = load_system_arg(matrix_arg);
    require(a.irreducible(), "NotIrreducible", "the symbolic algebra needs an irreducible matrix");
    require(!a.permutation(), "Permutation", "permutation matrices are excluded");
    Json out;
    if (!a.zero_one()) {
        a = point_presentation(a);
        out["presentation"] = "edge-shift";
    }
    SuiteReport rep = ck_lemma_suite(a, 3, 4, samples, seed);
    Json checks = Json::array();
    for (const SuiteCheck& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    out["checks"] = checks;
    out["pass"] = rep.pass;
    emit(out);
    return rep.pass ? 0 : 1;
}

int cmd_acoe_check(const std::string& a_arg, const std::string& b_arg, const std::string& w_arg,
                   long depth, unsigned order) {
    SftMatrix a = load_system_arg(a_arg);
    SftMatrix b = load_system_arg(b_arg);
    require(a.zero_one() && b.zero_one(), "NotZeroOne",
            "witness tables reference symbols; present the systems as edge shifts first");
    CocycleWitness w = witness_from_json(a, b, json_arg(w_arg));
    if (depth >= 0) w.depth = depth;
    CheckReport rep = check_acoe(w, a, b);
    ZetaTransferResult zt = zeta_transfer_check(w, a, b, order);
    bool pass = rep.pass && zt.ok;
    Json out;
    out["report"] = check_report_json(rep);
    out["zeta_transfer"] = zeta_transfer_json(zt);
    out["pass"] = pass;
    emit(out);
    return pass ? 0 : 1;
}

int cmd_freeness(const std::string& matrix_arg, long n, const std::string& word_arg,
                 unsigned depth, const std::string& lambda0) {
    SftMatrix a = load_system_arg(matrix_arg);
    Word w = parse_word(word_arg);
    Json out;
    if (!a.zero_one()) {
        require(w.empty(), "NotZeroOne",
                "cylinder words are ambiguous for matrices with entries > 1; present the "
                "system as an edge shift first");
        a = point_presentation(a);
        out["presentation"] = "edge-shift";
    }
    std::optional<BiPoint> x = essential_freeness_witness(a, n, w, depth);
    out["evidence"] = x.has_value();
    if (x) {
        SftSpace space{a, 1, parse_rat(lambda0)};
        Json wit;
        wit["point"] = point_json(*x);
        wit["separation"] = rat_json(metric(shift(*x, n), *x, space));
        out["witness"] = wit;
    }
    emit(out);
    return x ? 0 : 1;
}

int cmd_distinguish(const std::string& a_arg, const std::string& b_arg) {
    SftMatrix a = load_system_arg(a_arg);
    SftMatrix b = load_system_arg(b_arg);
    Verdict v = distinguish(a, b);
    emit(verdict_json(v));
    return v.distinguished ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants and orbit-equivalence checks for two-sided shifts of "
                 "finite type"};
    app.require_subcommand(1);

    const char* matrix_help = "adjacency matrix: file path or inline (rows of integers, or "
                              "JSON {\"n\":..,\"rows\":[[..]]})";

    std::string zeta_matrix;
    unsigned zeta_order = 10;
    auto* sc_zeta = app.add_subcommand("zeta", "dynamical zeta function, closed form and series");
    sc_zeta->add_option("matrix", zeta_matrix, matrix_help)->required();
    sc_zeta->add_option("--order", zeta_order, "series truncation order")->capture_default_str();

    std::string per_matrix;
    unsigned per_order = 10;
    auto* sc_per = app.add_subcommand("periodic", "periodic point and orbit counts");
    sc_per->add_option("matrix", per_matrix, matrix_help)->required();
    sc_per->add_option("--order", per_order, "count periods 1..order")->capture_default_str();

    std::string orb_matrix;
    unsigned orb_order = 6;
    auto* sc_orb = app.add_subcommand("orbits", "periodic orbit representatives");
    sc_orb->add_option("matrix", orb_matrix, matrix_help)->required();
    sc_orb->add_option("--order", orb_order, "maximum least period")->capture_default_str();

    std::string kg_matrix;
    unsigned kg_max_stage = 6;
    auto* sc_kg = app.add_subcommand("kgroups",
                                     "Bowen-Franks group, asymptotic Ruelle algebra K-theory "
                                     "data, and Perron eigendata");
    sc_kg->add_option("matrix", kg_matrix, matrix_help)->required();
    sc_kg->add_option("--max-stage", kg_max_stage, "stagewise K_0 truncation")
        ->capture_default_str();

    std::string ck_matrix;
    unsigned ck_samples = 200, ck_seed = 1;
    auto* sc_ck = app.add_subcommand("ck-verify",
                                     "verify the symbolic tensor-algebra laws: generator "
                                     "relations, compression, shift action, traces");
    sc_ck->add_option("matrix", ck_matrix, matrix_help)->required();
    sc_ck->add_option("--samples", ck_samples, "sampled tuples for the randomized checks")
        ->capture_default_str();
    sc_ck->add_option("--seed", ck_seed, "seed for the randomized checks")->capture_default_str();

    std::string ac_a, ac_b, ac_w;
    long ac_depth = -1;
    unsigned ac_order = 12;
    auto* sc_ac = app.add_subcommand("acoe-check",
                                     "check an asymptotic continuous orbit equivalence witness");
    sc_ac->add_option("matrix-a", ac_a, matrix_help)->required();
    sc_ac->add_option("matrix-b", ac_b, matrix_help)->required();
    sc_ac->add_option("witness", ac_w, "witness JSON: file path or inline")->required();
    sc_ac->add_option("--depth", ac_depth, "override the witness search depth");
    sc_ac->add_option("--order", ac_order, "zeta transfer series order")->capture_default_str();

    std::string fr_matrix, fr_word, fr_lambda0 = "1/2";
    long fr_n = 0;
    unsigned fr_depth = 12;
    auto* sc_fr = app.add_subcommand("freeness",
                                     "search a cylinder for a point that is not n-asymptotically "
                                     "periodic");
    sc_fr->add_option("matrix", fr_matrix, matrix_help)->required();
    sc_fr->add_option("n", fr_n, "nonzero shift exponent")->required();
    sc_fr->add_option("--word", fr_word, "cylinder word, space-separated symbols (default: "
                                         "whole space)");
    sc_fr->add_option("--depth", fr_depth, "search depth")->capture_default_str();
    sc_fr->add_option("--lambda0", fr_lambda0, "metric base in (0,1), as a rational p/q")
        ->capture_default_str();

    std::string di_a, di_b;
    auto* sc_di = app.add_subcommand("distinguish",
                                     "try to certify that two systems are not asymptotically "
                                     "continuously orbit equivalent");
    sc_di->add_option("matrix-a", di_a, matrix_help)->required();
    sc_di->add_option("matrix-b", di_b, matrix_help)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_zeta->parsed()) return cmd_zeta(zeta_matrix, zeta_order);
        if (sc_per->parsed()) return cmd_periodic(per_matrix, per_order);
        if (sc_orb->parsed()) return cmd_orbits(orb_matrix, orb_order);
        if (sc_kg->parsed()) return cmd_kgroups(kg_matrix, kg_max_stage);
        if (sc_ck->parsed()) return cmd_ck_verify(ck_matrix, ck_samples, ck_seed);
        if (sc_ac->parsed()) return cmd_acoe_check(ac_a, ac_b, ac_w, ac_depth, ac_order);
        if (sc_fr->parsed()) return cmd_freeness(fr_matrix, fr_n, fr_word, fr_depth, fr_lambda0);
        if (sc_di->parsed()) return cmd_distinguish(di_a, di_b);
    } catch (const Error& e) {
        Json err;
        err["error"] = e.code();
        std::string msg = e.what();
        std::string prefix = e.code() + ": ";
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        err["message"] = msg;
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = "Internal";
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
