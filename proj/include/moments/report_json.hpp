// report_json.hpp -- JSON encodings for every report type; each emitter has a
// matching parser so documents round-trip.

#pragma once

#include <moments/analytic.hpp>
#include <moments/boundary.hpp>
#include <moments/moment_system.hpp>
#include <moments/oracle.hpp>
#include <moments/reproduce.hpp>
#include <moments/spectral.hpp>

#include <json.hpp>

#include <sstream>
#include <string>

namespace moments {

using nlohmann::json;

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline Rational rational_from_str(const std::string& s) { return Rational(s); }

inline std::string bigint_str(const BigInt& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---- words and moments ----------------------------------------------------

inline void to_json(json& j, const MultisetWord& w) { j = w.str(); }
inline void from_json(const json& j, MultisetWord& w) { w = MultisetWord::parse(j.get<std::string>()); }

inline void to_json(json& j, const Pattern& p) { j = p.exponents; }
inline void from_json(const json& j, Pattern& p) { p.exponents = j.get<std::vector<int>>(); }

inline void to_json(json& j, const Moment& m) { j = m.label(); }
inline void from_json(const json& j, Moment& m) {
    const std::string s = j.get<std::string>();
    if (s.size() < 4 || s.front() != '(' || s.back() != ')')
        throw std::invalid_argument("bad moment label: " + s);
    const auto semi = s.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("bad moment label: " + s);
    m.left = MultisetWord::parse(s.substr(1, semi - 1));
    m.right = MultisetWord::parse(s.substr(semi + 1, s.size() - semi - 2));
}

// ---- verdicts and systems ---------------------------------------------------

inline void to_json(json& j, const Verdict& v) {
    json ns = json::array();
    for (const auto& vec : v.nullspace) {
        json row = json::array();
        for (const auto& x : vec) row.push_back(rational_str(x));
        ns.push_back(row);
    }
    j = json{{"rank", v.rank},
             {"nullity", v.nullity},
             {"nullspace", ns},
             {"conjecture_applicable", v.conjecture_applicable},
             {"all_moments_zero", v.all_moments_zero}};
}

inline void from_json(const json& j, Verdict& v) {
    v.rank = j.at("rank").get<int>();
    v.nullity = j.at("nullity").get<int>();
    v.conjecture_applicable = j.at("conjecture_applicable").get<bool>();
    v.all_moments_zero = j.at("all_moments_zero").get<bool>();
    v.nullspace.clear();
    for (const auto& row : j.at("nullspace")) {
        std::vector<Rational> vec;
        for (const auto& x : row) vec.push_back(rational_from_str(x.get<std::string>()));
        v.nullspace.push_back(std::move(vec));
    }
}

struct SystemReport {
    EquationSystem system;
    Verdict verdict;
};

// Flat document: {word, pattern, k, unknowns, rows, triplets, rank, nullity,
// nullspace, conjecture_applicable, all_moments_zero}.
inline void to_json(json& j, const SystemReport& r) {
    json triplets = json::array();
    for (const auto& e : r.system.entries) triplets.push_back(json::array({e.row, e.col, e.coeff}));
    json ns = json::array();
    for (const auto& vec : r.verdict.nullspace) {
        json row = json::array();
        for (const auto& x : vec) row.push_back(rational_str(x));
        ns.push_back(row);
    }
    j = json{{"word", r.system.combined},
             {"pattern", r.system.pattern},
             {"k", r.system.k},
             {"rows", r.system.row_words},
             {"unknowns", r.system.unknowns},
             {"triplets", triplets},
             {"rank", r.verdict.rank},
             {"nullity", r.verdict.nullity},
             {"nullspace", ns},
             {"conjecture_applicable", r.verdict.conjecture_applicable},
             {"all_moments_zero", r.verdict.all_moments_zero}};
}

inline void from_json(const json& j, SystemReport& r) {
    r.system.combined = j.at("word").get<MultisetWord>();
    r.system.pattern = j.at("pattern").get<Pattern>();
    r.system.k = j.at("k").get<int>();
    r.system.row_words = j.at("rows").get<std::vector<MultisetWord>>();
    r.system.unknowns = j.at("unknowns").get<std::vector<Moment>>();
    r.system.entries.clear();
    for (const auto& t : j.at("triplets"))
        r.system.entries.push_back(SparseEntry{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    r.verdict.rank = j.at("rank").get<int>();
    r.verdict.nullity = j.at("nullity").get<int>();
    r.verdict.conjecture_applicable = j.at("conjecture_applicable").get<bool>();
    r.verdict.all_moments_zero = j.at("all_moments_zero").get<bool>();
    r.verdict.nullspace.clear();
    for (const auto& row : j.at("nullspace")) {
        std::vector<Rational> vec;
        for (const auto& x : row) vec.push_back(rational_from_str(x.get<std::string>()));
        r.verdict.nullspace.push_back(std::move(vec));
    }
}

struct SweepRow {
    Pattern pattern;
    MultisetWord word;
    int rank = 0;
    int nullity = 0;
    bool conjecture_applicable = false;
    bool all_moments_zero = false;
};

struct SweepReport {
    int length = 0;
    int k = 0;
    std::vector<SweepRow> rows;
    bool conjecture_applicable = false;
    bool conjecture_holds = false;  // meaningful when applicable

    static SweepReport from(int length, int k, const std::vector<PatternVerdict>& pvs) {
        SweepReport rep;
        rep.length = length;
        rep.k = k;
        rep.conjecture_applicable = length - k > k;
        rep.conjecture_holds = rep.conjecture_applicable;
        for (const auto& pv : pvs) {
            rep.rows.push_back(SweepRow{pv.pattern, pv.word, pv.verdict.rank, pv.verdict.nullity,
                                        pv.verdict.conjecture_applicable, pv.verdict.all_moments_zero});
            if (pv.verdict.nullity != 0) rep.conjecture_holds = false;
        }
        return rep;
    }
};

inline void to_json(json& j, const SweepRow& r) {
    j = json{{"pattern", r.pattern},       {"word", r.word},
             {"rank", r.rank},             {"nullity", r.nullity},
             {"conjecture_applicable", r.conjecture_applicable},
             {"all_moments_zero", r.all_moments_zero}};
}

inline void from_json(const json& j, SweepRow& r) {
    r.pattern = j.at("pattern").get<Pattern>();
    r.word = j.at("word").get<MultisetWord>();
    r.rank = j.at("rank").get<int>();
    r.nullity = j.at("nullity").get<int>();
    r.conjecture_applicable = j.at("conjecture_applicable").get<bool>();
    r.all_moments_zero = j.at("all_moments_zero").get<bool>();
}

inline void to_json(json& j, const SweepReport& r) {
    j = json{{"length", r.length},
             {"k", r.k},
             {"patterns", r.rows},
             {"conjecture_applicable", r.conjecture_applicable},
             {"conjecture_holds", r.conjecture_holds}};
}

inline void from_json(const json& j, SweepReport& r) {
    r.length = j.at("length").get<int>();
    r.k = j.at("k").get<int>();
    r.rows = j.at("patterns").get<std::vector<SweepRow>>();
    r.conjecture_applicable = j.at("conjecture_applicable").get<bool>();
    r.conjecture_holds = j.at("conjecture_holds").get<bool>();
}

// ---- spectral ----------------------------------------------------------------

inline void to_json(json& j, const DetResult& d) {
    j = json{{"method", to_string(d.method)},
             {"log10_abs", d.log10_abs},
             {"sign", d.sign}};
    if (d.exact) j["exact"] = bigint_str(*d.exact);
}

inline void from_json(const json& j, DetResult& d) {
    const std::string m = j.at("method").get<std::string>();
    d.method = m == "bareiss"       ? DetMethod::bareiss
               : m == "modular_crt" ? DetMethod::modular_crt
                                    : DetMethod::float_lu;
    d.log10_abs = j.at("log10_abs").get<double>();
    d.sign = j.at("sign").get<int>();
    if (j.contains("exact")) d.exact = BigInt(j.at("exact").get<std::string>());
    else d.exact.reset();
}

inline void to_json(json& j, const IdentityCheck& c) {
    j = json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
}

inline void from_json(const json& j, IdentityCheck& c) {
    c.name = j.at("name").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    c.detail = j.at("detail").get<std::string>();
}

inline void to_json(json& j, const SpectralReport& r) {
    json eigs = json::array();
    for (const auto& e : r.eigenvalues) eigs.push_back(json::array({e.value, e.multiplicity}));
    json traces = json::array();
    for (const auto& [rr, t] : r.trace_powers) traces.push_back(json::array({rr, t}));
    j = json{{"k", r.k},
             {"N", r.N},
             {"structural_only", r.structural_only},
             {"trace_powers", traces},
             {"eigenvalues", eigs},
             {"checks", r.checks}};
    if (r.det) j["det"] = *r.det;
}

inline void from_json(const json& j, SpectralReport& r) {
    r.k = j.at("k").get<int>();
    r.N = j.at("N").get<int>();
    r.structural_only = j.at("structural_only").get<bool>();
    r.eigenvalues.clear();
    for (const auto& e : j.at("eigenvalues"))
        r.eigenvalues.push_back(EigenPair{e.at(0).get<int>(), e.at(1).get<int>()});
    r.trace_powers.clear();
    for (const auto& t : j.at("trace_powers"))
        r.trace_powers.emplace_back(t.at(0).get<int>(), t.at(1).get<std::int64_t>());
    r.checks = j.at("checks").get<std::vector<IdentityCheck>>();
    if (j.contains("det")) r.det = j.at("det").get<DetResult>();
    else r.det.reset();
}

// ---- analytic ----------------------------------------------------------------

inline void to_json(json& j, const SymbolicValue& v) {
    j = json::array({rational_str(v.p0), rational_str(v.q0)});
}

inline void from_json(const json& j, SymbolicValue& v) {
    v.p0 = rational_from_str(j.at(0).get<std::string>());
    v.q0 = rational_from_str(j.at(1).get<std::string>());
}

inline void to_json(json& j, const TwoLetterChainReport& r) {
    j = json{{"case", "two-letter"}, {"k", r.k},           {"m", r.m},
             {"coefficients_match", r.coefficients_match}, {"detail", r.detail},
             {"verdict", r.verdict},                       {"pass", r.pass()}};
}

inline void from_json(const json& j, TwoLetterChainReport& r) {
    r.k = j.at("k").get<int>();
    r.m = j.at("m").get<int>();
    r.coefficients_match = j.at("coefficients_match").get<bool>();
    r.detail = j.at("detail").get<std::string>();
    r.verdict = j.at("verdict").get<Verdict>();
}

inline void to_json(json& j, const InductionReport& r) {
    j = json{{"case", "induction"},
             {"k", r.k},
             {"x", r.x},
             {"base_row_matches", r.base_row_matches},
             {"step_rows_match", r.step_rows_match},
             {"verdict", r.verdict},
             {"pass", r.pass()}};
}

inline void from_json(const json& j, InductionReport& r) {
    r.k = j.at("k").get<int>();
    r.x = j.at("x").get<MultisetWord>();
    r.base_row_matches = j.at("base_row_matches").get<bool>();
    r.step_rows_match = j.at("step_rows_match").get<bool>();
    r.verdict = j.at("verdict").get<Verdict>();
}

inline void to_json(json& j, const ClosedFormReport& r) {
    j = json{{"case", "akbkc"},
             {"k", r.k},
             {"p", r.p},
             {"q", r.q},
             {"p_matches_formula", r.p_matches_formula},
             {"q_matches_formula", r.q_matches_formula},
             {"formula_residuals_zero", r.formula_residuals_zero},
             {"boundary_forces_zero", r.boundary_forces_zero},
             {"verdict", r.generic},
             {"pass", r.pass()}};
}

inline void from_json(const json& j, ClosedFormReport& r) {
    r.k = j.at("k").get<int>();
    r.p = j.at("p").get<std::vector<SymbolicValue>>();
    r.q = j.at("q").get<std::vector<SymbolicValue>>();
    r.p_matches_formula = j.at("p_matches_formula").get<bool>();
    r.q_matches_formula = j.at("q_matches_formula").get<bool>();
    r.formula_residuals_zero = j.at("formula_residuals_zero").get<bool>();
    r.boundary_forces_zero = j.at("boundary_forces_zero").get<bool>();
    r.analytic_all_zero = r.boundary_forces_zero;
    r.generic = j.at("verdict").get<Verdict>();
}

// ---- boundary ----------------------------------------------------------------

inline void to_json(json& j, const AntisymReport& r) {
    json triplets = json::array();
    for (const auto& e : r.entries) triplets.push_back(json::array({e.row, e.col, e.coeff}));
    j = json{{"case", "antisymmetric"},
             {"word", r.word},
             {"rows", r.row_words},
             {"unknowns", r.unknowns},
             {"dropped", r.dropped},
             {"triplets", triplets},
             {"degenerate", r.degenerate},
             {"verdict", r.verdict}};
}

inline void from_json(const json& j, AntisymReport& r) {
    r.word = j.at("word").get<MultisetWord>();
    r.row_words = j.at("rows").get<std::vector<MultisetWord>>();
    r.unknowns = j.at("unknowns").get<std::vector<Moment>>();
    r.dropped = j.at("dropped").get<std::vector<std::string>>();
    r.entries.clear();
    for (const auto& t : j.at("triplets"))
        r.entries.push_back(SparseEntry{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    r.degenerate = j.at("degenerate").get<bool>();
    r.verdict = j.at("verdict").get<Verdict>();
}

// ---- oracle ------------------------------------------------------------------

inline void to_json(json& j, const OracleEntry& e) {
    j = json{{"label", e.label},       {"value", e.value}, {"scale", e.scale},
             {"relative", e.relative}, {"predicted_zero", e.predicted_zero},
             {"pass", e.pass}};
}

inline void from_json(const json& j, OracleEntry& e) {
    e.label = j.at("label").get<std::string>();
    e.value = j.at("value").get<double>();
    e.scale = j.at("scale").get<double>();
    e.relative = j.at("relative").get<double>();
    e.predicted_zero = j.at("predicted_zero").get<bool>();
    e.pass = j.at("pass").get<bool>();
}

inline void to_json(json& j, const OracleReport& r) {
    j = json{{"calibration_rel_error", r.calibration_rel_error},
             {"calibration_pass", r.calibration_pass},
             {"divergence_residual", r.divergence_residual},
             {"divergence_pass", r.divergence_pass},
             {"first_moments", r.first_moments},
             {"second_moments", r.second_moments},
             {"some_second_moment_nonzero", r.some_second_moment_nonzero},
             {"relation_residual", r.relation_residual},
             {"relation_pass", r.relation_pass},
             {"relation_terms_nonzero", r.relation_terms_nonzero},
             {"convergence_residuals", r.convergence_residuals},
             {"failures", r.failures},
             {"all_pass", r.all_pass()}};
}

// ---- reproduce ledger ----------------------------------------------------------

inline void to_json(json& j, const Ledger& l) { j = render_json(l); }

inline void from_json(const json& j, Ledger& l) {
    l.entries.clear();
    for (const auto& e : j.at("entries"))
        l.entries.push_back(LedgerEntry{e.at("anchor").get<std::string>(),
                                        e.at("claim").get<std::string>(), e.at("pass").get<bool>()});
}

inline void from_json(const json& j, OracleReport& r) {
    r.calibration_rel_error = j.at("calibration_rel_error").get<double>();
    r.calibration_pass = j.at("calibration_pass").get<bool>();
    r.divergence_residual = j.at("divergence_residual").get<double>();
    r.divergence_pass = j.at("divergence_pass").get<bool>();
    r.first_moments = j.at("first_moments").get<std::vector<OracleEntry>>();
    r.second_moments = j.at("second_moments").get<std::vector<OracleEntry>>();
    r.some_second_moment_nonzero = j.at("some_second_moment_nonzero").get<bool>();
    r.relation_residual = j.at("relation_residual").get<double>();
    r.relation_pass = j.at("relation_pass").get<bool>();
    r.relation_terms_nonzero = j.at("relation_terms_nonzero").get<bool>();
    r.convergence_residuals = j.at("convergence_residuals").get<std::vector<double>>();
    r.failures = j.at("failures").get<std::vector<std::string>>();
}

}  // namespace moments
