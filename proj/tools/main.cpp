// main.cpp -- `moments` command line: system, sweep, spectrum, table,
// analytic, boundary, oracle, reproduce.  Exit codes: 0 all checks pass,
// 1 check failure, 2 usage error, 3 budget exceeded.

#include <moments/report_json.hpp>
#include <moments/reproduce.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>

namespace {

using namespace moments;

std::string eig_text(const std::vector<EigenPair>& eigs) {
    std::string out;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (i) out += " ";
        out += "(" + std::string(eigs[i].value > 0 ? "+" : "") + std::to_string(eigs[i].value) +
               ")^" + std::to_string(eigs[i].multiplicity);
    }
    return out;
}

void print_verdict(const Verdict& v, const std::vector<Moment>& unknowns) {
    std::printf("rank %d  nullity %d\n", v.rank, v.nullity);
    std::printf("conjecture applicable: %s\n", v.conjecture_applicable ? "yes" : "no");
    std::printf("all moments zero: %s\n", v.all_moments_zero ? "yes" : "no");
    if (!v.nullspace.empty()) {
        std::printf("nullspace basis:\n");
        for (const auto& vec : v.nullspace) {
            std::printf(" ");
            for (std::size_t j = 0; j < vec.size(); ++j)
                if (vec[j] != 0)
                    std::printf(" %s=%s", unknowns[j].label().c_str(), rational_str(vec[j]).c_str());
            std::printf("\n");
        }
    }
}

int cmd_system(const std::string& word, int k, bool as_json) {
    SystemReport rep;
    rep.system = build_system(MultisetWord::parse(word), k);
    rep.verdict = solve_system(rep.system);
    if (as_json) {
        std::cout << json(rep).dump(2) << "\n";
        return 0;
    }
    std::printf("word %s  pattern %s  k %d\n", rep.system.combined.str().c_str(),
                rep.system.pattern.str().c_str(), rep.system.k);
    std::printf("rows %d  unknowns %d\n", rep.system.rows(), rep.system.cols());
    std::printf("unknowns:");
    for (const auto& m : rep.system.unknowns) std::printf(" %s", m.label().c_str());
    std::printf("\n");
    print_verdict(rep.verdict, rep.system.unknowns);
    return 0;
}

int cmd_sweep(int length, int k, bool as_json) {
    const auto rows = sweep_patterns(length, k);
    const auto rep = SweepReport::from(length, k, rows);
    if (as_json) {
        std::cout << json(rep).dump(2) << "\n";
    } else {
        std::printf("sweep length %d split %d: %zu patterns\n", length, k, rep.rows.size());
        for (const auto& r : rep.rows)
            std::printf("  %-12s word %-8s rank %-3d nullity %d\n", r.pattern.str().c_str(),
                        r.word.str().c_str(), r.rank, r.nullity);
        std::printf("conjecture applicable: %s\n", rep.conjecture_applicable ? "yes" : "no");
        if (rep.conjecture_applicable)
            std::printf("conjecture holds on this sweep: %s\n", rep.conjecture_holds ? "yes" : "no");
    }
    // A nonzero nullity in the applicable regime is a reportable counterexample.
    return rep.conjecture_applicable && !rep.conjecture_holds ? 1 : 0;
}

int print_spectral(const SpectralReport& rep, bool as_json) {
    if (as_json) {
        std::cout << json(rep).dump(2) << "\n";
        return rep.all_pass() ? 0 : 1;
    }
    std::printf("k %d  N %d  mode %s\n", rep.k, rep.N, rep.structural_only ? "structural" : "full");
    if (rep.det) {
        if (rep.det->exact)
            std::printf("det = %s (%s)\n", bigint_str(*rep.det->exact).c_str(), to_string(rep.det->method));
        else
            std::printf("det: sign %+d, log10|det| = %.4f (%s)\n", rep.det->sign, rep.det->log10_abs,
                        to_string(rep.det->method));
    }
    if (!rep.eigenvalues.empty())
        std::printf("eigenvalues: %s%s\n", eig_text(rep.eigenvalues).c_str(),
                    rep.structural_only ? " ..." : "");
    if (!rep.trace_powers.empty()) {
        std::printf("trace powers:");
        for (const auto& [r, t] : rep.trace_powers) std::printf(" S%d=%lld", r, static_cast<long long>(t));
        std::printf("\n");
    }
    for (const auto& c : rep.checks)
        std::printf("  [%s] %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
    return rep.all_pass() ? 0 : 1;
}

std::string fixed_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

int cmd_table(int kmax, const SpectralOptions& opts, bool as_json, bool as_csv) {
    const auto rows = table_rows(kmax, opts);
    int bad = 0;
    for (const auto& r : rows)
        if (!r.all_pass()) ++bad;
    if (as_json) {
        std::cout << json(rows).dump(2) << "\n";
        return bad ? 1 : 0;
    }
    if (as_csv) {
        std::printf("k,N,det_exact,det_log10");
        int max_eigs = 0;
        for (const auto& r : rows) max_eigs = std::max(max_eigs, static_cast<int>(r.eigenvalues.size()));
        for (int i = 1; i <= max_eigs; ++i) std::printf(",eig_%d,mult_%d", i, i);
        std::printf("\n");
        for (const auto& r : rows) {
            std::printf("%d,%d,%s,%s", r.k, r.N,
                        r.det && r.det->exact ? bigint_str(*r.det->exact).c_str() : "",
                        r.det ? fixed_str(r.det->log10_abs).c_str() : "");
            for (const auto& e : r.eigenvalues) std::printf(",%d,%d", e.value, e.multiplicity);
            std::printf("\n");
        }
        return bad ? 1 : 0;
    }
    std::printf("%2s %6s  %-28s %s\n", "k", "N", "det", "eigenvalues");
    for (const auto& r : rows) {
        std::string det = "-";
        if (r.det && r.det->exact) det = bigint_str(*r.det->exact);
        else if (r.det) det = "10^" + fixed_str(r.det->log10_abs);
        std::printf("%2d %6d  %-28s %s%s\n", r.k, r.N, det.c_str(), eig_text(r.eigenvalues).c_str(),
                    r.structural_only ? " ..." : "");
    }
    return bad ? 1 : 0;
}

int cmd_analytic(const std::string& kase, int k, int m, bool m_given, bool as_json) {
    if (kase == "two-letter") {
        json arr = json::array();
        bool ok = true;
        const int m_lo = m_given ? m : 0;
        const int m_hi = m_given ? m : k;
        for (int mm = m_lo; mm <= m_hi; ++mm) {
            const auto rep = two_letter_chain(k, mm);
            ok = ok && rep.pass();
            arr.push_back(json(rep));
            if (!as_json)
                std::printf("two-letter k=%d m=%d: coefficients %s, nullity %d -> %s\n", k, mm,
                            rep.coefficients_match ? "match" : "MISMATCH", rep.verdict.nullity,
                            rep.pass() ? "PASS" : "FAIL");
        }
        if (as_json) std::cout << (m_given ? arr[0] : arr).dump(2) << "\n";
        return ok ? 0 : 1;
    }
    if (kase == "induction") {
        const MultisetWord x = MultisetWord::all_distinct(k + 1).quotient(MultisetWord::repeated(0, 1));
        const auto rep = induction_case(k, x);
        if (as_json) std::cout << json(rep).dump(2) << "\n";
        else
            std::printf("induction k=%d x=%s: base %s, steps %s, nullity %d -> %s\n", k,
                        x.str().c_str(), rep.base_row_matches ? "k+1" : "MISMATCH",
                        rep.step_rows_match ? "(k,1)" : "MISMATCH", rep.verdict.nullity,
                        rep.pass() ? "PASS" : "FAIL");
        return rep.pass() ? 0 : 1;
    }
    if (kase == "akbkc") {
        const auto rep = akbkc_closed_forms(k);
        if (as_json) std::cout << json(rep).dump(2) << "\n";
        else {
            std::printf("a^k b^k c k=%d: P formula %s, Q formula %s, residuals %s, boundary %s, "
                        "generic nullity %d -> %s\n",
                        k, rep.p_matches_formula ? "match" : "MISMATCH",
                        rep.q_matches_formula ? "match" : "MISMATCH",
                        rep.formula_residuals_zero ? "zero" : "NONZERO",
                        rep.boundary_forces_zero ? "forces zero" : "DEGENERATE", rep.generic.nullity,
                        rep.pass() ? "PASS" : "FAIL");
        }
        return rep.pass() ? 0 : 1;
    }
    throw CLI::ValidationError("--case must be two-letter, induction, or akbkc");
}

int cmd_boundary(const std::string& kase, bool as_json) {
    if (kase == "rank2-a2b2") {
        SystemReport rep;
        rep.system = build_system(MultisetWord::parse("a2b2"), 2);
        rep.verdict = solve_system(rep.system);
        if (as_json) std::cout << json(rep).dump(2) << "\n";
        else {
            std::printf("rank-2 tensor, W=a2b2, k=2\n");
            print_verdict(rep.verdict, rep.system.unknowns);
        }
        return rep.verdict.nullity == 1 ? 0 : 1;
    }
    if (kase == "antisym-abc") {
        const auto rep = antisymmetric_system(MultisetWord::parse("abc"));
        if (as_json) std::cout << json(rep).dump(2) << "\n";
        else {
            std::printf("antisymmetric rank-2 tensor, W=abc, k=1\n");
            if (!rep.dropped.empty()) {
                std::printf("identically zero:");
                for (const auto& d : rep.dropped) std::printf(" %s", d.c_str());
                std::printf("\n");
            }
            print_verdict(rep.verdict, rep.unknowns);
        }
        return rep.verdict.nullity == 1 ? 0 : 1;
    }
    throw CLI::ValidationError("--case must be rank2-a2b2 or antisym-abc");
}

int cmd_oracle(const std::string& profile_name, double width, int points, bool as_json) {
    ScalarProfile profile;
    profile.kind = profile_name == "bump" ? ProfileKind::compact_bump : ProfileKind::gaussian;
    profile.width = width;
    TensorField2 field(profile);
    QuadratureGrid grid = QuadratureGrid::default_for(profile);
    if (points != 48) grid = QuadratureGrid::make(grid.extent, points);
    const auto rep = oracle_report(field, grid);
    if (as_json) {
        std::cout << json(rep).dump(2) << "\n";
        return rep.all_pass() ? 0 : 1;
    }
    std::printf("profile %s width %g, grid %d^3 on +-%g\n", profile_name.c_str(), width,
                grid.points_per_axis, grid.extent);
    std::printf("calibration rel error %.3e  [%s]\n", rep.calibration_rel_error,
                rep.calibration_pass ? "PASS" : "FAIL");
    std::printf("conservation residual %.3e  [%s]\n", rep.divergence_residual,
                rep.divergence_pass ? "PASS" : "FAIL");
    int zero_ok = 0;
    for (const auto& e : rep.first_moments) zero_ok += e.pass;
    std::printf("predicted-zero moments: %d/%zu vanish within 1e-8\n", zero_ok,
                rep.first_moments.size());
    std::printf("pair relation residual %.3e  [%s], terms nonzero [%s]\n", rep.relation_residual,
                rep.relation_pass ? "PASS" : "FAIL", rep.relation_terms_nonzero ? "PASS" : "FAIL");
    std::printf("relation residual by grid (12, 24, 48 points):");
    for (double r : rep.convergence_residuals) std::printf(" %.3e", r);
    std::printf("\n");
    return rep.all_pass() ? 0 : 1;
}

int cmd_reproduce(const std::string& format) {
    const Ledger ledger = run_reproduction();
    if (format == "json") std::cout << render_json(ledger).dump(2) << "\n";
    else std::cout << render_text(ledger);
    return ledger.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification engine for conserved symmetric tensor moments"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    SpectralOptions spec_opts;
    app.add_option("--threads", spec_opts.threads, "worker threads for elimination kernels (0 = auto)")
        ->envname("MOMENTS_THREADS");
    app.add_option("--max-n", spec_opts.max_n, "largest admissible matrix order")
        ->envname("MOMENTS_MAX_N");
    app.add_option("--power-budget", spec_opts.dense_power_budget_n,
                   "largest order for dense integer matrix powers")
        ->envname("MOMENTS_POWER_BUDGET");
    app.add_option("--crt-prime-count", spec_opts.crt_prime_count,
                   "override the CRT prime count (0 = Hadamard bound)")
        ->envname("MOMENTS_CRT_PRIMES");
    app.add_option("--time-budget", spec_opts.time_budget_seconds,
                   "seconds allowed per spectral run (0 = unlimited)")
        ->envname("MOMENTS_TIME_BUDGET");

    std::function<int()> runner;

    // system --word aab --k 1 [--json]
    auto* sys = app.add_subcommand("system", "build and solve one moment system");
    std::string sys_word;
    int sys_k = 0;
    bool sys_json = false;
    sys->add_option("--word", sys_word, "combined word, e.g. aab or a2b")->required();
    sys->add_option("--k", sys_k, "left word length")->required();
    sys->add_flag("--json", sys_json, "emit JSON");
    sys->callback([&] { runner = [&] { return cmd_system(sys_word, sys_k, sys_json); }; });

    // sweep --length 5 --k 2 [--json]
    auto* sweep = app.add_subcommand("sweep", "solve one system per exponent pattern");
    int sweep_len = 0, sweep_k = 0;
    bool sweep_json = false;
    sweep->add_option("--length", sweep_len, "combined word length")->required();
    sweep->add_option("--k", sweep_k, "left word length")->required();
    sweep->add_flag("--json", sweep_json, "emit JSON");
    sweep->callback([&] { runner = [&] { return cmd_sweep(sweep_len, sweep_k, sweep_json); }; });

    // spectrum --k 3 [--json] [--full]
    auto* spect = app.add_subcommand("spectrum", "exact spectrum of the subset-exchange matrix");
    int spect_k = 1;
    bool spect_json = false, spect_full = false;
    std::vector<u64> rank_primes;
    spect->add_option("--k", spect_k, "split parameter")->required();
    spect->add_flag("--full", spect_full, "force full multiplicity extraction at any order");
    spect->add_option("--rank-primes", rank_primes, "two confirming primes for nullity counts");
    spect->add_flag("--json", spect_json, "emit JSON");
    spect->callback([&] {
        runner = [&] {
            SpectralOptions o = spec_opts;
            o.full = spect_full;
            if (!rank_primes.empty()) {
                if (rank_primes.size() != 2) throw std::invalid_argument("--rank-primes needs two primes");
                o.rank_primes = {rank_primes[0], rank_primes[1]};
            }
            return print_spectral(spectrum(spect_k, o), spect_json);
        };
    });

    // table --kmax 5 [--csv|--json]
    auto* table = app.add_subcommand("table", "spectral table rows k = 1..kmax");
    int table_kmax = 5;
    bool table_json = false, table_csv = false;
    table->add_option("--kmax", table_kmax, "largest split (rows beyond 5 get slow determinants)");
    table->add_flag("--json", table_json, "emit JSON");
    table->add_flag("--csv", table_csv, "emit CSV");
    table->callback([&] { runner = [&] { return cmd_table(table_kmax, spec_opts, table_json, table_csv); }; });

    // analytic --case two-letter|induction|akbkc --k K [--m M] [--json]
    auto* ana = app.add_subcommand("analytic", "closed-form families checked against the solver");
    std::string ana_case;
    int ana_k = 1, ana_m = 0;
    bool ana_json = false;
    ana->add_option("--case", ana_case, "two-letter | induction | akbkc")->required();
    ana->add_option("--k", ana_k, "family parameter")->required();
    auto* m_opt = ana->add_option("--m", ana_m, "second-letter count (two-letter only)");
    ana->add_flag("--json", ana_json, "emit JSON");
    ana->callback([&] {
        runner = [&, m_opt] { return cmd_analytic(ana_case, ana_k, ana_m, m_opt->count() > 0, ana_json); };
    });

    // boundary --case rank2-a2b2|antisym-abc [--json]
    auto* bnd = app.add_subcommand("boundary", "edge cases where moments are related but free");
    std::string bnd_case;
    bool bnd_json = false;
    bnd->add_option("--case", bnd_case, "rank2-a2b2 | antisym-abc")->required();
    bnd->add_flag("--json", bnd_json, "emit JSON");
    bnd->callback([&] { runner = [&] { return cmd_boundary(bnd_case, bnd_json); }; });

    // oracle [--profile gaussian|bump] [--width W] [--points P] [--json]
    auto* orc = app.add_subcommand("oracle", "numeric quadrature check on an explicit conserved field");
    std::string orc_profile = "gaussian";
    double orc_width = 1.0;
    int orc_points = 48;
    bool orc_json = false;
    orc->add_option("--profile", orc_profile, "gaussian | bump")
        ->check(CLI::IsMember({"gaussian", "bump"}));
    orc->add_option("--width", orc_width, "profile width");
    orc->add_option("--points", orc_points, "quadrature points per axis");
    orc->add_flag("--json", orc_json, "emit JSON");
    orc->callback([&] { runner = [&] { return cmd_oracle(orc_profile, orc_width, orc_points, orc_json); }; });

    // reproduce [--format text|json]
    auto* repro = app.add_subcommand("reproduce", "run the complete built-in check catalog");
    std::string repro_format = "text";
    bool repro_json = false;
    repro->add_option("--format", repro_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    repro->add_flag("--json", repro_json, "emit JSON (same as --format json)");
    repro->callback([&] {
        runner = [&] { return cmd_reproduce(repro_json ? "json" : repro_format); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return runner();
    } catch (const moments::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
