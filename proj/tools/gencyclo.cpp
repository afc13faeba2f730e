// Command-line front end: single-case analysis, cyclotomic-number tables,
// and parameter sweeps with machine-readable output.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gencyclo/report.hpp"
#include "gencyclo/sweep.hpp"

namespace {

using namespace gencyclo;

int exit_code_for(const error& e) {
    const std::string& c = e.code();
    if (c.rfind("invalid-", 0) == 0 || c == "not-a-unit" || c == "too-large") return 2;
    return 1;
}

struct GArgs {
    int64_t g1 = -1, g2 = -1;

    std::pair<int64_t, int64_t> resolve(const PrimePair& pair) const {
        if ((g1 < 0) != (g2 < 0))
            fail("invalid-input", "--g1 and --g2 must be given together");
        if (g1 >= 0) return {g1, g2};
        int64_t g = common_primitive_root(pair);
        return {g % pair.p, g % pair.q};
    }
};

int cmd_analyze(int64_t p, int64_t q, const GArgs& gargs, int64_t l, bool show_minpoly,
                int64_t diag_cap, const std::string& format, const std::string& out_path) {
    if (l < 2) fail("invalid-input", "-l must be a prime >= 2");
    PrimePair pair = PrimePair::create(p, q);
    auto [g1, g2] = gargs.resolve(pair);
    VerificationReport rep = verify(pair, g1, g2, static_cast<uint32_t>(l), diag_cap);

    std::cout << "p=" << rep.p << " q=" << rep.q << " n=" << rep.n << " l=" << rep.l
              << "  g=" << rep.g << " (g1=" << rep.g1 << ", g2=" << rep.g2 << ")\n";
    std::cout << "quartic: a=" << rep.a << " b=" << rep.b << "\n";
    std::cout << "predicates: delta=" << rep.predicates.delta << " delta1=" << rep.predicates.delta1
              << " delta2=" << rep.predicates.delta2
              << " quarter_test=" << (rep.predicates.quarter_test ? "true" : "false")
              << " l in " << rep.predicates.l_class.name() << " -1 in "
              << rep.class_of_minus1.name()
              << " pq_mod8_equal=" << (rep.predicates.pq_mod8_equal ? "true" : "false") << "\n";
    std::cout << "branch: " << branch_name(rep.prediction.branch);
    if (rep.prediction.L) std::cout << "  predicted L = " << *rep.prediction.L;
    if (!rep.prediction.minpoly_shape.empty())
        std::cout << "  minpoly shape: " << rep.prediction.minpoly_shape;
    std::cout << "\n";
    std::cout << "computed L: gcd-method=" << rep.computed_L_gcd
              << " berlekamp-massey=" << rep.computed_L_bm << "\n";
    std::cout << "match: " << rep.match << "\n";
    std::cout << "minimal polynomial degree: " << rep.lc.minimal_poly.degree() << "\n";
    if (show_minpoly) std::cout << "minimal polynomial: " << rep.lc.minimal_poly.str() << "\n";
    std::cout << "diagnostics:\n";
    for (const auto& d : rep.diagnostics) {
        std::cout << "  " << d.check << ": " << d.status;
        if (!d.detail.empty()) std::cout << "  (" << d.detail << ")";
        std::cout << "\n";
    }

    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) fail("io-error", "cannot open output path " + out_path);
        if (format == "csv")
            f << csv_header() << "\n" << report_to_csv(rep) << "\n";
        else
            f << report_to_jsonl(rep) << "\n";
    }
    return rep.oracle_agreement ? 0 : 1;
}

int cmd_tables(int64_t p, int64_t q, const GArgs& gargs) {
    PrimePair pair = PrimePair::create(p, q);
    auto [g1, g2] = gargs.resolve(pair);
    auto gsol = crt_solve(g1 % pair.p, pair.p, g2 % pair.q, pair.q);
    CyclotomySystem sys = CyclotomySystem::build(pair, 4, gsol->value);
    QuarticDecomposition dec = quartic_decomposition(pair, g1, g2);
    auto brute = cyclotomic_numbers_bruteforce(sys);
    auto formula = cyclotomic_numbers_formula(pair, dec);
    bool same8 = (pair.p - pair.q) % 8 == 0;

    std::cout << "p=" << p << " q=" << q << " g=" << sys.g() << "  a=" << dec.a << " b=" << dec.b
              << " M=" << dec.M << "  layout: Table " << (same8 ? 2 : 1) << "\n";
    std::cout << "formula entries (with b_tab=" << formula.b_used << "): A=" << formula.forms.A
              << " B=" << formula.forms.B << " C=" << formula.forms.C << " D=" << formula.forms.D
              << " E=" << formula.forms.E << "\n";
    auto print_grid = [](const char* title, const CyclotomicNumberTable& t) {
        std::cout << title << "\n";
        for (int i = 0; i < 4; ++i) {
            std::cout << " ";
            for (int j = 0; j < 4; ++j) std::cout << " " << t.entries[i][j];
            std::cout << "\n";
        }
    };
    print_grid("brute force (i,j) = |(D_i + 1) n D_j|:", brute);
    print_grid("formula (Table forms):", formula);
    int64_t maxdiff = 0;
    int wi = 0, wj = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int64_t d = std::llabs(brute.entries[i][j] - formula.entries[i][j]);
            if (d > maxdiff) {
                maxdiff = d;
                wi = i;
                wj = j;
            }
        }
    if (maxdiff == 0)
        std::cout << "verdict: AGREE\n";
    else
        std::cout << "verdict: DISAGREE max |diff| = " << maxdiff << " at (i,j)=(" << wi << ","
                  << wj << ")\n";
    return 0;
}

std::pair<int64_t, int64_t> parse_range(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos) {
        int64_t v = std::stoll(s);
        return {v, v};
    }
    return {std::stoll(s.substr(0, pos)), std::stoll(s.substr(pos + 1))};
}

int cmd_sweep(const std::string& p_range, const std::string& q_range,
              const std::vector<int64_t>& l_set, const GArgs& gargs, const std::string& out_path,
              const std::string& format, int jobs, int64_t diag_cap) {
    SweepConfig cfg;
    std::tie(cfg.p_lo, cfg.p_hi) = parse_range(p_range);
    std::tie(cfg.q_lo, cfg.q_hi) = parse_range(q_range);
    if (l_set.empty()) fail("invalid-input", "--l-set must be nonempty");
    for (int64_t l : l_set) {
        if (l < 2 || !is_prime(l)) fail("invalid-input", "--l-set entries must be prime");
        cfg.l_set.push_back(static_cast<uint32_t>(l));
    }
    if ((gargs.g1 < 0) != (gargs.g2 < 0))
        fail("invalid-input", "--g1 and --g2 must be given together");
    if (gargs.g1 >= 0) cfg.explicit_g = {gargs.g1, gargs.g2};
    cfg.diag_cap = diag_cap;
    cfg.jobs = jobs;
    cfg.format = format == "csv" ? SweepConfig::Format::Csv : SweepConfig::Format::Jsonl;

    SweepSummary summary;
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) fail("io-error", "cannot open output path " + out_path);
        summary = run_sweep(cfg, f);
        print_summary(summary, std::cout);
    } else {
        summary = run_sweep(cfg, std::cout);
        print_summary(summary, std::cerr);
    }
    return summary.oracle_breaches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Whiteman generalized cyclotomic sequences of order 4: linear complexity "
                 "analysis and closed-form verification"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "analyze one (p, q, l) instance");
    int64_t p = 0, q = 0, l = 0;
    GArgs gargs;
    bool show_minpoly = false;
    int64_t diag_cap = gencyclo::kFullScanCap;
    std::string format = "jsonl", out_path;
    analyze->add_option("-p", p, "prime p")->required();
    analyze->add_option("-q", q, "prime q")->required();
    analyze->add_option("-l", l, "symbol field prime")->required();
    analyze->add_option("--g1", gargs.g1, "primitive root mod p");
    analyze->add_option("--g2", gargs.g2, "primitive root mod q");
    analyze->add_flag("--minpoly", show_minpoly, "print the full minimal polynomial");
    analyze->add_option("--diag-cap", diag_cap, "max n for extension-field diagnostics");
    analyze->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    analyze->add_option("--out", out_path, "write the machine-readable record here");

    // tables
    auto* tables = app.add_subcommand("tables", "cyclotomic-number tables, brute force vs formula");
    int64_t tp = 0, tq = 0;
    GArgs tgargs;
    tables->add_option("-p", tp, "prime p")->required();
    tables->add_option("-q", tq, "prime q")->required();
    tables->add_option("--g1", tgargs.g1, "primitive root mod p");
    tables->add_option("--g2", tgargs.g2, "primitive root mod q");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "verify a (p, q, l) grid and write records");
    std::string p_range, q_range, s_format = "jsonl", s_out;
    std::vector<int64_t> l_vals;
    GArgs sgargs;
    int jobs = 1;
    int64_t s_diag_cap = gencyclo::kFullScanCap;
    sweep->add_option("--p-range", p_range, "inclusive prime range LO:HI")->required();
    sweep->add_option("--q-range", q_range, "inclusive prime range LO:HI")->required();
    sweep->add_option("--l-set", l_vals, "symbol field primes")->required()->delimiter(',');
    sweep->add_option("--g1", sgargs.g1, "explicit primitive root mod p for all pairs");
    sweep->add_option("--g2", sgargs.g2, "explicit primitive root mod q for all pairs");
    sweep->add_option("--out", s_out, "records file (stdout when omitted)");
    sweep->add_option("--format", s_format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--diag-cap", s_diag_cap, "max n for extension-field diagnostics");

    try {
        app.parse(argc, argv);
        if (*analyze)
            return cmd_analyze(p, q, gargs, l, show_minpoly, diag_cap, format, out_path);
        if (*tables) return cmd_tables(tp, tq, tgargs);
        if (*sweep)
            return cmd_sweep(p_range, q_range, l_vals, sgargs, s_out, s_format, jobs, s_diag_cap);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const gencyclo::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
