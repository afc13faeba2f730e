#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gencyclo/cyclotomy.hpp"
#include "gencyclo/error.hpp"
#include "gencyclo/extfield.hpp"
#include "gencyclo/gfpoly.hpp"
#include "gencyclo/lemmas.hpp"
#include "gencyclo/numthy.hpp"
#include "gencyclo/seqgen.hpp"

namespace gencyclo {

/// Case predicates feeding the closed-form dispatch.
struct PredicateSet {
    uint32_t l = 2;            // the symbol-field prime the predicates are for
    int delta = 0;             // 1 iff l | 1 + (p+1)(q-1)/2
    int64_t delta1 = 0;        // (p-1)/2 mod l
    int64_t delta2 = 0;        // (q+1)/2 mod l
    bool quarter_test = false; // (n-1)/4 = 0 (mod l)
    ResidueClass l_class;      // class of l mod n
    bool pq_mod8_equal = false;
    bool half_b_test = false;  // b/2 = 0 (mod l); meaningful when p = q (mod 8)
    bool quartic_test = false; // (a^2+3)/4 = 0 (mod l); meaningful when p != q (mod 8)
};

enum class Branch {
    Thm9_case1,
    Thm9_case2,
    Thm9_case3,
    Thm11,
    Cor15_D0,
    Cor15_D2,
    Cor16,
    NotCovered,
};

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::Thm9_case1: return "Thm9_case1";
        case Branch::Thm9_case2: return "Thm9_case2";
        case Branch::Thm9_case3: return "Thm9_case3";
        case Branch::Thm11: return "Thm11";
        case Branch::Cor15_D0: return "Cor15_D0";
        case Branch::Cor15_D2: return "Cor15_D2";
        case Branch::Cor16: return "Cor16";
        default: return "NotCovered";
    }
}

struct Prediction {
    Branch branch = Branch::NotCovered;
    std::optional<int64_t> L;
    std::string minpoly_shape;  // symbolic tag, set for the l = 2 corollaries
};

inline PredicateSet evaluate_predicates(const PrimePair& pair, const QuarticDecomposition& dec,
                                        const CyclotomySystem& sys, uint32_t l) {
    if (pair.n % l == 0) fail("invalid-input", "gcd(l, n) must be 1");
    PredicateSet ps;
    ps.l = l;
    int64_t weight1 = 1 + (pair.p + 1) * (pair.q - 1) / 2;  // s(1) before reduction
    ps.delta = weight1 % l == 0 ? 1 : 0;
    ps.delta1 = ((pair.p - 1) / 2) % l;
    ps.delta2 = ((pair.q + 1) / 2) % l;
    ps.quarter_test = ((pair.n - 1) / 4) % l == 0;
    ps.l_class = sys.classify(l % pair.n);
    ps.pq_mod8_equal = (pair.p - pair.q) % 8 == 0;
    ps.half_b_test = ps.pq_mod8_equal && (dec.b / 2) % l == 0;
    ps.quartic_test = !ps.pq_mod8_equal && ((dec.a * dec.a + 3) / 4) % l == 0;
    return ps;
}

/// Closed-form linear complexity per the theorem/corollary dispatch:
/// the l = 2 corollaries first, then the quarter-test theorem by sub-case,
/// then the l-not-in-D_0 theorem; otherwise not covered.
inline Prediction predict_complexity(const PredicateSet& ps, const PrimePair& pair,
                                     [[maybe_unused]] const QuarticDecomposition& dec) {
    const int64_t p = pair.p, q = pair.q, n = pair.n;
    Prediction out;
    auto pick_row = [&](std::array<int64_t, 4> rows) {
        int row = ps.delta1 != 0 ? (ps.delta2 != 0 ? 0 : 1) : (ps.delta2 != 0 ? 2 : 3);
        return rows[static_cast<size_t>(row)] - (row < 3 ? ps.delta : 0);
    };
    if (ps.l_class.kind != ResidueClass::InD)
        fail("invalid-input", "l must be a unit mod n");
    // (i)/(ii): the l = 2 corollaries take precedence
    if (ps.l == 2) {
        if (n % 8 == 1) {
            if (ps.l_class == ResidueClass::in_d(0)) {
                out.branch = Branch::Cor15_D0;
                out.L = (p * q - q + p + 1) / 2;
                out.minpoly_shape = "(x^n-1)(x-1)/((x^q-1)*d_i(x)*d_j(x))";
            } else if (ps.l_class == ResidueClass::in_d(2)) {
                out.branch = Branch::Cor15_D2;
                out.L = n + 1 - q;
                out.minpoly_shape = "(x^n-1)(x-1)/(x^q-1)";
            } else {
                out.branch = Branch::NotCovered;  // excluded by the class-of-2 parity
            }
        } else {
            out.branch = Branch::Cor16;
            out.L = n + 1 - q;
            out.minpoly_shape = "(x^n-1)(x-1)/(x^q-1)";
        }
        return out;
    }
    // (iii): quarter test -> the three-case theorem
    if (ps.quarter_test) {
        if (ps.pq_mod8_equal && ps.half_b_test) {
            out.branch = Branch::Thm9_case1;
            out.L = pick_row({(p * q + p + q - 1) / 2, (p * q - p + q + 1) / 2,
                              (p * q + p - q + 1) / 2, (p * q - p - q + 1) / 2});
        } else if (!ps.pq_mod8_equal && ps.quartic_test) {
            out.branch = Branch::Thm9_case2;
            out.L = pick_row({(3 * p * q + p + q - 1) / 4, (3 * p * q - 3 * p + q + 3) / 4,
                              (3 * p * q + p - 3 * q + 3) / 4, (3 * p * q - 3 * p - 3 * q + 5) / 4});
        } else {
            out.branch = Branch::Thm9_case3;
            out.L = pick_row({n, n + 1 - p, n + 1 - q, n + 2 - p - q});
        }
        return out;
    }
    // (iv): l outside D_0
    if (!(ps.l_class == ResidueClass::in_d(0))) {
        out.branch = Branch::Thm11;
        out.L = pick_row({n, n + 1 - p, n + 1 - q, n + 2 - p - q});
        return out;
    }
    out.branch = Branch::NotCovered;
    return out;
}

struct DiagnosticEntry {
    std::string check;
    std::string status;  // pass | fail | skip | info
    std::string detail;
};

struct VerificationReport {
    int64_t p = 0, q = 0, g1 = 0, g2 = 0, g = 0, n = 0;
    uint32_t l = 2;
    int64_t a = 0, b = 0;
    PredicateSet predicates;
    Prediction prediction;
    int64_t computed_L_gcd = 0;
    int64_t computed_L_bm = 0;
    std::string match;  // Exact | Mismatch | NotCovered
    ResidueClass class_of_minus1;
    bool oracle_agreement = false;
    std::vector<DiagnosticEntry> diagnostics;
    LinearComplexityResult lc;  // gcd-method result, minimal polynomial included
};

namespace detail {

inline void push(std::vector<DiagnosticEntry>& out, std::string check, bool ok,
                 std::string detail = "") {
    out.push_back({std::move(check), ok ? "pass" : "fail", std::move(detail)});
}

inline void push_info(std::vector<DiagnosticEntry>& out, std::string check, std::string detail) {
    out.push_back({std::move(check), "info", std::move(detail)});
}

inline void push_skip(std::vector<DiagnosticEntry>& out, std::string check, std::string detail) {
    out.push_back({std::move(check), "skip", std::move(detail)});
}

}  // namespace detail

/// End-to-end verification of one (p, q, g1, g2, l) instance: builds the
/// system, runs both linear-complexity oracles, dispatches the closed-form
/// prediction and attaches structural diagnostics.
inline VerificationReport verify(const PrimePair& pair, int64_t g1, int64_t g2, uint32_t l,
                                 int64_t diag_cap = kFullScanCap) {
    if (pair.d != 4) fail("invalid-input", "verify requires gcd(p-1, q-1) = 4");
    if (!is_prime(l) || pair.n % l == 0)
        fail("invalid-input", "l must be a prime coprime to n");
    auto gsol = crt_solve(g1 % pair.p, pair.p, g2 % pair.q, pair.q);
    CyclotomySystem sys = CyclotomySystem::build(pair, 4, gsol->value);
    QuarticDecomposition dec = quartic_decomposition(pair, g1, g2);

    VerificationReport rep;
    rep.p = pair.p;
    rep.q = pair.q;
    rep.g1 = sys.g1();
    rep.g2 = sys.g2();
    rep.g = sys.g();
    rep.n = pair.n;
    rep.l = l;
    rep.a = dec.a;
    rep.b = dec.b;
    rep.class_of_minus1 = sys.classify(pair.n - 1);

    PeriodicSequence seq = generate(sys, SequenceSpec::order4_standard(), l);
    rep.lc = linear_complexity_gcd(seq);
    rep.computed_L_gcd = rep.lc.L;
    BerlekampMasseyResult bm = berlekamp_massey(seq);
    rep.computed_L_bm = bm.L;
    rep.oracle_agreement = rep.computed_L_gcd == rep.computed_L_bm;

    rep.predicates = evaluate_predicates(pair, dec, sys, l);
    rep.prediction = predict_complexity(rep.predicates, pair, dec);
    if (rep.prediction.branch == Branch::NotCovered)
        rep.match = "NotCovered";
    else
        rep.match = (rep.oracle_agreement && rep.prediction.L == rep.computed_L_gcd) ? "Exact"
                                                                                     : "Mismatch";

    auto& dg = rep.diagnostics;
    detail::push(dg, "oracle-agreement", rep.oracle_agreement,
                 "gcd=" + std::to_string(rep.computed_L_gcd) +
                     " bm=" + std::to_string(rep.computed_L_bm));
    detail::push(dg, "bm-minpoly-equals-gcd-minpoly",
                 bm_minimal_poly(bm, l) == rep.lc.minimal_poly);
    detail::push(dg, "partition", partition_counts_ok(sys));
    detail::push(dg, "class-rotation-spot", class_rotation_spot(sys));
    detail::push(dg, "mixed-count-spot",
                 shifted_count_check(sys, sys.p_set().front()) &&
                     shifted_count_check(sys, sys.q_set().front()));
    detail::push(dg, "class-of-2-parity", class_of_two_parity_ok(sys),
                 "2 in " + sys.classify(2 % pair.n).name());
    auto reps = representation_pair_check(sys);
    detail::push(dg, "two-representations", reps.two_reps && reps.parity_structure);
    detail::push(dg, "tables-formula-vs-bruteforce",
                 cyclotomic_numbers_formula(pair, dec) == cyclotomic_numbers_bruteforce(sys));
    detail::push_info(dg, "class-of-minus1", rep.class_of_minus1.name());
    detail::push_info(dg, "class-of-l", rep.predicates.l_class.name());
    if (rep.predicates.quarter_test)
        detail::push_info(dg, "quarter-test-class-probe",
                          "quarter test holds; l in " + rep.predicates.l_class.name());
    if (rep.predicates.delta == 1) {
        detail::push(dg, "delta-upper-bound", rep.computed_L_gcd <= pair.n - 1,
                     "delta=1 forces L <= n-1 = " + std::to_string(pair.n - 1) +
                         "; computed L = " + std::to_string(rep.computed_L_gcd));
    }

    int64_t class_sum_cap = std::min<int64_t>(diag_cap, kClassSumCap);
    int64_t full_scan_cap = std::min<int64_t>(diag_cap, kFullScanCap);
    if (pair.n <= class_sum_cap) {
        auto ctx = shared_context(l, pair.n);
        ClassSums cs = class_sums(sys, *ctx);
        bool eq36 = cs.sum_p == ctx->from_const(-1) && cs.sum_q == ctx->from_const(-1);
        auto total = ctx->add(ctx->add(cs.d[0], cs.d[1]), ctx->add(cs.d[2], cs.d[3]));
        detail::push(dg, "unit-class-sums", eq36 && ctx->is_one(total));
        detail::push(dg, "class-value-cases", class_value_check(sys, *ctx).all_ok);
        auto eta = eta_identity_check(sys, *ctx);
        detail::push(dg, "eta-quadratic-identity", eta.identity_ok && eta.equivalence_ok);
        if (rep.predicates.quarter_test) {
            auto qr = quadratic_relation_check(sys, *ctx, dec);
            detail::push(dg, "quadratic-relations", qr.s_relation_ok && qr.t_relation_ok,
                         qr.grouping + " with b=" + std::to_string(qr.b_used) +
                             (qr.s_relation_ok ? "" : "; residual_s=" + qr.residual_s) +
                             (qr.t_relation_ok ? "" : "; residual_t=" + qr.residual_t));
        }
        Poly spoly = sequence_polynomial(seq);
        bool frob_ok = true;
        for (int64_t aa : {int64_t{1}, sys.d_class(1).front(), sys.p_set().front()}) {
            auto lhs = ctx->eval_at_power(spoly, mod_mul(aa, l, pair.n));
            auto rhs = ctx->pow(ctx->eval_at_power(spoly, aa), l);
            frob_ok &= lhs == rhs;
        }
        detail::push(dg, "frobenius-consistency", frob_ok);
        if (pair.n <= full_scan_cap) {
            int64_t zeros = count_vanishing_powers(spoly, *ctx);
            detail::push(dg, "root-count-bridge", zeros == pair.n - rep.computed_L_gcd,
                         "zeros=" + std::to_string(zeros));
            bool base_expected = rep.predicates.l_class == ResidueClass::in_d(0);
            bool all_base = true;
            for (int j = 0; j < 4; ++j) all_base &= class_factor(sys, *ctx, j).base_field;
            if (base_expected)
                detail::push(dg, "class-factor-base-field", all_base);
            else
                detail::push_info(dg, "class-factor-base-field",
                                  std::string("l not in D0; base-field coefficients ") +
                                      (all_base ? "held anyway" : "did not hold"));
            detail::push(dg, "class-factor-product", class_factor_product_ok(sys, *ctx));
        } else {
            detail::push_skip(dg, "root-count-bridge", "n above full-scan cap");
        }
    } else {
        detail::push_skip(dg, "extension-diagnostics", "n above class-sum cap");
    }
    return rep;
}

}  // namespace gencyclo
