#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gencyclo/error.hpp"
#include "gencyclo/numthy.hpp"

namespace gencyclo {

/// Partition cell of a residue in Z_n: {0}, P, Q, or one of the D_i.
struct ResidueClass {
    enum Kind : uint8_t { Zero, InP, InQ, InD };
    Kind kind = Zero;
    int index = -1;  // class index when kind == InD

    bool operator==(const ResidueClass&) const = default;

    std::string name() const {
        switch (kind) {
            case Zero: return "Zero";
            case InP: return "P";
            case InQ: return "Q";
            default: return "D" + std::to_string(index);
        }
    }
    static ResidueClass zero() { return {Zero, -1}; }
    static ResidueClass in_p() { return {InP, -1}; }
    static ResidueClass in_q() { return {InQ, -1}; }
    static ResidueClass in_d(int i) { return {InD, i}; }
};

/// Whiteman generalized cyclotomy over Z_n, n = pq: the classes D_i of
/// the chosen order together with P = pZ_q^*, Q = qZ_p^* and {0}.
class CyclotomySystem {
  public:
    /// Builds the order-`order` system. The classes of the full order
    /// d = gcd(p-1, q-1) are constructed from (g, x) and then unioned
    /// down when order < d.
    static CyclotomySystem build(const PrimePair& pair, int order,
                                 std::optional<int64_t> g_opt = std::nullopt) {
        if (order != 2 && order != 4) fail("invalid-order", "supported class orders are 2 and 4");
        if (pair.d % order != 0) fail("invalid-order", "order must divide gcd(p-1, q-1)");
        CyclotomySystem sys;
        sys.pair_ = pair;
        sys.order_ = order;
        int64_t n = pair.n;
        if (g_opt) {
            int64_t g = ((*g_opt % n) + n) % n;
            if (g % pair.p == 0 || g % pair.q == 0 ||
                !is_primitive_root(g % pair.p, pair.p) || !is_primitive_root(g % pair.q, pair.q))
                fail("invalid-generator", "g is not a common primitive root of p and q");
            sys.g_ = g;
        } else {
            sys.g_ = common_primitive_root(pair);
        }
        sys.x_ = whiteman_unit(pair, sys.g_);

        int full = static_cast<int>(pair.d);
        int64_t e_full = (pair.p - 1) * (pair.q - 1) / full;
        sys.lookup_.assign(static_cast<size_t>(n), kUnset);
        sys.lookup_[0] = kZero;
        for (int64_t v = pair.p; v < n; v += pair.p) sys.lookup_[static_cast<size_t>(v)] = kP;
        for (int64_t v = pair.q; v < n; v += pair.q) sys.lookup_[static_cast<size_t>(v)] = kQ;

        sys.classes_.assign(static_cast<size_t>(order), {});
        int64_t xi = 1;
        for (int i = 0; i < full; ++i) {
            int bucket = i % order;
            int64_t cur = xi;
            for (int64_t s = 0; s < e_full; ++s) {
                uint8_t& slot = sys.lookup_[static_cast<size_t>(cur)];
                if (slot != kUnset)
                    fail("invalid-generator", "class construction does not partition Z_n");
                slot = static_cast<uint8_t>(kD + bucket);
                sys.classes_[static_cast<size_t>(bucket)].push_back(cur);
                cur = mod_mul(cur, sys.g_, n);
            }
            xi = mod_mul(xi, sys.x_, n);
        }
        for (uint8_t v : sys.lookup_)
            if (v == kUnset) fail("invalid-generator", "class construction does not cover Z_n");
        for (auto& cl : sys.classes_) std::sort(cl.begin(), cl.end());

        sys.P_.reserve(static_cast<size_t>(pair.q - 1));
        for (int64_t v = pair.p; v < n; v += pair.p) sys.P_.push_back(v);
        sys.Q_.reserve(static_cast<size_t>(pair.p - 1));
        for (int64_t v = pair.q; v < n; v += pair.q) sys.Q_.push_back(v);
        return sys;
    }

    const PrimePair& pair() const { return pair_; }
    int order() const { return order_; }
    int64_t n() const { return pair_.n; }
    int64_t g() const { return g_; }
    int64_t g1() const { return g_ % pair_.p; }
    int64_t g2() const { return g_ % pair_.q; }
    int64_t x() const { return x_; }
    /// |D_i| for this order.
    int64_t class_size() const { return (pair_.p - 1) * (pair_.q - 1) / order_; }
    const std::vector<int64_t>& d_class(int i) const { return classes_[static_cast<size_t>(i)]; }
    const std::vector<int64_t>& p_set() const { return P_; }
    const std::vector<int64_t>& q_set() const { return Q_; }

    ResidueClass classify(int64_t a) const {
        if (a < 0 || a >= pair_.n) fail("invalid-input", "residue out of range");
        uint8_t v = lookup_[static_cast<size_t>(a)];
        switch (v) {
            case kZero: return ResidueClass::zero();
            case kP: return ResidueClass::in_p();
            case kQ: return ResidueClass::in_q();
            default: return ResidueClass::in_d(v - kD);
        }
    }

  private:
    static constexpr uint8_t kUnset = 0xff, kZero = 0, kP = 1, kQ = 2, kD = 3;

    PrimePair pair_;
    int order_ = 4;
    int64_t g_ = 0;
    int64_t x_ = 0;
    std::vector<std::vector<int64_t>> classes_;
    std::vector<int64_t> P_, Q_;
    std::vector<uint8_t> lookup_;
};

/// The per-prime quartic data of Eq-style decompositions:
/// p = x1^2 + 4 y1^2, q = x2^2 + 4 y2^2 with the sign conventions fixed
/// by the primitive roots, and the composite pair (a, b) with
/// n = a^2 + 4 b^2, a = 1 (mod 4).
struct QuarticDecomposition {
    int64_t x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    int64_t a = 0, b = 0;
    int64_t M = 0;  // ((p-2)(q-2) - 1)/4
};

namespace detail {

inline std::pair<int64_t, int64_t> prime_quartic_xy(int64_t p, int64_t g) {
    if (p % 4 != 1) fail("invalid-input", "quartic decomposition requires p = 1 (mod 4)");
    for (int64_t u = 1; u * u < p; u += 2) {
        int64_t r = p - u * u;
        if (r % 4) continue;
        int64_t v = static_cast<int64_t>(std::sqrt(static_cast<double>(r / 4)));
        while (v * v < r / 4) ++v;
        while (v > 0 && v * v > r / 4) --v;
        if (v <= 0 || v * v != r / 4) continue;
        int64_t x = (u % 4 == 1) ? u : -u;
        // 2y = -(-g)^{(p-1)/4} * x (mod p) fixes the sign of y
        int64_t rhs = mod_mul(mod_pow(((-g) % p + p) % p, static_cast<uint64_t>((p - 1) / 4), p),
                              ((-x) % p + p) % p, p);
        if (((2 * v) % p + p) % p == rhs) return {x, v};
        if (((-2 * v) % p + p) % p == rhs) return {x, -v};
        fail("invariant-violation", "quartic sign congruence matched neither sign");
    }
    fail("invariant-violation", "no representation p = x^2 + 4y^2 found");
}

}  // namespace detail

inline QuarticDecomposition quartic_decomposition(const PrimePair& pair, int64_t g1, int64_t g2) {
    if (pair.p % 4 != 1 || pair.q % 4 != 1)
        fail("invalid-input", "quartic decomposition requires p = q = 1 (mod 4)");
    if (!is_primitive_root(g1 % pair.p, pair.p) || !is_primitive_root(g2 % pair.q, pair.q))
        fail("invalid-input", "g1, g2 must be primitive roots of p, q");
    QuarticDecomposition d;
    auto [x1, y1] = detail::prime_quartic_xy(pair.p, g1 % pair.p);
    auto [x2, y2] = detail::prime_quartic_xy(pair.q, g2 % pair.q);
    d.x1 = x1;
    d.y1 = y1;
    d.x2 = x2;
    d.y2 = y2;
    int64_t s = legendre_symbol(2, pair.p) * legendre_symbol(2, pair.q);
    d.a = x1 * x2 + 4 * s * y1 * y2;
    d.b = x1 * y2 - s * x2 * y1;
    d.M = ((pair.p - 2) * (pair.q - 2) - 1) / 4;
    if (d.a % 4 != 1 && (d.a % 4) != -3)
        fail("invariant-violation", "a = 1 (mod 4) failed");
    if (d.a * d.a + 4 * d.b * d.b != pair.n)
        fail("invariant-violation", "n = a^2 + 4b^2 failed");
    return d;
}

/// The five entry values of an order-4 cyclotomic-number table.
struct TableForms {
    int64_t A = 0, B = 0, C = 0, D = 0, E = 0;
};

/// Raw closed forms for the table entries. `same_mod8` selects the
/// p = q (mod 8) variant. Throws formula-inconsistency when any 8-fold
/// expression fails divisibility or nonnegativity.
inline TableForms cyclotomic_table_forms(int64_t a, int64_t b, int64_t M, bool same_mod8) {
    std::array<int64_t, 5> raw;
    if (!same_mod8) {
        raw = {-a + 2 * M + 3, -a - 4 * b + 2 * M - 1, 3 * a + 2 * M - 1,
               -a + 4 * b + 2 * M - 1, a + 2 * M + 1};
    } else {
        raw = {3 * a + 2 * M + 5, -a + 4 * b + 2 * M + 1, -a + 2 * M + 1,
               -a - 4 * b + 2 * M + 1, a + 2 * M - 1};
    }
    for (int64_t v : raw)
        if (v < 0 || v % 8 != 0)
            fail("formula-inconsistency",
                 "table entry 8X = " + std::to_string(v) + " is not a nonnegative multiple of 8");
    return {raw[0] / 8, raw[1] / 8, raw[2] / 8, raw[3] / 8, raw[4] / 8};
}

/// Letter layout of the two table variants, rows indexed by i, columns by j.
inline std::array<std::array<char, 4>, 4> cyclotomic_table_layout(bool same_mod8) {
    if (!same_mod8)
        return {{{'A', 'B', 'C', 'D'}, {'E', 'E', 'D', 'B'}, {'A', 'E', 'A', 'E'}, {'E', 'D', 'B', 'E'}}};
    return {{{'A', 'B', 'C', 'D'}, {'B', 'D', 'E', 'E'}, {'C', 'E', 'C', 'E'}, {'D', 'E', 'E', 'B'}}};
}

enum class TableSource { BruteForce, FormulaTable1, FormulaTable2 };

struct CyclotomicNumberTable {
    std::array<std::array<int64_t, 4>, 4> entries{};  // (i, j) = |(D_i + 1) n D_j|
    TableSource source = TableSource::BruteForce;
    // Populated by the formula path only:
    TableForms forms{};
    int64_t b_used = 0;  // signed b the forms were instantiated with

    bool operator==(const CyclotomicNumberTable& o) const { return entries == o.entries; }
};

/// (i, j) = |(D_i + 1) n D_j| by direct counting.
inline CyclotomicNumberTable cyclotomic_numbers_bruteforce(const CyclotomySystem& sys) {
    if (sys.order() != 4) fail("invalid-order", "cyclotomic numbers of order 4 need a d=4 system");
    CyclotomicNumberTable t;
    t.source = TableSource::BruteForce;
    int64_t n = sys.n();
    for (int i = 0; i < 4; ++i)
        for (int64_t u : sys.d_class(i)) {
            ResidueClass c = sys.classify((u + 1) % n);
            if (c.kind == ResidueClass::InD) ++t.entries[static_cast<size_t>(i)][static_cast<size_t>(c.index)];
        }
    return t;
}

/// Closed-form table. The printed forms match direct counting when
/// instantiated with (a, (2/q) * b); the Legendre factor is applied here
/// so the decomposition itself can keep its defining signs.
inline CyclotomicNumberTable cyclotomic_numbers_formula(const PrimePair& pair,
                                                        const QuarticDecomposition& dec) {
    bool same_mod8 = (pair.p - pair.q) % 8 == 0;
    int64_t b_tab = legendre_symbol(2, pair.q) * dec.b;
    TableForms f = cyclotomic_table_forms(dec.a, b_tab, dec.M, same_mod8);
    auto layout = cyclotomic_table_layout(same_mod8);
    CyclotomicNumberTable t;
    t.source = same_mod8 ? TableSource::FormulaTable2 : TableSource::FormulaTable1;
    t.forms = f;
    t.b_used = b_tab;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            switch (layout[i][j]) {
                case 'A': t.entries[i][j] = f.A; break;
                case 'B': t.entries[i][j] = f.B; break;
                case 'C': t.entries[i][j] = f.C; break;
                case 'D': t.entries[i][j] = f.D; break;
                default: t.entries[i][j] = f.E; break;
            }
        }
    return t;
}

/// Both representations n = a^2 + 4b^2 with a = 1 (mod 4), b > 0,
/// sorted by b. Exactly two must exist for n = pq, p = q = 1 (mod 4).
inline std::vector<std::pair<int64_t, int64_t>> two_representations(int64_t n) {
    std::vector<std::pair<int64_t, int64_t>> reps;
    for (int64_t b = 1; 4 * b * b < n; ++b) {
        int64_t r = n - 4 * b * b;
        int64_t u = static_cast<int64_t>(std::sqrt(static_cast<double>(r)));
        while (u * u < r) ++u;
        while (u > 0 && u * u > r) --u;
        if (u > 0 && u * u == r && u % 2 == 1) reps.emplace_back(u % 4 == 1 ? u : -u, b);
    }
    if (reps.size() != 2)
        fail("invariant-violation",
             "expected exactly two representations n = a^2 + 4b^2, found " +
                 std::to_string(reps.size()));
    return reps;
}

/// |D_i n (D_j + w)| grid for w in P u Q.
inline std::array<std::array<int64_t, 4>, 4> mixed_counts(int64_t w, const CyclotomySystem& sys) {
    ResidueClass wc = sys.classify(w);
    if (wc.kind != ResidueClass::InP && wc.kind != ResidueClass::InQ)
        fail("invalid-input", "w must lie in P or Q");
    std::array<std::array<int64_t, 4>, 4> grid{};
    int64_t n = sys.n();
    for (int j = 0; j < sys.order(); ++j)
        for (int64_t u : sys.d_class(j)) {
            ResidueClass c = sys.classify((u + w) % n);
            if (c.kind == ResidueClass::InD) ++grid[static_cast<size_t>(c.index)][static_cast<size_t>(j)];
        }
    return grid;
}

}  // namespace gencyclo
