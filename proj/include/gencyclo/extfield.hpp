#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gencyclo/error.hpp"
#include "gencyclo/gfpoly.hpp"
#include "gencyclo/numthy.hpp"
#include "gencyclo/seqgen.hpp"

namespace gencyclo {

/// Full zero-of-s scans and d_j(x) expansion run only below this period.
inline constexpr int64_t kFullScanCap = 300;
/// Class-sum diagnostics (class values, eta, quadratic relations) cap.
inline constexpr int64_t kClassSumCap = 5000;

/// F_{l^m} with m = ord_n(l), an irreducible modulus found by seeded
/// search-and-test, and a fixed n-th primitive root zeta. Immutable after
/// construction; the zeta power table is built eagerly so all queries are
/// const and thread-safe.
class ExtField {
  public:
    using Elem = std::vector<uint32_t>;  // dense, length m, reduced

    static ExtField build(uint32_t l, int64_t n) {
        if (!is_prime(l)) fail("invalid-modulus", "l must be prime");
        if (n < 2 || n % l == 0) fail("invalid-modulus", "build_context requires gcd(l, n) = 1");
        ExtField f;
        f.l_ = l;
        f.n_ = n;
        f.m_ = mult_order(l, n);
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<uint64_t>(l) << 32) ^
                            static_cast<uint64_t>(n));
        f.find_irreducible(rng);
        f.find_zeta(rng);
        f.build_power_table();
        return f;
    }

    uint32_t prime() const { return l_; }
    int64_t period() const { return n_; }
    int64_t degree() const { return m_; }
    Poly modulus_poly() const { return Poly(l_, f_); }
    const Elem& zeta() const { return tab_[1]; }

    Elem zero() const { return Elem(static_cast<size_t>(m_), 0); }
    Elem one() const {
        Elem e = zero();
        e[0] = 1 % l_;
        return e;
    }
    Elem from_const(int64_t v) const {
        Elem e = zero();
        e[0] = static_cast<uint32_t>(((v % l_) + l_) % l_);
        return e;
    }
    bool is_zero(const Elem& a) const {
        for (uint32_t c : a)
            if (c) return false;
        return true;
    }
    bool is_one(const Elem& a) const { return a == one(); }
    /// In-base-field test plus the residue when it holds.
    bool base_field_value(const Elem& a, uint32_t& out) const {
        for (size_t i = 1; i < a.size(); ++i)
            if (a[i]) return false;
        out = a.empty() ? 0 : a[0];
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(a);
        for (size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + b[i]) % l_;
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(a);
        for (size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + l_ - b[i]) % l_;
        return r;
    }
    Elem scale(const Elem& a, int64_t c) const {
        uint64_t cc = static_cast<uint64_t>(((c % l_) + l_) % l_);
        Elem r(a);
        for (auto& v : r) v = static_cast<uint32_t>(v * cc % l_);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const { return mulmod(a, b, f_, l_); }

    Elem pow(Elem base, uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    /// zeta^k for k in [0, n).
    const Elem& zeta_pow(int64_t k) const { return tab_[static_cast<size_t>(k)]; }

    /// sum of zeta^(scale*i mod n) over the index set.
    Elem class_sum(std::span<const int64_t> idxs, int64_t scale = 1) const {
        std::vector<uint64_t> acc(static_cast<size_t>(m_), 0);
        scale = ((scale % n_) + n_) % n_;
        for (int64_t i : idxs) {
            const Elem& t = tab_[static_cast<size_t>(mod_mul(scale, i, n_))];
            for (size_t j = 0; j < acc.size(); ++j) acc[j] += t[j];
        }
        Elem r(static_cast<size_t>(m_));
        for (size_t j = 0; j < r.size(); ++j) r[j] = static_cast<uint32_t>(acc[j] % l_);
        return r;
    }

    /// Value of `poly` (degree < anything; exponents reduced mod n) at zeta^a.
    Elem eval_at_power(const Poly& poly, int64_t a) const {
        if (poly.modulus() != l_) fail("modulus-mismatch", "polynomial modulus differs from field");
        a = ((a % n_) + n_) % n_;
        std::vector<uint64_t> acc(static_cast<size_t>(m_), 0);
        const auto& c = poly.coeffs();
        int64_t pos = 0;  // a*i mod n, tracked incrementally
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i]) {
                const Elem& t = tab_[static_cast<size_t>(pos)];
                uint64_t ci = c[i];
                for (size_t j = 0; j < acc.size(); ++j) acc[j] += ci * t[j];
            }
            pos += a;
            if (pos >= n_) pos -= n_;
        }
        Elem r(static_cast<size_t>(m_));
        for (size_t j = 0; j < r.size(); ++j) r[j] = static_cast<uint32_t>(acc[j] % l_);
        return r;
    }

    std::string str(const Elem& a) const { return Poly(l_, a).str(); }

  private:
    static Elem mulmod(const Elem& a, const Elem& b, const std::vector<uint32_t>& f, uint32_t l) {
        size_t m = f.size() - 1;
        if (m == 1) {
            // modulus z - c: product is a plain residue multiply
            Elem r(1);
            r[0] = static_cast<uint32_t>(static_cast<uint64_t>(a[0]) * b[0] % l);
            return r;
        }
        std::vector<uint64_t> acc(2 * m - 1, 0);
        for (size_t i = 0; i < m; ++i) {
            if (!a[i]) continue;
            uint64_t ai = a[i];
            for (size_t j = 0; j < m; ++j) acc[i + j] += ai * b[j];
        }
        // reduce by the monic modulus, high to low
        for (size_t i = 2 * m - 2; i >= m; --i) {
            uint64_t c = acc[i] % l;
            if (c) {
                for (size_t j = 0; j < m; ++j) acc[i - m + j] += c * (l - f[j]);
            }
        }
        Elem r(m);
        for (size_t j = 0; j < m; ++j) r[j] = static_cast<uint32_t>(acc[j] % l);
        return r;
    }

    Elem pow_bits(Elem base, const std::vector<bool>& bits_msb_first) const {
        Elem r = one();
        for (bool bit : bits_msb_first) {
            r = mul(r, r);
            if (bit) r = mul(r, base);
        }
        return r;
    }

    /// MSB-first bits of (l^m - 1)/n via base-2^32 limbs.
    std::vector<bool> zeta_exponent_bits() const {
        std::vector<uint64_t> limbs{1};  // little-endian base 2^32
        for (int64_t i = 0; i < m_; ++i) {
            uint64_t carry = 0;
            for (auto& w : limbs) {
                uint64_t v = w * l_ + carry;
                w = v & 0xffffffffULL;
                carry = v >> 32;
            }
            while (carry) {
                limbs.push_back(carry & 0xffffffffULL);
                carry >>= 32;
            }
        }
        // minus one (l^m >= 2, no deep borrow chain issues)
        size_t k = 0;
        while (limbs[k] == 0) limbs[k++] = 0xffffffffULL;
        --limbs[k];
        // divide by n
        uint64_t rem = 0;
        for (size_t i = limbs.size(); i-- > 0;) {
            unsigned __int128 cur = (static_cast<unsigned __int128>(rem) << 32) | limbs[i];
            limbs[i] = static_cast<uint64_t>(cur / static_cast<uint64_t>(n_));
            rem = static_cast<uint64_t>(cur % static_cast<uint64_t>(n_));
        }
        if (rem != 0) fail("invariant-violation", "n does not divide l^m - 1");
        std::vector<bool> bits;
        bool seen = false;
        for (size_t i = limbs.size(); i-- > 0;) {
            for (int bit = 31; bit >= 0; --bit) {
                bool v = (limbs[i] >> bit) & 1;
                if (v) seen = true;
                if (seen) bits.push_back(v);
            }
        }
        if (bits.empty()) bits.push_back(false);
        return bits;
    }

    /// Search-and-test over random monic degree-m candidates. Sequential
    /// Frobenius powers x^(l^k) mod f; gcd screens at small k and at the
    /// Rabin checkpoints k = m/r, equality at k = m.
    void find_irreducible(std::mt19937_64& rng) {
        uint32_t l = l_;
        size_t m = static_cast<size_t>(m_);
        if (m == 1) {
            f_ = {1u, 1u};  // z + 1; any monic degree-1 polynomial is irreducible
            return;
        }
        std::vector<int64_t> mfactors = prime_factors(m_);
        std::vector<int64_t> checkpoints;
        for (int64_t r : mfactors) checkpoints.push_back(m_ / r);
        std::uniform_int_distribution<uint32_t> coeff(0, l - 1);
        std::uniform_int_distribution<uint32_t> nonzero(1, l - 1);
        Elem x_elem(m, 0);
        x_elem[1] = 1;
        for (;;) {
            std::vector<uint32_t> cand(m + 1);
            for (size_t i = 1; i < m; ++i) cand[i] = coeff(rng);
            cand[0] = nonzero(rng);  // nonzero constant term, x never divides
            cand[m] = 1;
            Elem w = x_elem;
            bool ok = true;
            for (int64_t k = 1; k <= m_ && ok; ++k) {
                // w <- w^l mod cand
                Elem base = w;
                Elem acc(m, 0);
                acc[0] = 1;
                uint32_t e = l;
                while (e) {
                    if (e & 1) acc = mulmod(acc, base, cand, l);
                    base = mulmod(base, base, cand, l);
                    e >>= 1;
                }
                w = std::move(acc);
                if (k == m_) {
                    ok = (w == x_elem);
                } else if (k <= 16 ||
                           std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
                    Poly diff = poly_sub(Poly(l, w), Poly(l, x_elem));
                    if (diff.is_zero()) {
                        ok = false;  // x^(l^k) = x with k < m: splits into small factors
                    } else {
                        Poly g = poly_gcd(Poly(l, cand), diff);
                        if (g.degree() > 0) ok = false;
                    }
                }
            }
            if (ok) {
                f_ = std::move(cand);
                return;
            }
        }
    }

    void find_zeta(std::mt19937_64& rng) {
        std::vector<bool> bits = zeta_exponent_bits();
        std::vector<int64_t> nfactors = prime_factors(n_);
        std::uniform_int_distribution<uint32_t> coeff(0, l_ - 1);
        for (;;) {
            Elem w(static_cast<size_t>(m_));
            for (auto& c : w) c = coeff(rng);
            if (is_zero(w)) continue;
            Elem z = pow_bits(w, bits);
            if (is_zero(z) || is_one(z)) continue;
            bool exact = true;
            for (int64_t r : nfactors)
                if (is_one(pow(z, static_cast<uint64_t>(n_ / r)))) {
                    exact = false;
                    break;
                }
            if (!exact) continue;
            if (!is_one(pow(z, static_cast<uint64_t>(n_))))
                fail("invariant-violation", "zeta^n != 1");
            zeta_ = std::move(z);
            return;
        }
    }

    void build_power_table() {
        tab_.resize(static_cast<size_t>(n_));
        tab_[0] = one();
        for (size_t k = 1; k < tab_.size(); ++k) tab_[k] = mul(tab_[k - 1], zeta_);
    }

    uint32_t l_ = 2;
    int64_t n_ = 0;
    int64_t m_ = 0;
    std::vector<uint32_t> f_;  // monic modulus, ascending, length m+1
    Elem zeta_;
    std::vector<Elem> tab_;  // zeta^0 .. zeta^(n-1)
};

/// Process-wide cache: (p, q) and (q, p) sweeps share (l, n) contexts,
/// and repeated verifies reuse the expensive construction.
inline std::shared_ptr<const ExtField> shared_context(uint32_t l, int64_t n) {
    struct Entry {
        std::once_flag once;
        std::shared_ptr<const ExtField> ctx;
    };
    static std::mutex map_mutex;
    static std::unordered_map<uint64_t, std::shared_ptr<Entry>> cache;
    uint64_t key = (static_cast<uint64_t>(l) << 40) ^ static_cast<uint64_t>(n);
    std::shared_ptr<Entry> entry;
    {
        std::lock_guard<std::mutex> lk(map_mutex);
        auto& slot = cache[key];
        if (!slot) slot = std::make_shared<Entry>();
        entry = slot;
    }
    std::call_once(entry->once,
                   [&] { entry->ctx = std::make_shared<const ExtField>(ExtField::build(l, n)); });
    return entry->ctx;
}

inline ExtField build_context(uint32_t l, int64_t n) { return ExtField::build(l, n); }

// ---------------------------------------------------------------------------
// class-sum values of the standard order-4 sequence

struct ClassSums {
    ExtField::Elem s;     // s(zeta) = 1 + sum_P + sum_D0 + sum_D1
    ExtField::Elem t;     // t(zeta) = sum_D1 + sum_D2
    ExtField::Elem eta0;  // sum over C_0 = D_0 u D_2
    ExtField::Elem sum_p;
    ExtField::Elem sum_q;
    std::array<ExtField::Elem, 4> d;  // per-class sums
};

inline ClassSums class_sums(const CyclotomySystem& sys, const ExtField& ctx) {
    ClassSums cs;
    for (int j = 0; j < 4; ++j) cs.d[static_cast<size_t>(j)] = ctx.class_sum(sys.d_class(j));
    cs.sum_p = ctx.class_sum(sys.p_set());
    cs.sum_q = ctx.class_sum(sys.q_set());
    cs.s = ctx.add(ctx.add(ctx.one(), cs.sum_p), ctx.add(cs.d[0], cs.d[1]));
    cs.t = ctx.add(cs.d[1], cs.d[2]);
    cs.eta0 = ctx.add(cs.d[0], cs.d[2]);
    return cs;
}

/// s(zeta^a) for the (3.1) sequence, via class sums scaled by a.
inline ExtField::Elem sequence_value_at(const CyclotomySystem& sys, const ExtField& ctx,
                                        int64_t a) {
    auto v = ctx.add(ctx.one(), ctx.class_sum(sys.p_set(), a));
    v = ctx.add(v, ctx.class_sum(sys.d_class(0), a));
    return ctx.add(v, ctx.class_sum(sys.d_class(1), a));
}

// ---------------------------------------------------------------------------
// identity checks

struct ClassValueEntry {
    std::string klass;
    bool ok = false;
};

struct ClassValueReport {
    std::array<ClassValueEntry, 6> entries;
    bool all_ok = false;
};

/// s(zeta^a) depends only on the class of a. One representative per class:
/// the value must equal s(zeta), t(zeta), 1 - s(zeta), 1 - t(zeta),
/// -(p-1)/2, (q+1)/2 respectively.
inline ClassValueReport class_value_check(const CyclotomySystem& sys, const ExtField& ctx) {
    ClassSums cs = class_sums(sys, ctx);
    const auto& one = ctx.one();
    std::array<std::pair<int64_t, ExtField::Elem>, 6> cases = {{
        {sys.d_class(0).front(), cs.s},
        {sys.d_class(1).front(), cs.t},
        {sys.d_class(2).front(), ctx.sub(one, cs.s)},
        {sys.d_class(3).front(), ctx.sub(one, cs.t)},
        {sys.p_set().front(), ctx.from_const(-(sys.pair().p - 1) / 2)},
        {sys.q_set().front(), ctx.from_const((sys.pair().q + 1) / 2)},
    }};
    static const char* names[6] = {"D0", "D1", "D2", "D3", "P", "Q"};
    ClassValueReport rep;
    rep.all_ok = true;
    for (size_t i = 0; i < 6; ++i) {
        auto val = sequence_value_at(sys, ctx, cases[i].first);
        rep.entries[i] = {names[i], val == cases[i].second};
        rep.all_ok &= rep.entries[i].ok;
    }
    return rep;
}

struct EtaReport {
    ExtField::Elem eta0;
    bool identity_ok = false;    // eta0(1 - eta0) = -(n-1)/4
    bool in_base01 = false;      // eta0 in {0, 1}
    bool quarter_zero = false;   // (n-1)/4 = 0 (mod l)
    bool equivalence_ok = false; // in_base01 <=> quarter_zero
};

inline EtaReport eta_identity_check(const CyclotomySystem& sys, const ExtField& ctx) {
    if (sys.n() % 4 != 1) fail("inapplicable", "eta identity requires n = 1 (mod 4)");
    EtaReport rep;
    ClassSums cs = class_sums(sys, ctx);
    rep.eta0 = cs.eta0;
    auto lhs = ctx.mul(cs.eta0, ctx.sub(ctx.one(), cs.eta0));
    rep.identity_ok = lhs == ctx.from_const(-((sys.n() - 1) / 4));
    rep.in_base01 = ctx.is_zero(cs.eta0) || ctx.is_one(cs.eta0);
    rep.quarter_zero = ((sys.n() - 1) / 4) % ctx.prime() == 0;
    rep.equivalence_ok = rep.in_base01 == rep.quarter_zero;
    return rep;
}

struct QuadraticReport {
    bool same_mod8 = false;   // selects the (b/2) form vs the (b(...) - 1)/2 form
    int64_t b_used = 0;       // (2/q)-adjusted b the relations hold with
    bool s_relation_ok = false;
    bool t_relation_ok = false;
    bool raw_sign_ok = false;  // whether the unadjusted decomposition b also works
    std::string grouping;      // the reading of the relation that holds
    std::string residual_s;    // nonempty iff s_relation_ok is false
    std::string residual_t;
};

/// The quadratic character-sum relations behind the quarter-test case.
/// p = q (mod 8):  s(s-1) = (b/2)(2 eta0 - 1), t-side with opposite sign.
/// p != q (mod 8): s(s-1) = (b(2 eta0 - 1) - 1)/2, t(t-1) = -(b(2 eta0 - 1) + 1)/2.
/// Both use the (2/q)-adjusted b that the cyclotomic-number tables follow.
inline QuadraticReport quadratic_relation_check(const CyclotomySystem& sys, const ExtField& ctx,
                                                const QuarticDecomposition& dec) {
    const PrimePair& pair = sys.pair();
    uint32_t l = ctx.prime();
    if (((sys.n() - 1) / 4) % l != 0)
        fail("inapplicable", "quadratic relations require (n-1)/4 = 0 (mod l)");
    QuadraticReport rep;
    rep.same_mod8 = (pair.p - pair.q) % 8 == 0;
    int64_t b_eff = legendre_symbol(2, pair.q) * dec.b;
    rep.b_used = b_eff;
    ClassSums cs = class_sums(sys, ctx);
    auto one = ctx.one();
    auto ss1 = ctx.mul(cs.s, ctx.sub(cs.s, one));
    auto tt1 = ctx.mul(cs.t, ctx.sub(cs.t, one));
    auto two_eta_m1 = ctx.sub(ctx.add(cs.eta0, cs.eta0), one);
    if (rep.same_mod8) {
        rep.grouping = "s(s-1) = (b/2)(2*eta0 - 1)";
        auto rhs = ctx.scale(two_eta_m1, b_eff / 2);
        auto rhs_raw = ctx.scale(two_eta_m1, dec.b / 2);
        rep.s_relation_ok = ss1 == rhs;
        rep.t_relation_ok = tt1 == ctx.sub(ctx.zero(), rhs);
        rep.raw_sign_ok = (ss1 == rhs_raw) && (tt1 == ctx.sub(ctx.zero(), rhs_raw));
        if (!rep.s_relation_ok) rep.residual_s = ctx.str(ctx.sub(ss1, rhs));
        if (!rep.t_relation_ok) rep.residual_t = ctx.str(ctx.sub(tt1, ctx.sub(ctx.zero(), rhs)));
    } else {
        rep.grouping = "s(s-1) = (b(2*eta0 - 1) - 1)/2";
        int64_t inv2 = mod_inverse(2, l);
        auto inner = ctx.scale(two_eta_m1, b_eff);
        auto rhs_s = ctx.scale(ctx.sub(inner, one), inv2);
        auto rhs_t = ctx.scale(ctx.add(inner, one), l - inv2);
        auto inner_raw = ctx.scale(two_eta_m1, dec.b);
        rep.s_relation_ok = ss1 == rhs_s;
        rep.t_relation_ok = tt1 == rhs_t;
        rep.raw_sign_ok = (ss1 == ctx.scale(ctx.sub(inner_raw, one), inv2)) &&
                          (tt1 == ctx.scale(ctx.add(inner_raw, one), l - inv2));
        if (!rep.s_relation_ok) rep.residual_s = ctx.str(ctx.sub(ss1, rhs_s));
        if (!rep.t_relation_ok) rep.residual_t = ctx.str(ctx.sub(tt1, rhs_t));
    }
    return rep;
}

struct ClassFactor {
    std::vector<ExtField::Elem> coeffs;  // d_j(x), ascending, degree e
    bool base_field = false;             // every coefficient lies in F_l
};

/// d_j(x) = prod_{i in D_j} (x - zeta^i), expanded.
inline ClassFactor class_factor(const CyclotomySystem& sys, const ExtField& ctx, int j,
                                int64_t cap = kFullScanCap) {
    if (sys.n() > cap) fail("too-large", "class_factor runs only below the diagnostics cap");
    ClassFactor out;
    out.coeffs = {ctx.one()};
    for (int64_t i : sys.d_class(j)) {
        const auto& root = ctx.zeta_pow(i);
        std::vector<ExtField::Elem> next(out.coeffs.size() + 1, ctx.zero());
        for (size_t k = 0; k < out.coeffs.size(); ++k) {
            next[k + 1] = ctx.add(next[k + 1], out.coeffs[k]);
            next[k] = ctx.sub(next[k], ctx.mul(out.coeffs[k], root));
        }
        out.coeffs = std::move(next);
    }
    out.base_field = true;
    for (const auto& c : out.coeffs) {
        uint32_t v;
        if (!ctx.base_field_value(c, v)) {
            out.base_field = false;
            break;
        }
    }
    return out;
}

/// #{a in [0, n) : poly(zeta^a) = 0}; with poly = s this is n - L.
inline int64_t count_vanishing_powers(const Poly& poly, const ExtField& ctx) {
    int64_t count = 0;
    for (int64_t a = 0; a < ctx.period(); ++a)
        if (ctx.is_zero(ctx.eval_at_power(poly, a))) ++count;
    return count;
}

/// prod_j d_j(x) * (x^p - 1)(x^q - 1)/(x - 1) == x^n - 1 over the extension.
inline bool class_factor_product_ok(const CyclotomySystem& sys, const ExtField& ctx) {
    std::vector<ExtField::Elem> prod{ctx.one()};
    for (int j = 0; j < 4; ++j) {
        auto dj = class_factor(sys, ctx, j);
        std::vector<ExtField::Elem> next(prod.size() + dj.coeffs.size() - 1, ctx.zero());
        for (size_t i = 0; i < prod.size(); ++i)
            for (size_t k = 0; k < dj.coeffs.size(); ++k)
                next[i + k] = ctx.add(next[i + k], ctx.mul(prod[i], dj.coeffs[k]));
        prod = std::move(next);
    }
    uint32_t l = ctx.prime();
    Poly base = poly_divmod(poly_mul(Poly::xn_minus_one(l, sys.pair().p),
                                     Poly::xn_minus_one(l, sys.pair().q)),
                            Poly(l, {l - 1, 1}))
                    .first;
    std::vector<ExtField::Elem> full(prod.size() + static_cast<size_t>(base.degree()), ctx.zero());
    for (size_t i = 0; i < prod.size(); ++i)
        for (size_t k = 0; k <= static_cast<size_t>(base.degree()); ++k)
            if (base.coeff(k))
                full[i + k] = ctx.add(full[i + k], ctx.scale(prod[i], base.coeff(k)));
    if (full.size() != static_cast<size_t>(sys.n()) + 1) return false;
    for (size_t i = 0; i < full.size(); ++i) {
        uint32_t v;
        if (!ctx.base_field_value(full[i], v)) return false;
        uint32_t want = i == 0 ? l - 1 : (i == full.size() - 1 ? 1 : 0);
        if (v != want) return false;
    }
    return true;
}

}  // namespace gencyclo
