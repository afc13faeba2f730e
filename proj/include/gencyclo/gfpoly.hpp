#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gencyclo/error.hpp"
#include "gencyclo/numthy.hpp"

namespace gencyclo {

/// Dense polynomial over F_l, coefficients ascending, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
class Poly {
  public:
    Poly() = default;
    explicit Poly(uint32_t modulus) : mod_(modulus) {
        if (modulus < 2) fail("invalid-input", "polynomial modulus must be >= 2");
    }
    Poly(uint32_t modulus, std::vector<uint32_t> coeffs) : Poly(modulus) {
        c_ = std::move(coeffs);
        for (auto& v : c_) v %= mod_;
        trim();
    }

    uint32_t modulus() const { return mod_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return static_cast<int64_t>(c_.size()) - 1; }
    uint32_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }

    bool operator==(const Poly& o) const { return mod_ == o.mod_ && c_ == o.c_; }

    static Poly zero(uint32_t l) { return Poly(l); }
    static Poly constant(uint32_t l, int64_t v) {
        int64_t r = ((v % l) + l) % l;
        Poly out(l);
        if (r) out.c_ = {static_cast<uint32_t>(r)};
        return out;
    }
    static Poly monomial(uint32_t l, size_t deg, uint32_t coeff = 1) {
        Poly out(l);
        if (coeff % l) {
            out.c_.assign(deg + 1, 0);
            out.c_[deg] = coeff % l;
        }
        return out;
    }
    /// x^n - 1 over F_l.
    static Poly xn_minus_one(uint32_t l, int64_t n) {
        Poly out(l);
        out.c_.assign(static_cast<size_t>(n) + 1, 0);
        out.c_[0] = l - 1;
        out.c_[static_cast<size_t>(n)] = 1;
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i > 0) {
                if (c_[i] != 1) s += "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    friend Poly poly_add(const Poly&, const Poly&);
    friend Poly poly_sub(const Poly&, const Poly&);
    friend Poly poly_mul(const Poly&, const Poly&);
    friend std::pair<Poly, Poly> poly_divmod(const Poly&, const Poly&);

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    uint32_t mod_ = 0;
    std::vector<uint32_t> c_;
};

inline void check_same_modulus(const Poly& a, const Poly& b) {
    if (a.modulus() != b.modulus())
        fail("modulus-mismatch", "polynomial operands have different moduli");
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    check_same_modulus(a, b);
    uint32_t l = a.modulus();
    Poly r(l);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = (a.coeff(i) + b.coeff(i)) % l;
    r.trim();
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    check_same_modulus(a, b);
    uint32_t l = a.modulus();
    Poly r(l);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = (a.coeff(i) + l - b.coeff(i) % l) % l;
    r.trim();
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    check_same_modulus(a, b);
    uint32_t l = a.modulus();
    if (a.is_zero() || b.is_zero()) return Poly(l);
    std::vector<uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
    // delayed reduction: terms < l^2, at most max-degree summands per slot
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        uint64_t ai = a.c_[i];
        for (size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += ai * b.c_[j];
    }
    Poly r(l);
    r.c_.resize(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<uint32_t>(acc[i] % l);
    r.trim();
    return r;
}

inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    check_same_modulus(a, b);
    if (b.is_zero()) fail("division-by-zero", "polynomial division by the zero polynomial");
    uint32_t l = a.modulus();
    if (a.degree() < b.degree()) return {Poly(l), a};
    std::vector<uint32_t> rem = a.coeffs();
    size_t db = b.c_.size() - 1;
    std::vector<uint32_t> quo(rem.size() - db, 0);
    uint64_t inv = static_cast<uint64_t>(mod_inverse(b.leading(), l));
    for (int64_t top = static_cast<int64_t>(rem.size()) - 1; top >= static_cast<int64_t>(db); --top) {
        if (rem[static_cast<size_t>(top)] == 0) continue;
        uint32_t f = static_cast<uint32_t>(rem[static_cast<size_t>(top)] * inv % l);
        size_t k = static_cast<size_t>(top) - db;
        quo[k] = f;
        for (size_t j = 0; j <= db; ++j) {
            uint64_t sub = static_cast<uint64_t>(f) * b.c_[j] % l;
            rem[k + j] = static_cast<uint32_t>((rem[k + j] + l - sub) % l);
        }
    }
    Poly qp(l, std::move(quo));
    Poly rp(l, std::move(rem));
    return {qp, rp};
}

inline Poly make_monic(const Poly& a) {
    if (a.is_zero()) return a;
    if (a.leading() == 1) return a;
    uint32_t l = a.modulus();
    uint64_t inv = static_cast<uint64_t>(mod_inverse(a.leading(), l));
    std::vector<uint32_t> c = a.coeffs();
    for (auto& v : c) v = static_cast<uint32_t>(v * inv % l);
    return Poly(l, std::move(c));
}

/// Monic gcd via Euclid.
inline Poly poly_gcd(Poly a, Poly b) {
    check_same_modulus(a, b);
    if (a.is_zero() && b.is_zero()) fail("undefined-gcd", "gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

inline Poly poly_mod(const Poly& a, const Poly& f) { return poly_divmod(a, f).second; }

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f) {
    return poly_mod(poly_mul(a, b), f);
}

inline Poly poly_powmod(Poly base, uint64_t e, const Poly& f) {
    Poly r = Poly::constant(f.modulus(), 1);
    base = poly_mod(base, f);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f);
        base = poly_mulmod(base, base, f);
        e >>= 1;
    }
    return r;
}

inline uint32_t poly_eval(const Poly& a, uint32_t x) {
    uint32_t l = a.modulus();
    uint64_t r = 0;
    for (size_t i = a.coeffs().size(); i-- > 0;) r = (r * x + a.coeff(i)) % l;
    return static_cast<uint32_t>(r);
}

enum class LcMethod { GcdMethod, BerlekampMassey };

inline const char* lc_method_name(LcMethod m) {
    return m == LcMethod::GcdMethod ? "GcdMethod" : "BerlekampMassey";
}

struct LinearComplexityResult {
    int64_t L = 0;
    Poly minimal_poly;  // monic v(x) = (x^n - 1)/h(x)
    Poly h;             // monic gcd(s(x), x^n - 1)
    LcMethod method = LcMethod::GcdMethod;
};

/// Definition-based linear complexity of the n-periodic sequence with
/// generating polynomial s(x):  L = n - deg gcd(s(x), x^n - 1).
inline LinearComplexityResult linear_complexity_gcd(const Poly& s, int64_t n) {
    if (n < 1) fail("invalid-input", "period must be positive");
    uint32_t l = s.modulus();
    Poly xn1 = Poly::xn_minus_one(l, n);
    LinearComplexityResult res;
    res.method = LcMethod::GcdMethod;
    if (s.is_zero()) {
        res.h = make_monic(xn1);
        res.minimal_poly = Poly::constant(l, 1);
        res.L = 0;
        return res;
    }
    res.h = poly_gcd(xn1, s);
    auto [v, rem] = poly_divmod(xn1, res.h);
    res.minimal_poly = make_monic(v);
    res.L = n - res.h.degree();
    return res;
}

struct BerlekampMasseyResult {
    int64_t L = 0;
    Poly connection;  // C(x), C(0) = 1: s_i + sum_{j=1..L} C_j s_{i-j} = 0
};

/// Classical Berlekamp-Massey over F_l on an arbitrary symbol stream.
inline BerlekampMasseyResult berlekamp_massey(std::span<const uint32_t> stream, uint32_t l) {
    std::vector<uint32_t> C{1}, B{1};
    int64_t L = 0, m = 1;
    uint32_t b = 1;
    for (size_t i = 0; i < stream.size(); ++i) {
        uint64_t d = stream[i] % l;
        for (int64_t j = 1; j <= L; ++j)
            d += static_cast<uint64_t>(C[static_cast<size_t>(j)]) * stream[i - static_cast<size_t>(j)];
        uint32_t disc = static_cast<uint32_t>(d % l);
        if (disc == 0) {
            ++m;
        } else if (2 * L <= static_cast<int64_t>(i)) {
            std::vector<uint32_t> T = C;
            uint64_t coef = static_cast<uint64_t>(disc) * static_cast<uint64_t>(mod_inverse(b, l)) % l;
            if (C.size() < B.size() + static_cast<size_t>(m)) C.resize(B.size() + static_cast<size_t>(m), 0);
            for (size_t j = 0; j < B.size(); ++j) {
                uint64_t sub = coef * B[j] % l;
                C[j + static_cast<size_t>(m)] =
                    static_cast<uint32_t>((C[j + static_cast<size_t>(m)] + l - sub) % l);
            }
            L = static_cast<int64_t>(i) + 1 - L;
            B = std::move(T);
            b = disc;
            m = 1;
        } else {
            uint64_t coef = static_cast<uint64_t>(disc) * static_cast<uint64_t>(mod_inverse(b, l)) % l;
            if (C.size() < B.size() + static_cast<size_t>(m)) C.resize(B.size() + static_cast<size_t>(m), 0);
            for (size_t j = 0; j < B.size(); ++j) {
                uint64_t sub = coef * B[j] % l;
                C[j + static_cast<size_t>(m)] =
                    static_cast<uint32_t>((C[j + static_cast<size_t>(m)] + l - sub) % l);
            }
            ++m;
        }
    }
    BerlekampMasseyResult out;
    out.L = L;
    out.connection = Poly(l, std::move(C));
    return out;
}

/// Monic minimal polynomial from a Berlekamp-Massey run on >= 2L symbols
/// of a periodic stream. C and v satisfy the same recurrence orientation
/// sum_j v_j s_{i-j} = 0, so v is C up to the monic normalization.
inline Poly bm_minimal_poly(const BerlekampMasseyResult& bm, uint32_t l) {
    (void)l;
    return make_monic(bm.connection);
}

/// Regenerate a length-`count` prefix from the first L symbols using the
/// minimal polynomial v (v_0 != 0): v_0 s_i = -sum_{j>=1} v_j s_{i-j}.
inline std::vector<uint32_t> lfsr_regenerate(const Poly& v, std::span<const uint32_t> seed,
                                             size_t count) {
    uint32_t l = v.modulus();
    int64_t L = v.degree();
    if (L < 0 || v.coeff(0) == 0)
        fail("invalid-input", "minimal polynomial must have a nonzero constant term");
    std::vector<uint32_t> s(seed.begin(), seed.end());
    if (static_cast<int64_t>(s.size()) < L) fail("invalid-input", "seed shorter than L");
    s.resize(static_cast<size_t>(L));
    if (count <= s.size()) {
        s.resize(count);
        return s;
    }
    uint64_t inv0 = static_cast<uint64_t>(mod_inverse(v.coeff(0), l));
    while (s.size() < count) {
        size_t i = s.size();
        uint64_t acc = 0;
        for (int64_t j = 1; j <= L; ++j)
            acc += static_cast<uint64_t>(v.coeff(static_cast<size_t>(j))) * s[i - static_cast<size_t>(j)];
        uint32_t val = static_cast<uint32_t>((l - acc % l) % l);
        s.push_back(static_cast<uint32_t>(static_cast<uint64_t>(val) * inv0 % l));
    }
    return s;
}

}  // namespace gencyclo
