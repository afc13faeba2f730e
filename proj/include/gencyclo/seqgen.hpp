#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "gencyclo/cyclotomy.hpp"
#include "gencyclo/error.hpp"
#include "gencyclo/gfpoly.hpp"

namespace gencyclo {

/// Family parameters: symbol 1 on P and on the classes in S, symbol rho
/// at index 0, symbol 0 elsewhere (notably everywhere on Q).
struct SequenceSpec {
    int order = 4;
    std::vector<int> S;  // nonempty subset of {0..order-1}
    int rho = 1;

    /// The sequence the closed-form results are about: rho=1, S={0,1}, d=4.
    static SequenceSpec order4_standard() { return {4, {0, 1}, 1}; }
};

/// One period of symbols embedded into F_l.
struct PeriodicSequence {
    int64_t period = 0;
    uint32_t modulus = 2;
    std::vector<uint32_t> symbols;
};

inline PeriodicSequence generate(const CyclotomySystem& sys, const SequenceSpec& spec,
                                 uint32_t l) {
    if (spec.order != sys.order()) fail("invalid-input", "spec order must match system order");
    if (spec.S.empty()) fail("invalid-input", "S must be nonempty");
    for (int i : spec.S)
        if (i < 0 || i >= spec.order) fail("invalid-input", "S must be a subset of {0..d-1}");
    if (spec.rho != 0 && spec.rho != 1) fail("invalid-input", "rho must be 0 or 1");
    if (!is_prime(l) || sys.n() % l == 0)
        fail("invalid-modulus", "l must be a prime with gcd(l, n) = 1");
    PeriodicSequence seq;
    seq.period = sys.n();
    seq.modulus = l;
    seq.symbols.assign(static_cast<size_t>(sys.n()), 0);
    seq.symbols[0] = static_cast<uint32_t>(spec.rho % l);
    for (int64_t v : sys.p_set()) seq.symbols[static_cast<size_t>(v)] = 1 % l;
    for (int i : spec.S)
        for (int64_t v : sys.d_class(i)) seq.symbols[static_cast<size_t>(v)] = 1 % l;
    return seq;
}

/// s(x) = sum_i s_i x^i, degree < n.
inline Poly sequence_polynomial(const PeriodicSequence& seq) {
    return Poly(seq.modulus, seq.symbols);
}

/// t(x) = sum_{i in D_1} x^i + sum_{i in D_2} x^i.
inline Poly companion_polynomial(const CyclotomySystem& sys, uint32_t l) {
    if (sys.order() != 4) fail("invalid-order", "companion polynomial needs a d=4 system");
    if (!is_prime(l) || sys.n() % l == 0)
        fail("invalid-modulus", "l must be a prime with gcd(l, n) = 1");
    std::vector<uint32_t> c(static_cast<size_t>(sys.n()), 0);
    for (int64_t v : sys.d_class(1)) c[static_cast<size_t>(v)] = 1 % l;
    for (int64_t v : sys.d_class(2)) c[static_cast<size_t>(v)] = 1 % l;
    return Poly(l, std::move(c));
}

inline int64_t hamming_weight(const PeriodicSequence& seq) {
    int64_t w = 0;
    for (uint32_t v : seq.symbols) w += v != 0;
    return w;
}

inline LinearComplexityResult linear_complexity_gcd(const PeriodicSequence& seq) {
    if (seq.symbols.empty()) fail("invalid-input", "empty period");
    return linear_complexity_gcd(sequence_polynomial(seq), seq.period);
}

/// Berlekamp-Massey fed two periods, enough to pin L <= n.
inline BerlekampMasseyResult berlekamp_massey(const PeriodicSequence& seq) {
    std::vector<uint32_t> stream(seq.symbols);
    stream.insert(stream.end(), seq.symbols.begin(), seq.symbols.end());
    return berlekamp_massey(stream, seq.modulus);
}

}  // namespace gencyclo
