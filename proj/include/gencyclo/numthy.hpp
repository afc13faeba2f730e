#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "gencyclo/error.hpp"

namespace gencyclo {

inline constexpr int64_t kMaxPrime = 10000;  // validation cap for p, q

inline int64_t mod_mul(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

/// base^exp mod m by repeated squaring; m >= 2.
inline int64_t mod_pow(int64_t base, uint64_t exp, int64_t m) {
    if (m < 2) fail("invalid-input", "mod_pow requires modulus >= 2");
    int64_t r = 1 % m;
    int64_t b = ((base % m) + m) % m;
    while (exp) {
        if (exp & 1) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
        exp >>= 1;
    }
    return r;
}

inline bool is_prime(int64_t x) {
    if (x < 2) return false;
    for (int64_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

/// Distinct prime factors, ascending.
inline std::vector<int64_t> prime_factors(int64_t x) {
    std::vector<int64_t> fs;
    for (int64_t d = 2; d * d <= x; ++d) {
        if (x % d == 0) {
            fs.push_back(d);
            while (x % d == 0) x /= d;
        }
    }
    if (x > 1) fs.push_back(x);
    return fs;
}

/// Legendre symbol (a/p) in {-1, 0, 1} via Euler's criterion.
inline int legendre_symbol(int64_t a, int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        fail("invalid-input", "legendre_symbol requires an odd prime");
    int64_t r = mod_pow(a, static_cast<uint64_t>((p - 1) / 2), p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

/// Smallest k >= 1 with a^k = 1 (mod m).
inline int64_t mult_order(int64_t a, int64_t m) {
    a = ((a % m) + m) % m;
    if (std::gcd(a, m) != 1) fail("not-a-unit", "mult_order requires gcd(a, m) = 1");
    if (m == 1) return 1;
    // Euler phi via factorization of m, then strip prime factors.
    int64_t phi = m;
    for (int64_t f : prime_factors(m)) phi = phi / f * (f - 1);
    int64_t ord = phi;
    for (int64_t f : prime_factors(phi)) {
        while (ord % f == 0 && mod_pow(a, static_cast<uint64_t>(ord / f), m) == 1) ord /= f;
    }
    return ord;
}

inline bool is_primitive_root(int64_t a, int64_t p) {
    if (a % p == 0) return false;
    for (int64_t f : prime_factors(p - 1))
        if (mod_pow(a, static_cast<uint64_t>((p - 1) / f), p) == 1) return false;
    return true;
}

/// Smallest positive primitive root of the odd prime p.
inline int64_t primitive_root(int64_t p) {
    if (p < 3 || !is_prime(p)) fail("invalid-input", "primitive_root requires an odd prime");
    for (int64_t g = 2; g < p; ++g)
        if (is_primitive_root(g, p)) return g;
    fail("invalid-input", "no primitive root found");  // unreachable for prime p
}

/// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    int64_t x1, y1;
    int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Inverse of a mod m; requires gcd(a, m) = 1.
inline int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t x, y;
    int64_t g = ext_gcd(((a % m) + m) % m, m, x, y);
    if (g != 1) fail("not-a-unit", "mod_inverse requires gcd(a, m) = 1");
    return ((x % m) + m) % m;
}

struct CrtSolution {
    int64_t value;    // canonical residue in [0, modulus)
    int64_t modulus;  // lcm(m1, m2)
};

/// Solve x = a1 (mod m1), x = a2 (mod m2). Empty optional when
/// gcd(m1, m2) does not divide a1 - a2.
inline std::optional<CrtSolution> crt_solve(int64_t a1, int64_t m1, int64_t a2, int64_t m2) {
    if (m1 < 1 || m2 < 1) fail("invalid-input", "crt_solve requires positive moduli");
    a1 = ((a1 % m1) + m1) % m1;
    a2 = ((a2 % m2) + m2) % m2;
    int64_t g = std::gcd(m1, m2);
    if ((a1 - a2) % g != 0) return std::nullopt;
    int64_t l = m1 / g * m2;
    // a1 + m1*t = a2 (mod m2)  =>  t = (a2 - a1)/g * inv(m1/g) (mod m2/g)
    int64_t m2g = m2 / g;
    int64_t t = 0;
    if (m2g > 1) {
        int64_t diff = (((a2 - a1) / g) % m2g + m2g) % m2g;
        t = mod_mul(diff, mod_inverse(m1 / g, m2g), m2g);
    }
    int64_t x = (a1 + static_cast<int64_t>(static_cast<__int128>(m1) * t % l)) % l;
    return CrtSolution{x, l};
}

/// Two distinct odd primes and their derived constants.
struct PrimePair {
    int64_t p = 0;
    int64_t q = 0;
    int64_t n = 0;  // p*q
    int64_t d = 0;  // gcd(p-1, q-1)
    int64_t e = 0;  // (p-1)(q-1)/d

    static PrimePair create(int64_t p, int64_t q) {
        if (p == q) fail("invalid-input", "p and q must be distinct");
        if (p < 3 || q < 3 || p % 2 == 0 || q % 2 == 0 || !is_prime(p) || !is_prime(q))
            fail("invalid-input", "p and q must be odd primes");
        if (p > kMaxPrime || q > kMaxPrime)
            fail("invalid-input", "p and q are capped at 10000");
        PrimePair r;
        r.p = p;
        r.q = q;
        r.n = p * q;
        r.d = std::gcd(p - 1, q - 1);
        r.e = (p - 1) * (q - 1) / r.d;
        return r;
    }
};

/// Smallest g that is a primitive root mod p and mod q simultaneously.
inline int64_t common_primitive_root(const PrimePair& pair) {
    for (int64_t g = 2; g < pair.n; ++g) {
        if (g % pair.p == 0 || g % pair.q == 0) continue;
        if (is_primitive_root(g % pair.p, pair.p) && is_primitive_root(g % pair.q, pair.q))
            return g;
    }
    fail("invalid-input", "no common primitive root found");  // unreachable
}

/// The unit x with x = g (mod p), x = 1 (mod q).
inline int64_t whiteman_unit(const PrimePair& pair, int64_t g) {
    auto sol = crt_solve(g % pair.p, pair.p, 1, pair.q);
    return sol->value;  // p, q coprime: always solvable
}

}  // namespace gencyclo
