#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gencyclo/gfpoly.hpp"

using namespace gencyclo;

TEST_CASE("ring operations") {
    Poly a(5, {1, 2, 3});
    CHECK(poly_add(a, Poly::zero(5)) == a);
    CHECK(poly_sub(a, a).is_zero());
    // (x+1)^2 = x^2 + 1 over F_2
    Poly x1(2, {1, 1});
    CHECK(poly_mul(x1, x1) == Poly(2, {1, 0, 1}));
    // divmod(x^3 - 1, x - 1) over F_5
    auto [quo, rem] = poly_divmod(Poly::xn_minus_one(5, 3), Poly(5, {4, 1}));
    CHECK(quo == Poly(5, {1, 1, 1}));
    CHECK(rem.is_zero());
    CHECK_THROWS_AS(poly_divmod(a, Poly::zero(5)), error);
    CHECK_THROWS_AS(poly_add(a, Poly(7, {1})), error);
    // trailing-zero normalization
    CHECK(Poly(5, {1, 2, 0, 0}).degree() == 1);
    CHECK(Poly(5, {0, 0}).is_zero());
}

TEST_CASE("gcd") {
    Poly a(7, {3, 0, 3});  // 3x^2 + 3
    CHECK(poly_gcd(a, Poly::zero(7)) == make_monic(a));
    // gcd(x^2 - 1, x - 1) over F_7 -> x + 6
    CHECK(poly_gcd(Poly(7, {6, 0, 1}), Poly(7, {6, 1})) == Poly(7, {6, 1}));
    CHECK_THROWS_AS(poly_gcd(Poly::zero(7), Poly::zero(7)), error);
}

TEST_CASE("powmod and eval") {
    Poly f(5, {2, 0, 1});  // x^2 + 2
    Poly x(5, {0, 1});
    CHECK(poly_powmod(x, 2, f) == Poly(5, {3}));  // x^2 = -2 = 3
    CHECK(poly_eval(Poly(5, {1, 2, 3}), 2) == (1 + 4 + 12) % 5);
}

TEST_CASE("gcd-method linear complexity") {
    // all-ones period-7 sequence over F_2: L = 1, v = x + 1
    Poly ones(2, std::vector<uint32_t>(7, 1));
    auto r = linear_complexity_gcd(ones, 7);
    CHECK(r.L == 1);
    CHECK(r.minimal_poly == Poly(2, {1, 1}));
    CHECK(r.h.degree() == 6);
    // all-zero
    auto z = linear_complexity_gcd(Poly::zero(2), 9);
    CHECK(z.L == 0);
    CHECK(z.minimal_poly == Poly(2, {1}));
}

TEST_CASE("berlekamp-massey basics") {
    std::vector<uint32_t> zeros(10, 0);
    CHECK(berlekamp_massey(zeros, 2).L == 0);
    // Fibonacci mod 5: s_i = s_{i-1} + s_{i-2}, L = 2
    std::vector<uint32_t> fib{1, 1};
    for (int i = 2; i < 16; ++i) fib.push_back((fib[i - 1] + fib[i - 2]) % 5);
    auto bm = berlekamp_massey(fib, 5);
    CHECK(bm.L == 2);
    // v_0 s_i + v_1 s_{i-1} + v_2 s_{i-2} = 0 with v monic: x^2 + x - 1
    CHECK(bm_minimal_poly(bm, 5) == Poly(5, {4, 1, 1}));
}

TEST_CASE("oracle equivalence on random periodic streams") {
    std::mt19937 rng(12345);
    for (uint32_t l : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 60; ++trial) {
            int64_t n = 1 + static_cast<int64_t>(rng() % 120);
            while (n % l == 0) ++n;
            std::vector<uint32_t> period(static_cast<size_t>(n));
            for (auto& v : period) v = rng() % l;
            auto lc = linear_complexity_gcd(Poly(l, period), n);
            std::vector<uint32_t> stream = period;
            stream.insert(stream.end(), period.begin(), period.end());
            auto bm = berlekamp_massey(stream, l);
            REQUIRE(bm.L == lc.L);
            REQUIRE(bm_minimal_poly(bm, l) == lc.minimal_poly);
            if (lc.L > 0) {
                auto regen = lfsr_regenerate(lc.minimal_poly,
                                             std::span(stream.data(), static_cast<size_t>(lc.L)),
                                             stream.size());
                REQUIRE(regen == stream);
            }
        }
    }
}

TEST_CASE("minimality: no proper divisor of v regenerates") {
    // period 15 over F_2, a structured sequence
    std::vector<uint32_t> period{1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1};
    auto lc = linear_complexity_gcd(Poly(2, period), 15);
    std::vector<uint32_t> stream = period;
    stream.insert(stream.end(), period.begin(), period.end());
    // every monic divisor of v of smaller degree obtained from gcd chains
    // with x^d - 1 factors must fail to regenerate
    for (int64_t d = 1; d < 15; ++d) {
        if (15 % d != 0) continue;
        Poly cand = poly_gcd(lc.minimal_poly, Poly::xn_minus_one(2, d));
        if (cand.degree() < 1 || cand.degree() >= lc.L || cand.coeff(0) == 0) continue;
        auto regen = lfsr_regenerate(
            cand, std::span(stream.data(), static_cast<size_t>(cand.degree())), stream.size());
        CHECK(regen != stream);
    }
}
