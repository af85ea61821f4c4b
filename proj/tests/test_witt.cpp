#include <doctest.h>

#include <random>

#include "sl2cert/witt.hpp"

using namespace sl2cert;

namespace {

Fq F9(3, 2);
WittRing W12(F9, 12);

PadicMatrix random_integral(std::mt19937_64& rng, int rows, int cols) {
    PadicMatrix m(rows, cols, W12.precision());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            // mix plain units with entries of positive valuation
            std::int64_t scale = rng() % 4 == 0 ? W12.p_power(1 + int(rng() % 3)) : 1;
            Padic e = W12.zero(W12.precision());
            e.c = {std::int64_t(rng() % std::uint64_t(W12.modulus())) * scale % W12.modulus(),
                   std::int64_t(rng() % std::uint64_t(W12.modulus())) * scale % W12.modulus()};
            m.at(i, j) = W12.add(e, W12.zero(12));
        }
    return m;
}

}  // namespace

TEST_CASE("valuation basics") {
    CHECK(W12.valuation(W12.from_int(3)).v == 1);
    CHECK(W12.valuation(W12.from_int(3)).exact);
    Valuation z = W12.valuation(W12.zero(12));
    CHECK_FALSE(z.exact);
    CHECK(z.v == 12);  // the sentinel carries the precision
    // p^2 times a unit
    CHECK(W12.valuation(W12.mul(W12.from_int(9), W12.from_int(7))).v == 2);
    CHECK_THROWS_AS(WittRing(F9, 2), insufficient_precision);
}

TEST_CASE("precision propagation") {
    Padic a = W12.from_int(5, 6);
    Padic b = W12.from_int(7, 9);
    CHECK(W12.add(a, b).prec == 6);
    CHECK(W12.mul(a, b).prec == 6);
    // multiplying by p^k gains k absolute digits
    CHECK(W12.mul(a, W12.from_int(9)).prec == 8);
    CHECK(W12.div_p_pow(W12.from_int(9, 12), 2).prec == 10);
    // valuations add on products
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        Padic x = W12.from_int(std::int64_t(1 + rng() % 500) * W12.p_power(rng() % 4));
        Padic y = W12.from_int(std::int64_t(1 + rng() % 500) * W12.p_power(rng() % 4));
        Valuation vx = W12.valuation(x), vy = W12.valuation(y), vxy = W12.valuation(W12.mul(x, y));
        if (vx.exact && vy.exact && vx.v + vy.v < 12) CHECK(vxy.v == vx.v + vy.v);
    }
}

TEST_CASE("unit inverse and residue reduction") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        Padic x = W12.zero(12);
        x.c = {std::int64_t(rng() % std::uint64_t(W12.modulus())),
               std::int64_t(rng() % std::uint64_t(W12.modulus()))};
        x = W12.add(x, W12.zero(12));
        if (!W12.is_unit(x)) continue;
        Padic xi = W12.unit_inverse(x);
        CHECK(W12.eq_mod(W12.mul(x, xi), W12.one(), 12));
    }
    CHECK(W12.reduce(W12.lift(7)) == 7);
}

TEST_CASE("teichmuller root") {
    Padic w = teichmuller_root(W12, F9.theta(), 8);
    Padic x = W12.one();
    for (int i = 0; i < 8; ++i) x = W12.mul(x, w);
    CHECK(W12.eq_mod(x, W12.one(), 12));
    CHECK(W12.reduce(w) == F9.theta());
}

TEST_CASE("hnf on the identity") {
    PadicMatrix id = padic_identity(W12, 3);
    HnfResult h = hnf_local(W12, id);
    CHECK(h.rank() == 3);
    CHECK(h.h == id);
    CHECK(h.transform == id);
}

TEST_CASE("hnf pivot order puts the unit column first") {
    PadicMatrix m(2, 2, 12);
    m.at(0, 0) = W12.from_int(3);
    m.at(0, 1) = W12.one();
    m.at(1, 1) = W12.from_int(3);
    HnfResult h = hnf_local(W12, m);
    REQUIRE(h.rank() == 2);
    CHECK(h.pivots[0].val == 0);
    CHECK(h.pivots[1].val == 2);
}

TEST_CASE("hnf span, transform and idempotence on random matrices") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        PadicMatrix m = random_integral(rng, 5, 8);
        HnfResult h = hnf_local(W12, m);
        // transform identity: m · U = H within the reported precision
        PadicMatrix mu = padic_mul(W12, m, h.transform);
        CHECK(padic_eq_mod(W12, mu, h.h, std::min(padic_min_prec(mu), padic_min_prec(h.h))));
        // the transform stays invertible over the local ring
        FqMatrix ubar = padic_reduce(W12, h.transform);
        CHECK(fq_inverse(F9, ubar).has_value());
        // every input column lies in the span of the pivot columns
        for (int c = 0; c < m.cols; ++c) {
            std::vector<Padic> col(5);
            for (int i = 0; i < 5; ++i) col[size_t(i)] = m.at(i, c);
            CHECK(hnf_solve(W12, h, col).has_value());
        }
        // reducing the reduced matrix changes nothing
        HnfResult h2 = hnf_local(W12, h.h);
        CHECK(h2.h == h.h);
        CHECK(h2.rank() == h.rank());
    }
}

TEST_CASE("hnf rejects entries below the precision floor") {
    PadicMatrix m(1, 1, 12);
    m.at(0, 0) = W12.from_int(1, 1);
    CHECK_THROWS_AS(hnf_local(W12, m), insufficient_precision);
}

TEST_CASE("solve detects vectors outside the span") {
    PadicMatrix m(2, 1, 12);
    m.at(0, 0) = W12.from_int(3);
    HnfResult h = hnf_local(W12, m);
    std::vector<Padic> c{W12.one(), W12.zero(12)};
    CHECK_FALSE(hnf_solve(W12, h, c).has_value());
}
