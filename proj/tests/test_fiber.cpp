#include <doctest.h>

#include <random>

#include "sl2cert/fiber.hpp"

using namespace sl2cert;

TEST_CASE("fiber product ring certificate at p = 3") {
    Fq F(3, 2);
    WittRing W(F, 12);
    FiberCertificate cert = fiber_ring_certificate(W, 0);
    CHECK(cert.relation_maps_to_zero);
    CHECK(cert.image_squares);
    CHECK(cert.diagonal_hit);
    CHECK(cert.kernel_trivial);
    CHECK(cert.section_round_trip);
    CHECK(cert.multiplicative_samples);
    CHECK(cert.pass());
}

TEST_CASE("kernel is trivial at p = 5, N = 6") {
    Fq F(5, 2);
    WittRing W(F, 6);
    FiberCertificate cert = fiber_ring_certificate(W, 0);
    CHECK(cert.kernel_trivial);
    CHECK(cert.pass());
}

TEST_CASE("the image of X squares to p times itself") {
    Fq F(3, 2);
    WittRing W(F, 12);
    // (0, p)^2 = (0, p^2) = p·(0, p), componentwise
    FiberElem X = make_fiber(W, W.zero(12), W.from_int(3));
    FiberElem sq = fiber_mul(W, X, X);
    CHECK(W.eq_mod(sq.a, W.zero(12), 12));
    CHECK(W.eq_mod(sq.b, W.from_int(9), 12));
    CHECK(W.eq_mod(sq.b, W.mul_int(3, X.b), 12));
}

TEST_CASE("fiber pairs are closed under arithmetic") {
    Fq F(3, 2);
    WittRing W(F, 12);
    CHECK_THROWS_AS(make_fiber(W, W.one(), W.from_int(2)), check_failure);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto rnd = [&] {
            Padic x = W.zero(12);
            x.c = {std::int64_t(rng() % std::uint64_t(W.modulus())),
                   std::int64_t(rng() % std::uint64_t(W.modulus()))};
            return W.add(x, W.zero(12));
        };
        Padic a = rnd();
        FiberElem x = make_fiber(W, a, W.add(a, W.mul_int(3, rnd())));
        Padic b = rnd();
        FiberElem y = make_fiber(W, b, W.add(b, W.mul_int(3, rnd())));
        // make_fiber re-checks the congruence, so closure means no throw
        CHECK_NOTHROW(fiber_add(W, x, y));
        CHECK_NOTHROW(fiber_mul(W, x, y));
    }
}

TEST_CASE("micro models are bijective ring images") {
    FiberMicroCertificate a = fiber_micro_exhaustive(3, 1);
    CHECK(a.pass());
    CHECK(a.elements == 27);  // p^{s(2N-1)} with N = 2
    FiberMicroCertificate b = fiber_micro_exhaustive(3, 2);
    CHECK(b.pass());
    CHECK(b.elements == 729);
    FiberMicroCertificate c = fiber_micro_exhaustive(5, 1);
    CHECK(c.pass());
    CHECK(c.elements == 125);
}

TEST_CASE("order-two group algebra certificate") {
    Mod2Certificate cert = mod2_group_algebra_certificate(12);
    CHECK(cert.iso_s1);
    CHECK(cert.iso_s2);
    CHECK(cert.group_algebra_relation);
    CHECK(cert.counts_equal);
    REQUIRE(cert.counts.size() == 6);
    auto find = [&](const std::string& name) {
        for (const auto& c : cert.counts)
            if (c.name == name) return c;
        throw check_failure("missing " + name);
    };
    CHECK(find("Z/8").unit_square_roots_of_one == 4);  // {1, 3, 5, 7}
    CHECK(find("Z/8").algebra_lift_count == 4);
    CHECK(find("F_2").algebra_lift_count == 1);
    CHECK(find("Z/4").algebra_lift_count == 2);
    CHECK(find("F_4").algebra_lift_count == 1);
    CHECK(find("W(F_4)/4").algebra_lift_count == 4);
    CHECK(find("F_2[eps]").algebra_lift_count == 2);
}
