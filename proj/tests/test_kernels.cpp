// The OpenMP kernels and their serial references must agree bit for bit:
// every reduction is exact integer arithmetic.
#include <doctest.h>

#include "sl2cert/characters.hpp"
#include "sl2cert/modular.hpp"
#include "sl2cert/ordinary.hpp"

using namespace sl2cert;

namespace {
Fq F9(3, 2);
SL2 G9(F9);
}  // namespace

TEST_CASE("conjugacy tally kernel") {
    CHECK(classify_all(G9) == classify_all_serial(G9));
}

TEST_CASE("induction sum kernel") {
    ClassInventory inv = G9.class_inventory(true);
    CHECK(borel_induced_character(G9, inv).values == borel_induced_character_serial(G9, inv).values);
}

TEST_CASE("convolution and idempotent application kernels") {
    ClassInventory inv = G9.class_inventory(true);
    WittRing W(F9, 12);
    InducedModule ind(G9);
    GroupAlgebraElem ep = central_idempotent(G9, inv, W, half_induced_character(F9, inv, +1), 5);
    GroupAlgebraElem em = central_idempotent(G9, inv, W, half_induced_character(F9, inv, -1), 5);
    CHECK(convolve(G9, W, ep.scaled, em.scaled) == convolve_serial(G9, W, ep.scaled, em.scaled));
    CHECK(convolve(G9, W, ep.scaled, ep.scaled) == convolve_serial(G9, W, ep.scaled, ep.scaled));
    CHECK(algebra_action_matrix(G9, ind, W, ep, true) == algebra_action_matrix(G9, ind, W, ep, false));
}

TEST_CASE("line spinning kernel") {
    KGModule L4 = simple_module(F9, G9.default_generators(), 4);
    SimplicityResult serial = simplicity_spin_serial(F9, L4);
    SimplicityResult parallel = simplicity_check(F9, L4, 0, 100000, true);
    CHECK(serial.simple == parallel.simple);
    CHECK(serial.work == parallel.work);
    KGModule D4 = weyl_module(F9, G9.default_generators(), 4);
    CHECK(simplicity_spin_serial(F9, D4).simple == simplicity_check(F9, D4, 0, 100000, true).simple);
}
