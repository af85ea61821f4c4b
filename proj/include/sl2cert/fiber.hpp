#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sl2cert/witt.hpp"

namespace sl2cert {

/// Element of the fiber product W ×_k W: a pair congruent mod p.
struct FiberElem {
    Padic a, b;
};

FiberElem make_fiber(const WittRing& W, const Padic& a, const Padic& b);
FiberElem fiber_add(const WittRing& W, const FiberElem& x, const FiberElem& y);
FiberElem fiber_mul(const WittRing& W, const FiberElem& x, const FiberElem& y);

/// Certificate that X -> (0, p) identifies W[X]/(X^2 - pX) with the fiber
/// product on matched truncated models (constant coefficient mod p^N,
/// X-coefficient mod p^{N-1}; the naive level-N truncation has a spurious
/// kernel p^{N-1}·X of order q, which is why the moduli are mixed).
struct FiberCertificate {
    bool relation_maps_to_zero = false;  // X^2 - pX -> 0
    bool image_squares = false;          // (0,p)^2 = p·(0,p)
    bool diagonal_hit = false;           // (w, w) = image of the constant w
    bool kernel_trivial = false;
    bool section_round_trip = false;     // phi(psi(u,v)) = (u,v) and psi(phi(r)) = r on samples
    bool multiplicative_samples = false;
    std::int64_t samples = 0;
    bool pass() const {
        return relation_maps_to_zero && image_squares && diagonal_hit && kernel_trivial &&
               section_round_trip && multiplicative_samples;
    }
};

FiberCertificate fiber_ring_certificate(const WittRing& W, std::uint64_t seed, int samples = 200);

/// Full enumeration of the matched truncated models at N = 2: the map is
/// verified to be a ring bijection element by element.
struct FiberMicroCertificate {
    bool bijective = false;
    bool ring_hom = false;
    std::int64_t elements = 0;
    bool pass() const { return bijective && ring_hom; }
};
FiberMicroCertificate fiber_micro_exhaustive(int p, int s);

/// Small test rings (Z/2^a)[t]/(f) for the lift-counting certificate.
struct Mod2RingCount {
    std::string name;
    std::int64_t unit_square_roots_of_one = 0;
    std::int64_t algebra_lift_count = 0;  // solutions of x^2 = 2x
};

struct Mod2Certificate {
    bool iso_s1 = false, iso_s2 = false;  // W(F_{2^s})[X]/(X^2-2X) = W(F_{2^s})[Z/2] via X-1 -> sigma
    bool group_algebra_relation = false;  // (X-1)^2 = 1 <-> X^2 = 2X
    std::vector<Mod2RingCount> counts;
    bool counts_equal = false;
    bool pass() const { return iso_s1 && iso_s2 && group_algebra_relation && counts_equal; }
};

Mod2Certificate mod2_group_algebra_certificate(int N);

}  // namespace sl2cert
