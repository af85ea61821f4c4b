#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sl2cert/characters.hpp"
#include "sl2cert/group.hpp"
#include "sl2cert/modular.hpp"
#include "sl2cert/witt.hpp"

namespace sl2cert {

/// Integral representation on a G-stable lattice: matrices over the truncated
/// Witt ring for a fixed generator list, with the minimum effective precision.
struct LatticeRep {
    int dim = 0;
    std::vector<PadicMatrix> gens;
    int prec = 0;
};

/// Monomial model of the character induced from the Borel subgroup: basis
/// indexed by the coset representatives, g·e_x = ±e_y via the factorization
/// g·rep_x = rep_y·b and the quadratic character of b.
class InducedModule {
public:
    explicit InducedModule(const SL2& G);
    const SL2& group() const { return *G_; }
    int dim() const { return int(reps_.size()); }

    struct Mono {
        std::vector<int> to;
        std::vector<int> sign;  // +1 / -1
    };
    Mono action(const GroupElem& g) const;
    PadicMatrix matrix(const WittRing& W, const GroupElem& g) const;

private:
    const SL2* G_;
    std::vector<GroupElem> reps_;
};

/// Coefficients of p^2·e for a central idempotent e = (d/|G|) Σ χ(g^{-1}) g.
/// The p^2 scaling keeps every coefficient integral (d/|G| has valuation -2
/// exactly when q = p^2); coefficients live in Z_p, so one residue suffices.
struct GroupAlgebraElem {
    std::vector<std::int64_t> scaled;  // indexed like SL2::elements()
    int prec = 0;
};

GroupAlgebraElem central_idempotent(const SL2& G, const ClassInventory& inv, const WittRing& W,
                                    const ClassFunction& chi, int degree);

/// Group-algebra convolution of two scaled idempotents (coefficients mod p^N).
std::vector<std::int64_t> convolve(const SL2& G, const WittRing& W,
                                   const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b);
std::vector<std::int64_t> convolve_serial(const SL2& G, const WittRing& W,
                                          const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b);

struct IdempotentCertificate {
    bool plus_idempotent = false, minus_idempotent = false;
    bool orthogonal = false, complete = false;
    std::int64_t identity_coefficient_check = 0;  // |G|·e coefficient of 1, should be d^2
    bool identity_coefficient_ok = false;
    int certified_digits = 0;  // N - 4
    bool pass() const {
        return plus_idempotent && minus_idempotent && orthogonal && complete && identity_coefficient_ok;
    }
};

/// Certifies e². = e, e+e- = 0 at the group-algebra level and e+ + e- = 1 on
/// the induced module. Requires at least 4 digits beyond the 4 consumed by
/// the p^-4 in e² - e, so N >= 8.
IdempotentCertificate certify_idempotents(const SL2& G, const WittRing& W, const InducedModule& ind,
                                          const GroupAlgebraElem& eplus, const GroupAlgebraElem& eminus,
                                          int degree);

/// Action matrix of a scaled group-algebra element on the induced module.
PadicMatrix algebra_action_matrix(const SL2& G, const InducedModule& ind, const WittRing& W,
                                  const GroupAlgebraElem& e, bool parallel = true);

struct Extraction {
    LatticeRep rep;
    std::vector<int> pivot_valuations;
};
/// Basis of the image lattice p^2·eV via column reduction, and the generator
/// action restricted to it. Dimension must come out as (q+1)/2.
Extraction split_by_idempotent(const SL2& G, const WittRing& W, const InducedModule& ind,
                               const GroupAlgebraElem& e);

/// Image of an arbitrary g under the lattice representation, via its BFS word.
PadicMatrix lattice_image(const WittRing& W, const LatticeRep& rep, const SL2& G, const SL2::Bfs& bfs,
                          const GroupElem& g);

/// Per-class trace comparison against a rational-integer-valued character.
bool character_matches(const SL2& G, const WittRing& W, const LatticeRep& rep, const SL2::Bfs& bfs,
                       const ClassInventory& inv, const ClassFunction& chi, int digits);

struct HomCheckResult {
    bool ok = true;
    std::int64_t products_checked = 0;
};
/// Generator-pair-exhaustive plus seeded random sampled products; paranoid
/// checks every g·generator product.
HomCheckResult homomorphism_check(const SL2& G, const WittRing& W, const LatticeRep& rep,
                                  const SL2::Bfs& bfs, std::uint64_t seed, int samples, bool paranoid,
                                  int digits);

/// O-span closure of {g·v} over the generator monoid, starting from the given
/// basis; returns the action on the closed lattice. Homothety-invariant.
LatticeRep stable_lattice(const WittRing& W, const LatticeRep& rep, const PadicMatrix& initial_basis);
LatticeRep stable_lattice(const WittRing& W, const LatticeRep& rep);

KGModule reduce_rep(const WittRing& W, const LatticeRep& rep);

struct WalkResult {
    LatticeRep rep;
    int steps = 0;
    std::vector<std::pair<int, int>> transcript;  // (dim hom(phi1,·), dim hom(phi2,·)) per step
};
/// Repeatedly replaces the lattice by the preimage of the phi2-submodule of
/// its reduction until the reduction is non-split with socle phi1, then
/// conjugates so the reduction is [[phi1, *], [0, phi2-copy]] with the phi1
/// block exact. Throws cap_exceeded when the cap is reached (the split
/// situation) and insufficient_precision when the walk runs out of digits.
WalkResult walk_to_nonsplit(const WittRing& W, const LatticeRep& rep, const KGModule& phi1,
                            const KGModule& phi2, int cap);

struct AlignmentResult {
    LatticeRep aligned;     // conjugated first argument
    FqMatrix intertwiner;   // residual intertwiner used for the change of basis
};
/// Conjugates `a` by a lifted invertible intertwiner so its reduction equals
/// b's entrywise. Throws check_failure when no invertible intertwiner exists.
AlignmentResult align_reductions(const WittRing& W, const LatticeRep& a, const LatticeRep& b);

/// Whether the reduction of `a`, twisted by conjugation with diag(c0, 1) in
/// GL(2,q), becomes isomorphic to the reduction of `b`.
bool outer_twist_intertwines(const SL2& G, const WittRing& W, const SL2::Bfs& bfs,
                             const LatticeRep& a, const LatticeRep& b);

struct TraceCertificate {
    Padic t_plus, t_minus, diff;
    Valuation diff_valuation{false, 0};
    bool sum_is_one = false;
    int digits = 0;
};
/// Traces at the u(1) generator (the Unipotent(+,+) representative).
TraceCertificate trace_certificate(const WittRing& W, const LatticeRep& plus, const LatticeRep& minus);

struct TorusControl {
    LatticeRep rep;    // diag(teichmuller(theta), 1) for the single generator d(theta)
    KGModule phi1, phi2;
};
/// Split two-dimensional control representation: every stable lattice has
/// split reduction, so the walk must hit its cap.
TorusControl torus_split_control(const WittRing& W);

}  // namespace sl2cert
