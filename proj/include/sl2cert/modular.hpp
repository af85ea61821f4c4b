#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sl2cert/fq.hpp"
#include "sl2cert/group.hpp"

namespace sl2cert {

/// Representation of G over k = F_q, given by matrices for a fixed generator list.
struct KGModule {
    int dim = 0;
    std::vector<FqMatrix> gens;
};

/// Degree-n homogeneous polynomial action: g sends x^k y^l to (ax+cy)^k (bx+dy)^l.
KGModule weyl_module(const Fq& F, const std::vector<GroupElem>& gens, int n);
/// The simple submodule spanned by the monomials x^{n-m} y^m with m in I(n)
/// (base-p digits of m bounded by those of n). Throws check_failure if the
/// span fails to be stable.
KGModule simple_module(const Fq& F, const std::vector<GroupElem>& gens, int n);

std::vector<int> digit_set(int n, int p);  // I(n)
std::set<long> decomposition_set(long n, int p);
int weyl_multiplicity(int m, int n, int p);  // 0/1 via m in n - 2*E(n)

KGModule direct_sum(const KGModule& a, const KGModule& b);
bool module_well_formed(const Fq& F, const KGModule& m);

/// Basis of {X : X A(g) = B(g) X for all generators g}, i.e. Hom_{kG}(A, B)
/// once the generators generate.
std::vector<FqMatrix> hom_space(const Fq& F, const KGModule& A, const KGModule& B);

struct SimplicityResult {
    bool simple;
    std::string method;  // "spin-exhaustive" or "meataxe"
    std::int64_t work;   // lines spun or search trials
};
/// Exhaustive line spinning when the number of lines is within budget;
/// otherwise the nullity-one meataxe test (certified in both directions,
/// randomness only in the search for a nullity-one algebra element).
SimplicityResult simplicity_check(const Fq& F, const KGModule& M, std::uint64_t seed,
                                  std::int64_t line_budget = 100000, bool parallel = true);
SimplicityResult simplicity_spin_serial(const Fq& F, const KGModule& M);

std::int64_t line_count(const Fq& F, int dim);

/// Split test for a module with Jordan-Hoelder factors {phi1, phi2},
/// phi1 != phi2 simple: split iff both are submodules. Throws check_failure
/// on dimension or multiplicity mismatch.
bool is_split_reduction(const Fq& F, const KGModule& V, const KGModule& phi1, const KGModule& phi2);

struct JhResult {
    int sub;   // 0 -> phi1 is the submodule, 1 -> phi2
    bool split;
};
/// Certifies that V has exactly one of the expected simples as submodule with
/// the other as quotient. Tests the lower-dimensional factor first.
JhResult jh_check(const Fq& F, const KGModule& V, const KGModule& phi1, const KGModule& phi2);

/// The action on the quotient of V by the column span of `image` (an
/// embedded submodule basis, full column rank).
KGModule quotient_module(const Fq& F, const KGModule& V, const FqMatrix& image);

/// Jordan-Hoelder multiset by repeated socle peeling against the given list
/// of candidate simples (returned as indices into `simples`).
std::vector<int> socle_peel_factors(const Fq& F, KGModule M,
                                    const std::vector<KGModule>& simples);

struct ExtResult {
    int h1 = 0, z1 = 0, b1 = 0;
    /// Z^1 basis: cocycle values on the generators, one dB x dA matrix per generator.
    std::vector<std::vector<FqMatrix>> z1_basis;
};
/// dim_k H^1(G, Hom(A,B)) = dim Ext^1_{kG}(A, B) by the Cayley-graph cocycle
/// method: unknowns are the values on the generators, the BFS tree propagates
/// f(g h) = f(g) + g·f(h), and every non-tree edge contributes constraints.
/// Constraints are consumed incrementally and the candidate solution space is
/// then verified against every edge exactly.
ExtResult ext_dimension(const Fq& F, const SL2& G, const SL2::Bfs& bfs, const KGModule& A,
                        const KGModule& B);

bool is_coboundary(const Fq& F, const KGModule& A, const KGModule& B,
                   const std::vector<FqMatrix>& cocycle);

/// Extension module 0 -> B -> E -> A -> 0 with generator images
/// [[B(g), f(g) A(g)], [0, A(g)]]. Throws check_failure when the cocycle is a
/// coboundary (the extension would split).
KGModule build_extension(const Fq& F, const KGModule& A, const KGModule& B,
                         const std::vector<FqMatrix>& cocycle);

/// Pick a Z^1 basis element that is not a coboundary.
std::vector<FqMatrix> nonsplit_cocycle(const Fq& F, const KGModule& A, const KGModule& B,
                                       const ExtResult& ext);

void write_decomposition_csv(const Fq& F, std::ostream& out);

}  // namespace sl2cert
