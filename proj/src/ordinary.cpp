#include "sl2cert/ordinary.hpp"

#include <algorithm>
#include <random>

#include "sl2cert/parallel.hpp"

namespace sl2cert {

InducedModule::InducedModule(const SL2& G) : G_(&G), reps_(G.coset_reps()) {}

InducedModule::Mono InducedModule::action(const GroupElem& g) const {
    Mono m;
    m.to.resize(reps_.size());
    m.sign.resize(reps_.size());
    const Fq& F = G_->field();
    for (size_t x = 0; x < reps_.size(); ++x) {
        auto fac = G_->factorize(G_->mul(g, reps_[x]));
        m.to[x] = fac.rep;
        m.sign[x] = quadratic_character(F, fac.b.a);
    }
    return m;
}

PadicMatrix InducedModule::matrix(const WittRing& W, const GroupElem& g) const {
    Mono m = action(g);
    PadicMatrix out(dim(), dim(), W.precision());
    for (int x = 0; x < dim(); ++x) out.at(m.to[x], x) = W.from_int(m.sign[x]);
    return out;
}

GroupAlgebraElem central_idempotent(const SL2& G, const ClassInventory& inv, const WittRing& W,
                                    const ClassFunction& chi, int degree) {
    const Fq& F = G.field();
    if (!(chi.at(inv.index_of(ClassLabel{ClassKind::Central, +1, 0, 0})) == Rat(degree)))
        throw check_failure("character degree mismatch");
    // p^2 d / |G| = 1 / (2(q-1)) for q = p^2
    std::int64_t unit = 2 * std::int64_t(F.q() - 1);
    Padic unit_inv = W.unit_inverse(W.from_int(unit));
    std::int64_t ui = unit_inv.c[0];
    GroupAlgebraElem e;
    e.prec = W.precision();
    e.scaled.resize(size_t(G.order()));
    for (std::int64_t i = 0; i < G.order(); ++i) {
        std::int32_t ci = inv.class_of[G.index_of(G.inv(G.element(std::int32_t(i))))];
        const Rat& v = chi.at(ci);
        if (!v.is_integer()) throw check_failure("character value is not a rational integer");
        std::int64_t num = ((v.num % W.modulus()) + W.modulus()) % W.modulus();
        e.scaled[size_t(i)] = std::int64_t((__int128(num) * ui) % W.modulus());
    }
    return e;
}

namespace {

std::vector<std::int64_t> convolve_impl(const SL2& G, const WittRing& W,
                                        const std::vector<std::int64_t>& a,
                                        const std::vector<std::int64_t>& b, bool parallel) {
    const std::int64_t n = G.order();
    const std::int64_t mod = W.modulus();
    std::vector<GroupElem> inv_elems(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) inv_elems[size_t(i)] = G.inv(G.element(std::int32_t(i)));
    std::vector<std::int64_t> c(size_t(n), 0);
    auto body = [&](std::int64_t f) {
        const GroupElem& fe = G.element(std::int32_t(f));
        __int128 acc = 0;
        for (std::int64_t h = 0; h < n; ++h) {
            std::int64_t bh = b[size_t(h)];
            if (!bh) continue;
            // g = f h^{-1}, term a[g]·b[h]
            std::int64_t g = G.index_of(G.mul(fe, inv_elems[size_t(h)]));
            acc += __int128(a[size_t(g)]) * bh % mod;
        }
        c[size_t(f)] = std::int64_t(((acc % mod) + mod) % mod);
    };
    if (parallel)
        parallel_for(n, body);
    else
        for (std::int64_t f = 0; f < n; ++f) body(f);
    return c;
}

}  // namespace

std::vector<std::int64_t> convolve(const SL2& G, const WittRing& W, const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b) {
    return convolve_impl(G, W, a, b, true);
}

std::vector<std::int64_t> convolve_serial(const SL2& G, const WittRing& W,
                                          const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b) {
    return convolve_impl(G, W, a, b, false);
}

IdempotentCertificate certify_idempotents(const SL2& G, const WittRing& W, const InducedModule& ind,
                                          const GroupAlgebraElem& eplus, const GroupAlgebraElem& eminus,
                                          int degree) {
    IdempotentCertificate cert;
    cert.certified_digits = W.precision() - 4;
    if (cert.certified_digits < 4)
        throw insufficient_precision(
            "idempotent certificate needs 4 digits beyond the p^-4 of e^2 - e; raise the precision (N >= 8)");
    const std::int64_t mod = W.modulus();
    const std::int64_t p2 = std::int64_t(W.p()) * W.p();
    auto equals_scaled = [&](const std::vector<std::int64_t>& conv, const std::vector<std::int64_t>& e,
                             bool zero) {
        for (size_t i = 0; i < conv.size(); ++i) {
            std::int64_t want = zero ? 0 : std::int64_t((__int128(p2) * e[i]) % mod);
            if (conv[i] != want) return false;
        }
        return true;
    };
    cert.plus_idempotent = equals_scaled(convolve(G, W, eplus.scaled, eplus.scaled), eplus.scaled, false);
    cert.minus_idempotent =
        equals_scaled(convolve(G, W, eminus.scaled, eminus.scaled), eminus.scaled, false);
    cert.orthogonal = equals_scaled(convolve(G, W, eplus.scaled, eminus.scaled), eplus.scaled, true);

    PadicMatrix sum = padic_add(W, algebra_action_matrix(G, ind, W, eplus),
                                algebra_action_matrix(G, ind, W, eminus));
    PadicMatrix expected = padic_scalar_mul(W, p2, padic_identity(W, ind.dim()));
    cert.complete = padic_eq_mod(W, sum, expected, W.precision());

    // coefficient of the identity in |G|·e is d·χ(1) = d^2
    std::int64_t id_scaled = eplus.scaled[size_t(G.index_of(G.identity()))];
    std::int64_t factor = (G.order() / p2) % mod;
    cert.identity_coefficient_check = std::int64_t((__int128(factor) * id_scaled) % mod);
    cert.identity_coefficient_ok =
        cert.identity_coefficient_check == std::int64_t(degree) * degree % mod;
    return cert;
}

PadicMatrix algebra_action_matrix(const SL2& G, const InducedModule& ind, const WittRing& W,
                                  const GroupAlgebraElem& e, bool parallel) {
    const int d = ind.dim();
    const std::int64_t n = G.order();
    const std::int64_t mod = W.modulus();
    int nthreads = parallel ? max_threads() : 1;
    std::vector<std::vector<std::int64_t>> buffers(size_t(nthreads),
                                                   std::vector<std::int64_t>(size_t(d) * d, 0));
#if defined(_OPENMP)
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t co = e.scaled[size_t(i)];
            if (!co) continue;
            auto& buf = buffers[size_t(omp_get_thread_num())];
            InducedModule::Mono m = ind.action(G.element(std::int32_t(i)));
            for (int x = 0; x < d; ++x) {
                std::int64_t& cell = buf[size_t(m.to[x]) * d + x];
                cell = (cell + (m.sign[x] > 0 ? co : mod - co)) % mod;
            }
        }
    } else
#endif
    {
        auto& buf = buffers[0];
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t co = e.scaled[size_t(i)];
            if (!co) continue;
            InducedModule::Mono m = ind.action(G.element(std::int32_t(i)));
            for (int x = 0; x < d; ++x) {
                std::int64_t& cell = buf[size_t(m.to[x]) * d + x];
                cell = (cell + (m.sign[x] > 0 ? co : mod - co)) % mod;
            }
        }
    }
    PadicMatrix out(d, d, e.prec);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::int64_t total = 0;
            for (int t = 0; t < nthreads; ++t) total = (total + buffers[size_t(t)][size_t(i) * d + j]) % mod;
            out.at(i, j) = W.from_int(total, e.prec);
        }
    return out;
}

Extraction split_by_idempotent(const SL2& G, const WittRing& W, const InducedModule& ind,
                               const GroupAlgebraElem& e) {
    const int q = G.field().q();
    const int d = (q + 1) / 2;
    PadicMatrix C = algebra_action_matrix(G, ind, W, e);
    HnfResult h = hnf_local(W, C);
    if (h.rank() != d)
        throw check_failure("idempotent image has rank " + std::to_string(h.rank()) + ", expected " +
                            std::to_string(d));
    Extraction out;
    for (const auto& piv : h.pivots) out.pivot_valuations.push_back(piv.val);
    out.rep.dim = d;
    int prec = W.precision();
    for (const GroupElem& g : G.default_generators()) {
        PadicMatrix MB = padic_mul(W, ind.matrix(W, g), [&] {
            PadicMatrix B(ind.dim(), d, W.precision());
            for (int i = 0; i < ind.dim(); ++i)
                for (int j = 0; j < d; ++j) B.at(i, j) = h.h.at(i, j);
            return B;
        }());
        PadicMatrix X(d, d, W.precision());
        for (int col = 0; col < d; ++col) {
            std::vector<Padic> c(static_cast<std::size_t>(ind.dim()));
            for (int i = 0; i < ind.dim(); ++i) c[size_t(i)] = MB.at(i, col);
            auto sol = hnf_solve(W, h, std::move(c));
            if (!sol) throw check_failure("idempotent image is not generator-stable");
            for (int i = 0; i < d; ++i) {
                X.at(i, col) = (*sol)[size_t(i)];
                Valuation v = W.valuation(X.at(i, col));
                if (v.exact && v.v < 0) throw check_failure("extracted action is not integral");
            }
        }
        prec = std::min(prec, padic_min_prec(X));
        out.rep.gens.push_back(std::move(X));
    }
    out.rep.prec = prec;
    for (auto& m : out.rep.gens)
        for (auto& x : m.a) x.prec = std::min<int>(x.prec, prec);
    return out;
}

PadicMatrix lattice_image(const WittRing& W, const LatticeRep& rep, const SL2& G, const SL2::Bfs& bfs,
                          const GroupElem& g) {
    PadicMatrix m = padic_identity(W, rep.dim);
    for (auto& x : m.a) x.prec = std::min<int>(x.prec, rep.prec);
    for (int t : G.word(bfs, g)) m = padic_mul(W, m, rep.gens[size_t(t)]);
    return m;
}

bool character_matches(const SL2& G, const WittRing& W, const LatticeRep& rep, const SL2::Bfs& bfs,
                       const ClassInventory& inv, const ClassFunction& chi, int digits) {
    for (size_t c = 0; c < inv.classes.size(); ++c) {
        Padic tr = padic_trace(W, lattice_image(W, rep, G, bfs, inv.classes[c].rep));
        const Rat& v = chi.at(int(c));
        if (!v.is_integer()) throw check_failure("character value is not a rational integer");
        if (!W.eq_mod(tr, W.from_int(v.num, tr.prec), digits)) return false;
    }
    return true;
}

HomCheckResult homomorphism_check(const SL2& G, const WittRing& W, const LatticeRep& rep,
                                  const SL2::Bfs& bfs, std::uint64_t seed, int samples, bool paranoid,
                                  int digits) {
    HomCheckResult res;
    auto image = [&](const GroupElem& g) { return lattice_image(W, rep, G, bfs, g); };
    auto check_pair = [&](const GroupElem& x, const GroupElem& y) {
        PadicMatrix lhs = padic_mul(W, image(x), image(y));
        PadicMatrix rhs = image(G.mul(x, y));
        ++res.products_checked;
        if (!padic_eq_mod(W, lhs, rhs, digits)) res.ok = false;
    };
    const auto& gens = bfs.generators;
    for (const auto& x : gens)
        for (const auto& y : gens) check_pair(x, y);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples && res.ok; ++i) {
        GroupElem x = G.element(std::int32_t(rng() % std::uint64_t(G.order())));
        GroupElem y = G.element(std::int32_t(rng() % std::uint64_t(G.order())));
        check_pair(x, y);
    }
    if (paranoid && res.ok) {
        // every g·generator product, propagating images in BFS order
        std::vector<PadicMatrix> images(static_cast<std::size_t>(G.order()));
        std::int32_t root = bfs.order[0];
        images[size_t(root)] = padic_identity(W, rep.dim);
        for (size_t oi = 1; oi < bfs.order.size(); ++oi) {
            std::int32_t gi = bfs.order[oi];
            images[size_t(gi)] =
                padic_mul(W, images[size_t(bfs.parent[gi])], rep.gens[size_t(bfs.via_gen[gi])]);
        }
        for (std::int32_t gi : bfs.order)
            for (size_t t = 0; t < gens.size(); ++t) {
                std::int32_t hi = G.index_of(G.mul(G.element(gi), gens[t]));
                PadicMatrix lhs = padic_mul(W, images[size_t(gi)], rep.gens[t]);
                ++res.products_checked;
                if (!padic_eq_mod(W, lhs, images[size_t(hi)], digits)) {
                    res.ok = false;
                    return res;
                }
            }
    }
    return res;
}

namespace {

PadicMatrix pivot_columns(const HnfResult& h, int dim) {
    PadicMatrix B(dim, int(h.pivots.size()), 0);
    for (int i = 0; i < dim; ++i)
        for (size_t j = 0; j < h.pivots.size(); ++j) B.at(i, int(j)) = h.h.at(i, int(j));
    return B;
}

/// basis-change of a representation: X_t = T^{-1} R_t T computed through the
/// echelon solve (T need not be unit-invertible, only full rank).
LatticeRep conjugate_by_lattice(const WittRing& W, const LatticeRep& rep, const HnfResult& hT) {
    LatticeRep out;
    out.dim = rep.dim;
    int prec = INT32_MAX;
    PadicMatrix T = pivot_columns(hT, rep.dim);
    for (const auto& R : rep.gens) {
        PadicMatrix RT = padic_mul(W, R, T);
        PadicMatrix X(rep.dim, rep.dim, W.precision());
        for (int col = 0; col < rep.dim; ++col) {
            std::vector<Padic> c(static_cast<std::size_t>(rep.dim));
            for (int i = 0; i < rep.dim; ++i) c[size_t(i)] = RT.at(i, col);
            auto sol = hnf_solve(W, hT, std::move(c));
            if (!sol) throw check_failure("lattice is not stable under the action");
            for (int i = 0; i < rep.dim; ++i) X.at(i, col) = (*sol)[size_t(i)];
        }
        prec = std::min(prec, padic_min_prec(X));
        out.gens.push_back(std::move(X));
    }
    out.prec = std::min(prec, rep.prec);
    for (auto& m : out.gens)
        for (auto& x : m.a) x.prec = std::min<int>(x.prec, out.prec);
    if (out.prec < 4) throw insufficient_precision("lattice walk ran below 4 effective digits");
    return out;
}

bool span_equal(const WittRing& W, const HnfResult& a, const HnfResult& b, int dim) {
    if (a.rank() != b.rank()) return false;
    for (const HnfResult* from : {&a, &b}) {
        const HnfResult* to = from == &a ? &b : &a;
        for (int col = 0; col < from->rank(); ++col) {
            std::vector<Padic> c(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) c[size_t(i)] = from->h.at(i, col);
            if (!hnf_solve(W, *to, std::move(c))) return false;
        }
    }
    return true;
}

}  // namespace

LatticeRep stable_lattice(const WittRing& W, const LatticeRep& rep, const PadicMatrix& initial_basis) {
    HnfResult basis = hnf_local(W, initial_basis);
    if (basis.rank() != rep.dim) throw check_failure("initial basis is not full rank");
    for (int round = 0; round < 4 * rep.dim + 4; ++round) {
        PadicMatrix B = pivot_columns(basis, rep.dim);
        PadicMatrix candidates(rep.dim, rep.dim * (1 + int(rep.gens.size())), W.precision());
        for (int i = 0; i < rep.dim; ++i)
            for (int j = 0; j < rep.dim; ++j) candidates.at(i, j) = B.at(i, j);
        for (size_t t = 0; t < rep.gens.size(); ++t) {
            PadicMatrix GB = padic_mul(W, rep.gens[t], B);
            for (int i = 0; i < rep.dim; ++i)
                for (int j = 0; j < rep.dim; ++j)
                    candidates.at(i, rep.dim * (1 + int(t)) + j) = GB.at(i, j);
        }
        HnfResult closed = hnf_local(W, candidates);
        if (closed.rank() != rep.dim) throw check_failure("span closure lost rank");
        if (span_equal(W, basis, closed, rep.dim)) return conjugate_by_lattice(W, rep, basis);
        basis = std::move(closed);
    }
    throw check_failure("lattice closure did not terminate");
}

LatticeRep stable_lattice(const WittRing& W, const LatticeRep& rep) {
    return stable_lattice(W, rep, padic_identity(W, rep.dim));
}

KGModule reduce_rep(const WittRing& W, const LatticeRep& rep) {
    if (rep.prec < 2) throw insufficient_precision("reduction requires effective precision >= 2");
    KGModule m;
    m.dim = rep.dim;
    for (const auto& g : rep.gens) m.gens.push_back(padic_reduce(W, g));
    return m;
}

namespace {

LatticeRep to_block_form(const WittRing& W, const LatticeRep& rep, const KGModule& phi1) {
    const Fq& F = W.residue_field();
    KGModule V = reduce_rep(W, rep);
    auto embeds = hom_space(F, phi1, V);
    if (embeds.size() != 1) throw check_failure("socle embedding is not unique");
    const FqMatrix& S = embeds[0];
    FqMatrix T(rep.dim, rep.dim);
    for (int i = 0; i < rep.dim; ++i)
        for (int j = 0; j < phi1.dim; ++j) T.at(i, j) = S.at(i, j);
    int have = phi1.dim;
    for (int e = 0; e < rep.dim && have < rep.dim; ++e) {
        FqMatrix test(rep.dim, have + 1);
        for (int i = 0; i < rep.dim; ++i)
            for (int j = 0; j < have; ++j) test.at(i, j) = T.at(i, j);
        test.at(e, have) = 1;
        if (fq_rank(F, test) == have + 1) {
            T.at(e, have) = 1;
            ++have;
        }
    }
    if (have != rep.dim) throw check_failure("could not extend socle to a basis");
    PadicMatrix Tl = padic_lift(W, T);
    for (auto& x : Tl.a) x.prec = std::min<int>(x.prec, rep.prec);
    PadicMatrix Ti = padic_unit_inverse(W, Tl);
    LatticeRep out;
    out.dim = rep.dim;
    out.prec = rep.prec;
    for (const auto& R : rep.gens) out.gens.push_back(padic_mul(W, padic_mul(W, Ti, R), Tl));
    // the conjugated reduction must be block upper triangular with the phi1 block exact
    KGModule Vb = reduce_rep(W, out);
    for (size_t t = 0; t < Vb.gens.size(); ++t)
        for (int i = phi1.dim; i < out.dim; ++i)
            for (int j = 0; j < phi1.dim; ++j)
                if (Vb.gens[t].at(i, j) != 0) throw check_failure("block form has nonzero lower block");
    for (size_t t = 0; t < Vb.gens.size(); ++t)
        for (int i = 0; i < phi1.dim; ++i)
            for (int j = 0; j < phi1.dim; ++j)
                if (Vb.gens[t].at(i, j) != phi1.gens[t].at(i, j))
                    throw check_failure("socle block does not reproduce the factor exactly");
    return out;
}

}  // namespace

WalkResult walk_to_nonsplit(const WittRing& W, const LatticeRep& rep_in, const KGModule& phi1,
                            const KGModule& phi2, int cap) {
    const Fq& F = W.residue_field();
    WalkResult res;
    res.rep = rep_in;
    for (int step = 0;; ++step) {
        KGModule V = reduce_rep(W, res.rep);
        auto emb1 = hom_space(F, phi1, V);
        auto emb2 = hom_space(F, phi2, V);
        int h1 = int(emb1.size());
        int h2 = int(emb2.size());
        res.transcript.emplace_back(h1, h2);
        if (h1 > 1 || h2 > 1 || h1 + h2 == 0)
            throw check_failure("reduction socle does not match the expected factors");
        if (h1 == 1 && h2 == 0) {
            res.steps = step;
            res.rep = to_block_form(W, res.rep, phi1);
            return res;
        }
        if (step == cap) throw cap_exceeded(cap);
        // peel: preimage of the phi2-submodule, basis [lift(W) | p·I]
        const FqMatrix& S = emb2[0];
        PadicMatrix cols(res.rep.dim, phi2.dim + res.rep.dim, res.rep.prec);
        for (int i = 0; i < res.rep.dim; ++i) {
            for (int j = 0; j < phi2.dim; ++j) {
                cols.at(i, j) = W.lift(S.at(i, j));
                cols.at(i, j).prec = std::min<int>(cols.at(i, j).prec, res.rep.prec);
            }
            cols.at(i, phi2.dim + i) = W.from_int(W.p(), res.rep.prec);
        }
        HnfResult hT = hnf_local(W, cols);
        if (hT.rank() != res.rep.dim) throw check_failure("peeled lattice lost rank");
        res.rep = conjugate_by_lattice(W, res.rep, hT);
    }
}

AlignmentResult align_reductions(const WittRing& W, const LatticeRep& a, const LatticeRep& b) {
    const Fq& F = W.residue_field();
    KGModule Va = reduce_rep(W, a);
    KGModule Vb = reduce_rep(W, b);
    auto homs = hom_space(F, Va, Vb);
    for (const auto& X : homs) {
        if (!fq_inverse(F, X).has_value()) continue;
        PadicMatrix S = padic_lift(W, X);
        for (auto& x : S.a) x.prec = std::min<int>(x.prec, a.prec);
        PadicMatrix Si = padic_unit_inverse(W, S);
        AlignmentResult out;
        out.intertwiner = X;
        out.aligned.dim = a.dim;
        out.aligned.prec = a.prec;
        for (const auto& R : a.gens) out.aligned.gens.push_back(padic_mul(W, padic_mul(W, S, R), Si));
        KGModule check = reduce_rep(W, out.aligned);
        for (size_t t = 0; t < check.gens.size(); ++t)
            if (!(check.gens[t] == Vb.gens[t]))
                throw check_failure("aligned reduction is not entrywise equal");
        return out;
    }
    throw check_failure("no invertible intertwiner between the reductions (hom dimension " +
                        std::to_string(homs.size()) + ")");
}

bool outer_twist_intertwines(const SL2& G, const WittRing& W, const SL2::Bfs& bfs,
                             const LatticeRep& a, const LatticeRep& b) {
    const Fq& F = G.field();
    FqElem c0 = G.nonsquare();
    FqElem c0i = F.inv(c0);
    KGModule twisted;
    twisted.dim = a.dim;
    for (const GroupElem& g : bfs.generators) {
        // diag(c0,1)^{-1} g diag(c0,1) = [[a, b/c0], [c·c0, d]]
        GroupElem conj{g.a, F.mul(g.b, c0i), F.mul(g.c, c0), g.d};
        twisted.gens.push_back(padic_reduce(W, lattice_image(W, a, G, bfs, conj)));
    }
    KGModule Vb = reduce_rep(W, b);
    for (const auto& X : hom_space(F, twisted, Vb))
        if (fq_inverse(F, X).has_value()) return true;
    return false;
}

TraceCertificate trace_certificate(const WittRing& W, const LatticeRep& plus, const LatticeRep& minus) {
    TraceCertificate cert;
    cert.t_plus = padic_trace(W, plus.gens[0]);
    cert.t_minus = padic_trace(W, minus.gens[0]);
    cert.diff = W.sub(cert.t_plus, cert.t_minus);
    cert.diff_valuation = W.valuation(cert.diff);
    cert.digits = std::min(plus.prec, minus.prec);
    Padic sum = W.add(cert.t_plus, cert.t_minus);
    cert.sum_is_one = W.eq_mod(sum, W.from_int(1, sum.prec), cert.digits);
    return cert;
}

TorusControl torus_split_control(const WittRing& W) {
    const Fq& F = W.residue_field();
    TorusControl out;
    Padic w = teichmuller_root(W, F.theta(), F.q() - 1);
    out.rep.dim = 2;
    out.rep.prec = W.precision();
    PadicMatrix m(2, 2, W.precision());
    m.at(0, 0) = w;
    m.at(1, 1) = W.one();
    out.rep.gens.push_back(std::move(m));
    out.phi1.dim = 1;
    out.phi2.dim = 1;
    FqMatrix f1(1, 1), f2(1, 1);
    f1.at(0, 0) = F.theta();
    f2.at(0, 0) = 1;
    out.phi1.gens.push_back(f1);
    out.phi2.gens.push_back(f2);
    return out;
}

}  // namespace sl2cert
