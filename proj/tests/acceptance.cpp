// Acceptance suite: one pass/fail line per criterion, exit code 0 only if all
// criteria hold. Each criterion is asserted exactly as stated, including the
// ones the computed mathematics contradicts; see the report diagnostics for
// those ("alignment" stage and the measured Ext dimension).
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "sl2cert/characters.hpp"
#include "sl2cert/fiber.hpp"
#include "sl2cert/modular.hpp"
#include "sl2cert/ordinary.hpp"
#include "sl2cert/pipeline.hpp"

using namespace sl2cert;

namespace {

int failures = 0;

void report(int num, bool ok, const std::string& what, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Shared {
    Fq F{3, 2};
    SL2 G{F};
    SL2::Bfs bfs;
    ClassInventory inv;
    WittRing W{F, 12};
    InducedModule ind{G};
    ClassFunction rplus, rminus;
    LatticeRep rho_plus, rho_minus;
    KGModule phi1, phi2;
    WalkResult walk_plus, walk_minus;

    Shared() : bfs(G.bfs(G.default_generators())) {
        inv = G.class_inventory(true);
        rplus = half_induced_character(F, inv, +1);
        rminus = half_induced_character(F, inv, -1);
        rho_plus = split_by_idempotent(G, W, ind, central_idempotent(G, inv, W, rplus, 5)).rep;
        rho_minus = split_by_idempotent(G, W, ind, central_idempotent(G, inv, W, rminus, 5)).rep;
        auto gens = G.default_generators();
        phi1 = simple_module(F, gens, 4);
        phi2 = simple_module(F, gens, 0);
        walk_plus = walk_to_nonsplit(W, rho_plus, phi1, phi2, 20);
        walk_minus = walk_to_nonsplit(W, rho_minus, phi1, phi2, 20);
    }
};

void criterion1(Shared& S) {
    auto t0 = std::chrono::steady_clock::now();
    ClassInventory inv = S.G.class_inventory(true);
    double dt = elapsed(t0);
    std::int64_t total = 0;
    for (const auto& c : inv.classes) total += c.size;
    auto reps = S.G.canonical_class_representatives();
    std::vector<bool> seen(inv.classes.size(), false);
    bool realized = reps.size() == inv.classes.size();
    for (const auto& r : reps) {
        int i = inv.index_of(S.G.classify(r));
        if (seen[size_t(i)]) realized = false;
        seen[size_t(i)] = true;
    }
    for (bool b : seen) realized = realized && b;
    bool ok = inv.classes.size() == 13 && total == 720 && realized && dt < 1.0;
    report(1, ok, "class inventory: 13 classes, sizes sum 720, canonical family realized",
           "took " + std::to_string(dt) + " s");
}

void criterion2(Shared& S) {
    ClassFunction ind = borel_induced_character(S.G, S.inv);
    bool pointwise = true;
    for (size_t i = 0; i < S.inv.classes.size(); ++i)
        if (!(S.rplus.at(int(i)) + S.rminus.at(int(i)) == ind.at(int(i)))) pointwise = false;
    bool ok = inner_product(S.inv, S.G.order(), S.rplus, S.rplus) == Rat(1) &&
              inner_product(S.inv, S.G.order(), S.rminus, S.rminus) == Rat(1) &&
              inner_product(S.inv, S.G.order(), S.rplus, S.rminus) == Rat(0) && pointwise;
    report(2, ok, "character certificates: norms 1, orthogonal, halves sum to the induced character");
}

void criterion3(Shared& S) {
    bool dims = S.rho_plus.dim == 5 && S.rho_minus.dim == 5;
    HomCheckResult hp = homomorphism_check(S.G, S.W, S.rho_plus, S.bfs, 0, 100, false, 8);
    HomCheckResult hm = homomorphism_check(S.G, S.W, S.rho_minus, S.bfs, 1, 100, false, 8);
    bool chars = character_matches(S.G, S.W, S.rho_plus, S.bfs, S.inv, S.rplus, 8) &&
                 character_matches(S.G, S.W, S.rho_minus, S.bfs, S.inv, S.rminus, 8);
    report(3, dims && hp.ok && hm.ok && chars,
           "extraction: dim 5, multiplicative mod 3^8, per-class traces match the closed form mod 3^8");
}

void criterion4(Shared& S) {
    bool steps = S.walk_plus.steps <= 20 && S.walk_minus.steps <= 20;
    KGModule vp = reduce_rep(S.W, S.walk_plus.rep);
    KGModule vm = reduce_rep(S.W, S.walk_minus.rep);
    bool nonsplit = !is_split_reduction(S.F, vp, S.phi1, S.phi2) &&
                    !is_split_reduction(S.F, vm, S.phi1, S.phi2);
    bool jh_ok = true;
    try {
        jh_check(S.F, vp, S.phi1, S.phi2);
        jh_check(S.F, vm, S.phi1, S.phi2);
    } catch (const check_failure&) {
        jh_ok = false;
    }
    bool capped = false;
    try {
        WittRing W28(S.F, 28);
        TorusControl control = torus_split_control(W28);
        walk_to_nonsplit(W28, control.rep, control.phi1, control.phi2, 20);
    } catch (const cap_exceeded&) {
        capped = true;
    }
    report(4, steps && nonsplit && jh_ok && capped,
           "lattice walks terminate non-split with factors {L(4), L(0)}; split control hits the cap",
           "steps " + std::to_string(S.walk_plus.steps) + "/" + std::to_string(S.walk_minus.steps));
}

void criterion5(Shared& S) {
    auto t0 = std::chrono::steady_clock::now();
    auto gens = S.G.default_generators();
    ExtResult ext = ext_dimension(S.F, S.G, S.bfs, S.phi1, S.phi2);
    auto gens2 = S.G.alternate_generators();
    SL2::Bfs bfs2 = S.G.bfs(gens2);
    ExtResult ext2 =
        ext_dimension(S.F, S.G, bfs2, simple_module(S.F, gens2, 4), simple_module(S.F, gens2, 0));
    bool gen_independent = ext.h1 == ext2.h1;
    bool ext_is_one = ext.h1 == 1;

    bool end_aligned_one = false;
    std::string align_note;
    try {
        AlignmentResult al = align_reductions(S.W, S.walk_plus.rep, S.walk_minus.rep);
        KGModule v = reduce_rep(S.W, al.aligned);
        end_aligned_one = hom_space(S.F, v, v).size() == 1;
    } catch (const check_failure& e) {
        align_note = std::string("no aligned reduction exists (") + e.what() + ")";
    }

    bool simple_all = true;
    std::vector<KGModule> simples;
    for (int n = 0; n <= 8; ++n) simples.push_back(simple_module(S.F, gens, n));
    for (int n = 0; n <= 8; ++n)
        if (!simplicity_check(S.F, simples[size_t(n)], 0).simple) simple_all = false;

    bool table_ok = true;
    for (int n = 0; n <= 8; ++n) {
        auto peeled = socle_peel_factors(S.F, weyl_module(S.F, gens, n), simples);
        std::vector<int> expected;
        for (int m = 0; m <= 8; ++m)
            if (weyl_multiplicity(m, n, 3)) expected.push_back(m);
        if (peeled != expected) table_ok = false;
    }
    double dt = elapsed(t0);
    bool ok = ext_is_one && gen_independent && end_aligned_one && simple_all && table_ok && dt < 30.0;
    report(5, ok,
           "modular certificates: Ext = 1 (two generating sets), End of the aligned reduction = 1, "
           "all L(n) simple, decomposition table matches the recursion",
           "computed Ext dim = " + std::to_string(ext.h1) + " (generating sets agree: " +
               (gen_independent ? "yes" : "no") + "); " +
               (align_note.empty() ? "aligned" : align_note) + "; took " + std::to_string(dt) + " s");
}

void criterion6(Shared& S) {
    bool aligned = false;
    bool equal = false;
    try {
        AlignmentResult al = align_reductions(S.W, S.walk_plus.rep, S.walk_minus.rep);
        aligned = true;
        equal = reduce_rep(S.W, al.aligned).gens == reduce_rep(S.W, S.walk_minus.rep).gens;
    } catch (const check_failure&) {
    }
    TraceCertificate cert = trace_certificate(S.W, S.walk_plus.rep, S.walk_minus.rep);
    bool val_one = cert.diff_valuation.exact && cert.diff_valuation.v == 1;
    Padic over_p = S.W.div_p_pow(cert.diff, 1);
    bool pm3 = S.W.eq_mod(over_p, S.W.from_int(1, over_p.prec), 7) ||
               S.W.eq_mod(over_p, S.W.from_int(-1, over_p.prec), 7);
    report(6, aligned && equal && val_one && pm3,
           "trace certificate on aligned reductions: entrywise equal, val(t+ - t-) = 1, diff = ±3 mod 3^8",
           std::string("aligned: ") + (aligned ? "yes" : "no") +
               ", valuation(t+ - t-) = " + std::to_string(cert.diff_valuation.v) +
               ", diff is ±3 mod 3^8: " + (pm3 ? "yes" : "no"));
}

void criterion7() {
    Fq F3(3, 2);
    WittRing W3(F3, 12);
    FiberCertificate a = fiber_ring_certificate(W3, 0);
    Fq F5(5, 2);
    WittRing W5(F5, 12);
    FiberCertificate b = fiber_ring_certificate(W5, 0);
    report(7, a.pass() && b.pass(), "fiber ring: X -> (0,p) certified on truncated models, (0,p)^2 = p(0,p)");
}

void criterion8() {
    Mod2Certificate cert = mod2_group_algebra_certificate(12);
    report(8, cert.pass(),
           "p = 2 path: group-algebra identification for s in {1,2}; lift counts match on all 6 test rings");
}

void criterion9() {
    PipelineConfig cfg3;
    cfg3.p = 3;
    auto t0 = std::chrono::steady_clock::now();
    nlohmann::json r3 = run_full(cfg3);
    double dt3 = elapsed(t0);
    bool scope = r3.contains("scope") && !r3["scope"].get<std::string>().empty();
    bool complete3 = r3["stages"].size() >= 9 && dt3 < 60.0;

    PipelineConfig cfg5;
    cfg5.p = 5;
    cfg5.large = true;
    auto t1 = std::chrono::steady_clock::now();
    nlohmann::json r5 = run_full(cfg5);
    double dt5 = elapsed(t1);
    bool complete5 = r5["stages"].size() >= 9 && dt5 < 1800.0;
    report(9, scope && complete3 && complete5,
           "full pipeline completes: p=3 under 60 s, p=5 under 30 min, scope stated in the report",
           "p=3 " + std::to_string(dt3) + " s, p=5 " + std::to_string(dt5) + " s");
}

void criterion10() {
    PipelineConfig cfg;
    cfg.p = 3;
    cfg.seed = 42;
    nlohmann::json a = run_full(cfg);
    nlohmann::json b = run_full(cfg);
    a.erase("timings_ms");
    b.erase("timings_ms");
    report(10, a.dump() == b.dump(), "repeated runs with a fixed seed are byte-identical modulo timings");
}

}  // namespace

int main() {
    Shared S;
    criterion1(S);
    criterion2(S);
    criterion3(S);
    criterion4(S);
    criterion5(S);
    criterion6(S);
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
