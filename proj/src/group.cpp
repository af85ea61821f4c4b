#include "sl2cert/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sl2cert/parallel.hpp"

namespace sl2cert {

std::string ClassLabel::str() const {
    auto sign = [](int v) { return v > 0 ? std::string("+") : std::string("-"); };
    switch (kind) {
        case ClassKind::Central: return "Z" + sign(eps);
        case ClassKind::Unipotent: return "U" + sign(eps) + sign(tau);
        case ClassKind::Split: return "S(" + std::to_string(param) + ")";
        case ClassKind::NonSplit: return "N(" + std::to_string(param) + ")";
    }
    return "?";
}

int ClassInventory::index_of(const ClassLabel& l) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), l,
                               [](const ClassInfo& c, const ClassLabel& x) { return c.label < x; });
    if (it == classes.end() || !(it->label == l)) throw check_failure("unknown class label " + l.str());
    return int(it - classes.begin());
}

SL2::SL2(const Fq& F) : F_(&F) {
    int q = F.q();
    if (q % 2 == 0) throw usage_error("SL(2,q) machinery here requires odd q");
    c0_ = pick_nonsquare(F);
    idx_.assign(std::int64_t(q) * q * q * q, -1);
    elems_.reserve(std::size_t(q) * (q - 1) * (q + 1));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    FqElem det = F.sub(F.mul(FqElem(a), FqElem(d)), F.mul(FqElem(b), FqElem(c)));
                    if (det != 1) continue;
                    GroupElem g{FqElem(a), FqElem(b), FqElem(c), FqElem(d)};
                    idx_[pack(g)] = std::int32_t(elems_.size());
                    elems_.push_back(g);
                }
}

std::int64_t SL2::pack(const GroupElem& g) const {
    std::int64_t q = F_->q();
    return ((std::int64_t(g.a) * q + g.b) * q + g.c) * q + g.d;
}

std::int32_t SL2::index_of(const GroupElem& g) const {
    std::int32_t i = idx_[pack(g)];
    if (i < 0) throw check_failure("element is not in SL(2,q)");
    return i;
}

GroupElem SL2::mul(const GroupElem& x, const GroupElem& y) const {
    const Fq& F = *F_;
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

GroupElem SL2::inv(const GroupElem& x) const {
    const Fq& F = *F_;
    return {x.d, F.neg(x.b), F.neg(x.c), x.a};
}

GroupElem SL2::minus_identity() const {
    FqElem m = F_->neg(1);
    return {m, 0, 0, m};
}

ClassLabel SL2::classify(const GroupElem& g) const {
    const Fq& F = *F_;
    if (g == identity()) return {ClassKind::Central, +1, 0, 0};
    if (g == minus_identity()) return {ClassKind::Central, -1, 0, 0};
    FqElem tr = trace(g);
    FqElem two = F.add(1, 1);
    if (tr == two || tr == F.neg(two)) {
        int eps = tr == two ? +1 : -1;
        FqElem e = eps > 0 ? FqElem(1) : F.neg(1);
        // eigenvector of g - eps*I, extended to a determinant-1 basis
        FqMatrix m(2, 2);
        m.at(0, 0) = F.sub(g.a, e);
        m.at(0, 1) = g.b;
        m.at(1, 0) = g.c;
        m.at(1, 1) = F.sub(g.d, e);
        auto ker = fq_nullspace(F, m);
        if (ker.size() != 1) throw check_failure("unipotent eigenspace is not a line");
        FqElem v1 = ker[0][0], v2 = ker[0][1];
        GroupElem T{};
        bool found = false;
        for (int w1 = 0; w1 < F.q() && !found; ++w1)
            for (int w2 = 0; w2 < F.q() && !found; ++w2) {
                if (F.sub(F.mul(v1, FqElem(w2)), F.mul(v2, FqElem(w1))) == 1) {
                    T = GroupElem{v1, FqElem(w1), v2, FqElem(w2)};
                    found = true;
                }
            }
        GroupElem eg{F.mul(e, g.a), F.mul(e, g.b), F.mul(e, g.c), F.mul(e, g.d)};
        GroupElem h = mul(mul(inv(T), eg), T);
        if (h.c != 0 || h.a != 1 || h.d != 1) throw check_failure("unipotent normal form failed");
        int tau = F.is_square(h.b) ? +1 : -1;
        return {ClassKind::Unipotent, std::int8_t(eps), std::int8_t(tau), 0};
    }
    FqElem disc = F.sub(F.mul(tr, tr), F.add(two, two));
    auto r = F.sqrt(disc);
    if (r.has_value()) {
        FqElem inv2 = F.inv(two);
        FqElem lam = F.mul(F.add(tr, *r), inv2);
        FqElem lami = F.inv(lam);
        return {ClassKind::Split, 0, 0, std::min(lam, lami)};
    }
    return {ClassKind::NonSplit, 0, 0, tr};
}

std::vector<ClassLabel> classify_all_serial(const SL2& G) {
    std::vector<ClassLabel> out(G.order());
    for (std::int64_t i = 0; i < G.order(); ++i) out[i] = G.classify(G.element(std::int32_t(i)));
    return out;
}

std::vector<ClassLabel> classify_all(const SL2& G) {
    std::vector<ClassLabel> out(G.order());
    parallel_for(G.order(), [&](std::int64_t i) { out[i] = G.classify(G.element(std::int32_t(i))); });
    return out;
}

ClassInventory SL2::class_inventory(bool parallel) const {
    std::vector<ClassLabel> labels = parallel ? classify_all(*this) : classify_all_serial(*this);
    std::map<ClassLabel, std::pair<std::int64_t, std::int32_t>> tally;  // label -> (size, first index)
    for (std::int64_t i = 0; i < order(); ++i) {
        auto [it, fresh] = tally.try_emplace(labels[i], 0, std::int32_t(i));
        ++it->second.first;
        (void)fresh;
    }
    ClassInventory inv;
    for (const auto& [label, info] : tally)
        inv.classes.push_back(ClassInfo{label, elems_[info.second], info.first});
    inv.class_of.resize(order());
    for (std::int64_t i = 0; i < order(); ++i)
        inv.class_of[i] = inv.index_of(labels[i]);
    return inv;
}

std::vector<GroupElem> SL2::canonical_class_representatives() const {
    const Fq& F = *F_;
    int q = F.q();
    std::vector<GroupElem> reps;
    reps.push_back(identity());
    reps.push_back(minus_identity());
    GroupElem up = upper(1), um = upper(c0_);
    auto negate = [&](const GroupElem& g) {
        FqElem m = F.neg(1);
        return GroupElem{F.mul(m, g.a), F.mul(m, g.b), F.mul(m, g.c), F.mul(m, g.d)};
    };
    reps.push_back(up);
    reps.push_back(um);
    reps.push_back(negate(up));
    reps.push_back(negate(um));
    // d(a) over {a, a^-1} orbits, a != ±1
    std::vector<std::uint8_t> seen(q, 0);
    for (int a = 1; a < q; ++a) {
        FqElem e(a);
        if (e == 1 || e == F.neg(1) || seen[e]) continue;
        seen[e] = seen[F.inv(e)] = 1;
        reps.push_back(diag(e));
    }
    // d'(ξ) for ξ ∈ μ_{q+1} \ {±1} modulo inversion: multiplication matrices on
    // F_{q^2} = F_q[y]/(y^2 + B y + C) in the power basis {1, y}
    FqElem B = 0, C = 0;
    bool found = false;
    for (int c = 0; c < q && !found; ++c)
        for (int b = 0; b < q && !found; ++b) {
            bool has_root = false;
            for (int x = 0; x < q && !has_root; ++x) {
                FqElem v = F.add(F.add(F.mul(FqElem(x), FqElem(x)), F.mul(FqElem(b), FqElem(x))), FqElem(c));
                if (v == 0) has_root = true;
            }
            if (!has_root) { B = FqElem(b); C = FqElem(c); found = true; }
        }
    if (!found) throw check_failure("no irreducible quadratic over F_q");
    auto ext_mul = [&](std::pair<FqElem, FqElem> x, std::pair<FqElem, FqElem> y) {
        // (u + v y)(u' + v' y), y^2 = -(B y + C)
        FqElem c0 = F.mul(x.first, y.first);
        FqElem c1 = F.add(F.mul(x.first, y.second), F.mul(x.second, y.first));
        FqElem c2 = F.mul(x.second, y.second);
        return std::pair<FqElem, FqElem>(F.sub(c0, F.mul(c2, C)), F.sub(c1, F.mul(c2, B)));
    };
    std::vector<std::uint8_t> seen_tr(q, 0);
    for (int u = 0; u < q; ++u)
        for (int v = 0; v < q; ++v) {
            if (v == 0) continue;  // ξ ∈ F_q would be ±1 or of norm != 1
            std::pair<FqElem, FqElem> xi{FqElem(u), FqElem(v)};
            // ξ^{q+1} == 1?
            std::pair<FqElem, FqElem> acc(1, 0);
            for (int e = 0; e < q + 1; ++e) acc = ext_mul(acc, xi);
            if (!(acc.first == 1 && acc.second == 0)) continue;
            FqElem tr = F.sub(F.add(FqElem(u), FqElem(u)), F.mul(FqElem(v), B));
            if (seen_tr[tr]) continue;  // ξ and ξ^{-1} share the trace
            seen_tr[tr] = 1;
            // multiplication matrix of ξ = u + v y: columns ξ·1, ξ·y
            GroupElem m{FqElem(u), F.neg(F.mul(FqElem(v), C)), FqElem(v), F.sub(FqElem(u), F.mul(FqElem(v), B))};
            FqElem det = F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
            if (det != 1) throw check_failure("norm-one element gave determinant != 1");
            reps.push_back(m);
        }
    return reps;
}

std::vector<GroupElem> SL2::coset_reps() const {
    std::vector<GroupElem> reps;
    reps.push_back(identity());
    for (int lam = 0; lam < F_->q(); ++lam) reps.push_back(mul(upper(FqElem(lam)), weyl()));
    return reps;
}

SL2::Factorization SL2::factorize(const GroupElem& g) const {
    const Fq& F = *F_;
    if (g.c == 0) return {0, g};
    FqElem lam = F.mul(g.a, F.inv(g.c));
    GroupElem rep = mul(upper(lam), weyl());
    GroupElem b = mul(inv(rep), g);
    if (b.c != 0) throw check_failure("coset factorization failed");
    return {1 + int(lam), b};
}

std::vector<GroupElem> SL2::default_generators() const {
    return {upper(1), upper(F_->theta()), weyl()};
}

std::vector<GroupElem> SL2::alternate_generators() const {
    return {upper(1), weyl(), mul(upper(F_->theta()), weyl())};
}

SL2::Bfs SL2::bfs(const std::vector<GroupElem>& gens) const {
    Bfs b;
    b.generators = gens;
    b.parent.assign(order(), -2);  // -2 unvisited, -1 root
    b.via_gen.assign(order(), -1);
    b.order.reserve(order());
    std::int32_t root = index_of(identity());
    b.parent[root] = -1;
    b.order.push_back(root);
    std::deque<std::int32_t> queue{root};
    while (!queue.empty()) {
        std::int32_t gi = queue.front();
        queue.pop_front();
        const GroupElem& g = elems_[gi];
        for (size_t t = 0; t < gens.size(); ++t) {
            std::int32_t hi = index_of(mul(g, gens[t]));
            if (b.parent[hi] != -2) continue;
            b.parent[hi] = gi;
            b.via_gen[hi] = std::int8_t(t);
            b.order.push_back(hi);
            queue.push_back(hi);
        }
    }
    if (std::int64_t(b.order.size()) != order())
        throw closure_failure("generating set closes on " + std::to_string(b.order.size()) + " of " +
                              std::to_string(order()) + " elements");
    return b;
}

SL2::Bfs SL2::generating_set() const {
    std::vector<GroupElem> gens = default_generators();
    try {
        return bfs(gens);
    } catch (const closure_failure&) {
        gens.push_back(lower(1));
        return bfs(gens);
    }
}

std::vector<int> SL2::word(const Bfs& b, const GroupElem& g) const {
    std::vector<int> w;
    std::int32_t i = index_of(g);
    while (b.parent[i] != -1) {
        w.push_back(b.via_gen[i]);
        i = b.parent[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

}  // namespace sl2cert
