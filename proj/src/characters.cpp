#include "sl2cert/characters.hpp"

#include <ostream>

#include "sl2cert/parallel.hpp"

namespace sl2cert {

int quadratic_character(const Fq& F, FqElem a) {
    return F.is_square(a) ? +1 : -1;
}

namespace {

ClassFunction induced_impl(const SL2& G, const ClassInventory& inv, bool parallel) {
    const Fq& F = G.field();
    std::int64_t borel_order = std::int64_t(F.q()) * (F.q() - 1);
    ClassFunction chi;
    chi.values.resize(inv.classes.size());
    for (size_t ci = 0; ci < inv.classes.size(); ++ci) {
        const GroupElem rep = inv.classes[ci].rep;
        std::int64_t total = 0;
        if (parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
            for (std::int64_t i = 0; i < G.order(); ++i) {
                const GroupElem& x = G.element(std::int32_t(i));
                GroupElem y = G.mul(G.mul(x, rep), G.inv(x));
                if (y.c == 0) total += quadratic_character(F, y.a);
            }
        } else {
            for (std::int64_t i = 0; i < G.order(); ++i) {
                const GroupElem& x = G.element(std::int32_t(i));
                GroupElem y = G.mul(G.mul(x, rep), G.inv(x));
                if (y.c == 0) total += quadratic_character(F, y.a);
            }
        }
        if (total % borel_order != 0) throw check_failure("Frobenius sum is not divisible by |B|");
        chi.values[ci] = Rat(total / borel_order);
    }
    return chi;
}

}  // namespace

ClassFunction borel_induced_character(const SL2& G, const ClassInventory& inv) {
    return induced_impl(G, inv, true);
}

ClassFunction borel_induced_character_serial(const SL2& G, const ClassInventory& inv) {
    return induced_impl(G, inv, false);
}

ClassFunction half_induced_character(const Fq& F, const ClassInventory& inv, int sign) {
    if (sign != 1 && sign != -1) throw usage_error("sign must be +1 or -1");
    int q = F.q();
    int p = F.p();
    if (p * p != q) throw usage_error("the closed-form halves need q = p^2");
    ClassFunction chi;
    chi.values.reserve(inv.classes.size());
    for (const auto& cls : inv.classes) {
        const ClassLabel& l = cls.label;
        switch (l.kind) {
            case ClassKind::Central: {
                FqElem e = l.eps > 0 ? FqElem(1) : F.neg(1);
                chi.values.push_back(Rat(std::int64_t(q + 1) * quadratic_character(F, e), 2));
                break;
            }
            case ClassKind::Unipotent: {
                FqElem e = l.eps > 0 ? FqElem(1) : F.neg(1);
                std::int64_t a0 = quadratic_character(F, e);
                chi.values.push_back(Rat(a0 * (1 + std::int64_t(sign) * l.tau * p), 2));
                break;
            }
            case ClassKind::Split:
                chi.values.push_back(Rat(quadratic_character(F, l.param)));
                break;
            case ClassKind::NonSplit:
                chi.values.push_back(Rat(0));
                break;
        }
    }
    return chi;
}

Rat inner_product(const ClassInventory& inv, std::int64_t group_order, const ClassFunction& x,
                  const ClassFunction& y) {
    Rat total(0);
    for (size_t i = 0; i < inv.classes.size(); ++i)
        total = total + Rat(inv.classes[i].size) * x.at(int(i)) * y.at(int(i));
    return total / Rat(group_order);
}

bool inversion_closed(const SL2& G, const ClassInventory& inv) {
    for (const auto& cls : inv.classes)
        if (!(G.classify(G.inv(cls.rep)) == cls.label)) return false;
    return true;
}

void write_chartable_csv(const SL2& G, const ClassInventory& inv, const ClassFunction& rplus,
                         const ClassFunction& rminus, std::ostream& out) {
    out << "label,size,representative,R+,R-\n";
    for (size_t i = 0; i < inv.classes.size(); ++i) {
        const auto& c = inv.classes[i];
        out << c.label.str() << "," << c.size << ","
            << "[[" << c.rep.a << "," << c.rep.b << "],[" << c.rep.c << "," << c.rep.d << "]],"
            << rplus.at(int(i)).str() << "," << rminus.at(int(i)).str() << "\n";
    }
    (void)G;
}

}  // namespace sl2cert
