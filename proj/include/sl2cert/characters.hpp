#pragma once

#include <iosfwd>
#include <vector>

#include "sl2cert/common.hpp"
#include "sl2cert/group.hpp"

namespace sl2cert {

/// Rational-valued class function, indexed like ClassInventory::classes.
struct ClassFunction {
    std::vector<Rat> values;
    const Rat& at(int i) const { return values[i]; }
};

/// The order-2 character of the split torus: +1 on squares, -1 otherwise.
int quadratic_character(const Fq& F, FqElem a);

/// Character induced from the Borel subgroup B (the quadratic character of T
/// pulled back along B -> T), computed by the full Frobenius sum
/// (1/|B|) Σ_{x in G, x g x^{-1} in B} value(x g x^{-1}).
ClassFunction borel_induced_character(const SL2& G, const ClassInventory& inv);
ClassFunction borel_induced_character_serial(const SL2& G, const ClassInventory& inv);

/// Closed form of the two irreducible halves of the induced character for
/// q = p^2 (the square root of q is p, so all values are rational integers).
/// sign is +1 or -1.
ClassFunction half_induced_character(const Fq& F, const ClassInventory& inv, int sign);

Rat inner_product(const ClassInventory& inv, std::int64_t group_order, const ClassFunction& x,
                  const ClassFunction& y);

/// Every class here is closed under inversion (checked via classify(rep^-1)),
/// which the simplified inner product relies on.
bool inversion_closed(const SL2& G, const ClassInventory& inv);

void write_chartable_csv(const SL2& G, const ClassInventory& inv, const ClassFunction& rplus,
                         const ClassFunction& rminus, std::ostream& out);

}  // namespace sl2cert
