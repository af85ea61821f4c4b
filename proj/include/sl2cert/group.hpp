#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "sl2cert/fq.hpp"

namespace sl2cert {

struct GroupElem {
    FqElem a = 0, b = 0, c = 0, d = 0;
    bool operator==(const GroupElem&) const = default;
};

enum class ClassKind : std::uint8_t { Central = 0, Unipotent = 1, Split = 2, NonSplit = 3 };

/// Conjugacy class label of SL(2,q). Central and Unipotent carry the sign of
/// the trace; Unipotent additionally carries the square class of the
/// normalized off-diagonal parameter. Split classes are labelled by
/// min{a, a^-1} of the eigenvalue pair, non-split ones by the trace.
struct ClassLabel {
    ClassKind kind = ClassKind::Central;
    std::int8_t eps = 0;
    std::int8_t tau = 0;
    FqElem param = 0;

    bool operator==(const ClassLabel&) const = default;
    bool operator<(const ClassLabel& o) const {
        auto key = [](const ClassLabel& l) {
            return std::tuple(int(l.kind), -int(l.eps), -int(l.tau), int(l.param));
        };
        return key(*this) < key(o);
    }
    std::string str() const;
};

struct ClassInfo {
    ClassLabel label;
    GroupElem rep;  // first element of the class in enumeration order
    std::int64_t size = 0;
};

struct ClassInventory {
    std::vector<ClassInfo> classes;      // canonical label order
    std::vector<std::int32_t> class_of;  // per group-element index
    int index_of(const ClassLabel& l) const;
};

class SL2 {
public:
    explicit SL2(const Fq& F);

    const Fq& field() const { return *F_; }
    std::int64_t order() const { return std::int64_t(elems_.size()); }
    const std::vector<GroupElem>& elements() const { return elems_; }
    std::int32_t index_of(const GroupElem& g) const;
    const GroupElem& element(std::int32_t i) const { return elems_[i]; }

    GroupElem mul(const GroupElem& x, const GroupElem& y) const;
    GroupElem inv(const GroupElem& x) const;
    FqElem trace(const GroupElem& x) const { return F_->add(x.a, x.d); }

    GroupElem identity() const { return {1, 0, 0, 1}; }
    GroupElem minus_identity() const;
    GroupElem upper(FqElem x) const { return {1, x, 0, 1}; }
    GroupElem lower(FqElem x) const { return {1, 0, x, 1}; }
    GroupElem diag(FqElem a) const { return {a, 0, 0, F_->inv(a)}; }
    GroupElem weyl() const { return {0, F_->neg(1), 1, 0}; }
    /// c0, the fixed non-square used for the second unipotent representative.
    FqElem nonsquare() const { return c0_; }

    ClassLabel classify(const GroupElem& g) const;
    ClassInventory class_inventory(bool parallel = true) const;
    /// One representative per class built from the canonical family
    /// {±I} ∪ {±u_+, ±u_-} ∪ {d(a)} ∪ {d'(ξ)}; d'(ξ) is the multiplication
    /// matrix of ξ ∈ μ_{q+1} on F_{q^2} in the power basis.
    std::vector<GroupElem> canonical_class_representatives() const;

    /// {I} ∪ {u(λ)·s}: every g factors uniquely as rep·b with b upper triangular.
    std::vector<GroupElem> coset_reps() const;
    struct Factorization {
        int rep;      // index into coset_reps()
        GroupElem b;  // upper triangular part
    };
    Factorization factorize(const GroupElem& g) const;

    std::vector<GroupElem> default_generators() const;
    std::vector<GroupElem> alternate_generators() const;

    struct Bfs {
        std::vector<std::int32_t> parent;   // -1 at the identity
        std::vector<std::int8_t> via_gen;   // generator index on the tree edge
        std::vector<std::int32_t> order;    // BFS visit order
        std::vector<GroupElem> generators;
    };
    /// Breadth-first closure under right multiplication; throws closure_failure
    /// when the set does not generate.
    Bfs bfs(const std::vector<GroupElem>& gens) const;
    /// Default generators with a verified closure; falls back to adjoining the
    /// lower unipotent u^T(1) if the default set fails to generate.
    Bfs generating_set() const;
    /// Generator word for g along the BFS tree (left-to-right product).
    std::vector<int> word(const Bfs& b, const GroupElem& g) const;

private:
    const Fq* F_;
    FqElem c0_;
    std::vector<GroupElem> elems_;
    std::vector<std::int32_t> idx_;
    std::int64_t pack(const GroupElem& g) const;
};

/// Conjugacy tally kernels: label every element. The parallel version and the
/// serial reference produce identical output.
std::vector<ClassLabel> classify_all(const SL2& G);
std::vector<ClassLabel> classify_all_serial(const SL2& G);

}  // namespace sl2cert
