#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sl2cert/common.hpp"

namespace sl2cert {

/// Element of F_{p^s}, stored as its enumeration index c0 + c1*p + ... in the
/// fixed polynomial basis. All arithmetic goes through the owning Fq tables.
using FqElem = std::uint16_t;

/// F_{p^s} with a deterministic defining polynomial (the lexicographically
/// smallest monic irreducible, coefficients compared constant-first) and a
/// deterministic generator theta (smallest index of multiplicative order q-1).
class Fq {
public:
    Fq(int p, int s);

    int p() const { return p_; }
    int s() const { return s_; }
    int q() const { return q_; }
    /// Low coefficients of the monic defining polynomial (size s, constant first).
    const std::vector<int>& defining_poly() const { return poly_; }
    FqElem theta() const { return theta_; }
    FqElem one() const { return 1; }
    FqElem minus_one() const { return neg(1); }

    FqElem add(FqElem a, FqElem b) const { return add_[size_t(a) * q_ + b]; }
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    FqElem neg(FqElem a) const { return neg_[a]; }
    FqElem mul(FqElem a, FqElem b) const { return mul_[size_t(a) * q_ + b]; }
    FqElem inv(FqElem a) const;
    FqElem pow(FqElem a, long long n) const;
    /// Frobenius x -> x^p.
    FqElem frob(FqElem a) const { return frob_[a]; }

    bool is_square(FqElem a) const;
    /// Smallest y with y*y == a, if any.
    std::optional<FqElem> sqrt(FqElem a) const;

    int multiplicative_order(FqElem a) const;

    FqElem from_coeffs(const std::vector<int>& c) const;
    std::vector<int> coeffs(FqElem a) const;
    /// Image of an integer under Z -> F_p -> F_q.
    FqElem from_int(long long v) const;

private:
    int p_, s_, q_;
    std::vector<int> poly_;
    FqElem theta_ = 0;
    std::vector<FqElem> add_, mul_, neg_, inv_, frob_, sqrt_;
    std::vector<std::uint8_t> square_, sqrt_has_;
};

/// First non-square unit in enumeration order (the element c0 used for u_-).
FqElem pick_nonsquare(const Fq& F);

struct FqMatrix {
    int rows = 0, cols = 0;
    std::vector<FqElem> a;

    FqMatrix() = default;
    FqMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), 0) {}
    FqElem& at(int i, int j) { return a[size_t(i) * cols + j]; }
    FqElem at(int i, int j) const { return a[size_t(i) * cols + j]; }
    bool operator==(const FqMatrix&) const = default;
};

FqMatrix fq_identity(int n);
FqMatrix fq_mul(const Fq& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_transpose(const FqMatrix& A);
std::vector<FqElem> fq_apply(const Fq& F, const FqMatrix& A, const std::vector<FqElem>& v);

/// In-place reduced row echelon form; returns the rank, pivot columns optional.
int fq_rref(const Fq& F, FqMatrix& m, std::vector<int>* pivot_cols = nullptr);
int fq_rank(const Fq& F, FqMatrix m);
/// Basis of the right kernel {v : M v = 0}; deterministic (one vector per free
/// column, unit at the free coordinate).
std::vector<std::vector<FqElem>> fq_nullspace(const Fq& F, const FqMatrix& m);
std::optional<FqMatrix> fq_inverse(const Fq& F, const FqMatrix& m);

}  // namespace sl2cert
