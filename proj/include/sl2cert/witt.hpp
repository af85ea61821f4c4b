#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "sl2cert/fq.hpp"

namespace sl2cert {

/// Element of W(F_{p^s}) truncated mod p^N, in the polynomial basis of the
/// monic lift of the residue field's defining polynomial. `prec` is the
/// effective precision: the element is trusted mod p^prec, and coefficients
/// are kept canonically reduced mod p^prec so equality is memberwise.
struct Padic {
    std::array<std::int64_t, 2> c{0, 0};
    std::int32_t prec = 0;
    bool operator==(const Padic&) const = default;
};

struct Valuation {
    bool exact;  // false means "at least prec" (the sentinel case)
    int v;
};

/// W(F_{p^s}) mod p^N for s in {1, 2}. Every certificate in this project
/// needs only unramified degree <= 2.
class WittRing {
public:
    WittRing(const Fq& residue_field, int N);

    const Fq& residue_field() const { return *k_; }
    int p() const { return p_; }
    int s() const { return s_; }
    int precision() const { return N_; }
    std::int64_t modulus() const { return pN_; }
    std::int64_t p_power(int k) const { return ppow_[k]; }

    Padic zero(int prec) const { return Padic{{0, 0}, prec}; }
    Padic one() const { return from_int(1); }
    Padic from_int(std::int64_t v, int prec = -1) const;
    /// Coefficient-wise residue lift (digits in 0..p-1), full precision.
    Padic lift(FqElem a) const;
    FqElem reduce(const Padic& x) const;

    Padic add(const Padic& a, const Padic& b) const;
    Padic sub(const Padic& a, const Padic& b) const;
    Padic neg(const Padic& a) const;
    Padic mul(const Padic& a, const Padic& b) const;
    Padic mul_int(std::int64_t k, const Padic& a) const;

    Valuation valuation(const Padic& a) const;
    bool is_unit(const Padic& a) const;
    /// Inverse of a unit (Newton lift of the residue inverse); no precision loss.
    Padic unit_inverse(const Padic& a) const;
    /// Exact division by p^k; requires valuation >= k; costs k digits of precision.
    Padic div_p_pow(const Padic& a, int k) const;
    /// General division by b = p^v * unit.
    Padic div(const Padic& a, const Padic& b) const;

    bool eq_mod(const Padic& a, const Padic& b, int digits) const;
    bool is_zero(const Padic& a) const { return a.c[0] == 0 && a.c[1] == 0; }

private:
    Padic canon(std::array<std::int64_t, 2> c, int prec) const;
    const Fq* k_;
    int p_, s_, N_;
    std::int64_t pN_;
    std::vector<std::int64_t> ppow_;
    std::array<std::int64_t, 2> lift_poly_{0, 0};  // low coefficients of the monic lift
};

struct PadicMatrix {
    int rows = 0, cols = 0;
    std::vector<Padic> a;

    PadicMatrix() = default;
    PadicMatrix(int r, int c, int prec) : rows(r), cols(c), a(size_t(r) * size_t(c), Padic{{0, 0}, prec}) {}
    Padic& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Padic& at(int i, int j) const { return a[size_t(i) * cols + j]; }
    bool operator==(const PadicMatrix&) const = default;
};

PadicMatrix padic_identity(const WittRing& W, int n);
PadicMatrix padic_mul(const WittRing& W, const PadicMatrix& A, const PadicMatrix& B);
PadicMatrix padic_add(const WittRing& W, const PadicMatrix& A, const PadicMatrix& B);
PadicMatrix padic_scalar_mul(const WittRing& W, std::int64_t k, const PadicMatrix& A);
Padic padic_trace(const WittRing& W, const PadicMatrix& A);
int padic_min_prec(const PadicMatrix& A);
bool padic_eq_mod(const WittRing& W, const PadicMatrix& A, const PadicMatrix& B, int digits);
FqMatrix padic_reduce(const WittRing& W, const PadicMatrix& A);
PadicMatrix padic_lift(const WittRing& W, const FqMatrix& A);
/// Inverse of a matrix whose reduction is invertible (unit pivots, no loss).
PadicMatrix padic_unit_inverse(const WittRing& W, const PadicMatrix& A);

struct HnfPivot {
    int row;
    int col;  // column position in the reduced matrix
    int val;  // pivot valuation
};

/// Column echelon form over the truncated local ring. Pivots are chosen by
/// minimal valuation, ties broken by lowest row then lowest column; pivot
/// columns are moved to the front in selection order and unit-normalized so
/// the pivot entry is exactly p^val. transform is the accumulated column
/// operation matrix: input * transform == h (within precision), and
/// transform is invertible over the ring.
struct HnfResult {
    PadicMatrix h;
    PadicMatrix transform;
    std::vector<HnfPivot> pivots;
    int min_prec;
    int rank() const { return int(pivots.size()); }
};

HnfResult hnf_local(const WittRing& W, const PadicMatrix& m);

/// Solve (pivot columns of h) * x = c by back-substitution; nullopt when c is
/// not in the span at the available precision.
std::optional<std::vector<Padic>> hnf_solve(const WittRing& W, const HnfResult& h, std::vector<Padic> c);

/// Smallest y with y^m = 1 and y = lift(a) mod p: Newton iteration; requires
/// gcd(m, p) = 1 and a^m = 1 in the residue field.
Padic teichmuller_root(const WittRing& W, FqElem a, long long m);

}  // namespace sl2cert
