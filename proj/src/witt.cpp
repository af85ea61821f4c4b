#include "sl2cert/witt.hpp"

#include <algorithm>

namespace sl2cert {

namespace {
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return std::int64_t((__int128(a) * b) % m);
}
}  // namespace

WittRing::WittRing(const Fq& residue_field, int N) : k_(&residue_field) {
    p_ = k_->p();
    s_ = k_->s();
    N_ = N;
    if (s_ > 2) throw usage_error("Witt arithmetic supports residue degree <= 2");
    if (N_ < 4) throw insufficient_precision("truncation exponent must be >= 4, got " + std::to_string(N_));
    ppow_.resize(N_ + 1);
    ppow_[0] = 1;
    for (int i = 1; i <= N_; ++i) {
        if (ppow_[i - 1] > (std::int64_t(1) << 60) / p_)
            throw usage_error("p^N too large for 64-bit residues");
        ppow_[i] = ppow_[i - 1] * p_;
    }
    pN_ = ppow_[N_];
    const auto& poly = k_->defining_poly();
    for (int i = 0; i < s_; ++i) lift_poly_[i] = poly[i];
}

Padic WittRing::canon(std::array<std::int64_t, 2> c, int prec) const {
    prec = std::max(0, std::min(prec, N_));
    std::int64_t m = ppow_[prec];
    for (auto& x : c) {
        x %= m;
        if (x < 0) x += m;
    }
    if (prec == 0) return Padic{{0, 0}, 0};
    return Padic{c, prec};
}

Padic WittRing::from_int(std::int64_t v, int prec) const {
    if (prec < 0) prec = N_;
    return canon({v % pN_, 0}, prec);
}

Padic WittRing::lift(FqElem a) const {
    auto c = k_->coeffs(a);
    std::array<std::int64_t, 2> w{c[0], s_ > 1 ? c[1] : 0};
    return canon(w, N_);
}

FqElem WittRing::reduce(const Padic& x) const {
    if (x.prec < 1) throw insufficient_precision("no digits left to reduce mod p");
    std::vector<int> c(s_);
    c[0] = int(x.c[0] % p_);
    if (s_ > 1) c[1] = int(x.c[1] % p_);
    return k_->from_coeffs(c);
}

Padic WittRing::add(const Padic& a, const Padic& b) const {
    return canon({a.c[0] + b.c[0], a.c[1] + b.c[1]}, std::min(a.prec, b.prec));
}

Padic WittRing::sub(const Padic& a, const Padic& b) const {
    return canon({a.c[0] - b.c[0], a.c[1] - b.c[1]}, std::min(a.prec, b.prec));
}

Padic WittRing::neg(const Padic& a) const { return canon({-a.c[0], -a.c[1]}, a.prec); }

Padic WittRing::mul(const Padic& a, const Padic& b) const {
    // absolute precision: the error p^prec(a)·b contributes p^{prec(a)+val(b)}
    Valuation va = valuation(a), vb = valuation(b);
    int prec = std::min(a.prec + vb.v, b.prec + va.v);
    if (s_ == 1) return canon({mulmod(a.c[0], b.c[0], pN_), 0}, prec);
    // (a0 + a1 x)(b0 + b1 x), reduced by x^2 = -(L1 x + L0)
    std::int64_t c0 = mulmod(a.c[0], b.c[0], pN_);
    std::int64_t c1 = (mulmod(a.c[0], b.c[1], pN_) + mulmod(a.c[1], b.c[0], pN_)) % pN_;
    std::int64_t c2 = mulmod(a.c[1], b.c[1], pN_);
    c0 = (c0 - mulmod(c2, lift_poly_[0], pN_)) % pN_;
    c1 = (c1 - mulmod(c2, lift_poly_[1], pN_)) % pN_;
    return canon({c0, c1}, prec);
}

Padic WittRing::mul_int(std::int64_t k, const Padic& a) const {
    k %= pN_;
    if (k < 0) k += pN_;
    int vk = N_;
    if (k != 0) {
        vk = 0;
        for (std::int64_t t = k; t % p_ == 0; t /= p_) ++vk;
    }
    return canon({mulmod(k, a.c[0], pN_), mulmod(k, a.c[1], pN_)}, a.prec + vk);
}

Valuation WittRing::valuation(const Padic& a) const {
    if (is_zero(a)) return Valuation{false, a.prec};
    int v = 0;
    std::array<std::int64_t, 2> c = a.c;
    while (v < a.prec && c[0] % p_ == 0 && c[1] % p_ == 0) {
        c[0] /= p_;
        c[1] /= p_;
        ++v;
    }
    if (v >= a.prec) return Valuation{false, a.prec};
    return Valuation{true, v};
}

bool WittRing::is_unit(const Padic& a) const {
    if (a.prec < 1) throw insufficient_precision("unit test needs at least one digit");
    return a.c[0] % p_ != 0 || (s_ > 1 && a.c[1] % p_ != 0);
}

Padic WittRing::unit_inverse(const Padic& a) const {
    if (!is_unit(a)) throw check_failure("inverse of a non-unit");
    Padic x = lift(k_->inv(reduce(a)));
    x.prec = a.prec;
    x = canon(x.c, a.prec);
    // Newton: x <- x(2 - a x), doubling correct digits
    int digits = 1;
    while (digits < a.prec) {
        Padic t = sub(from_int(2, a.prec), mul(a, x));
        x = mul(x, t);
        digits *= 2;
    }
    return x;
}

Padic WittRing::div_p_pow(const Padic& a, int k) const {
    if (k == 0) return a;
    Valuation v = valuation(a);
    if (v.exact && v.v < k) throw check_failure("inexact division by p^k");
    std::int64_t pk = ppow_[k];
    return canon({a.c[0] / pk, a.c[1] / pk}, a.prec - k);
}

Padic WittRing::div(const Padic& a, const Padic& b) const {
    Valuation v = valuation(b);
    if (!v.exact) throw insufficient_precision("division by a value indistinguishable from zero");
    Padic unit = div_p_pow(b, v.v);
    return mul(div_p_pow(a, v.v), unit_inverse(unit));
}

bool WittRing::eq_mod(const Padic& a, const Padic& b, int digits) const {
    if (digits > a.prec || digits > b.prec)
        throw insufficient_precision("comparison beyond effective precision");
    std::int64_t m = ppow_[digits];
    auto r = [&](std::int64_t x) { return ((x % m) + m) % m; };
    return r(a.c[0]) == r(b.c[0]) && r(a.c[1]) == r(b.c[1]);
}

PadicMatrix padic_identity(const WittRing& W, int n) {
    PadicMatrix m(n, n, W.precision());
    for (int i = 0; i < n; ++i) m.at(i, i) = W.one();
    return m;
}

PadicMatrix padic_mul(const WittRing& W, const PadicMatrix& A, const PadicMatrix& B) {
    if (A.cols != B.rows) throw check_failure("padic_mul shape mismatch");
    int prec = std::min(padic_min_prec(A), padic_min_prec(B));
    PadicMatrix C(A.rows, B.cols, prec);
    for (int i = 0; i < A.rows; ++i)
        for (int t = 0; t < A.cols; ++t) {
            const Padic& v = A.at(i, t);
            if (W.is_zero(v)) continue;
            for (int j = 0; j < B.cols; ++j) {
                const Padic& w = B.at(t, j);
                if (W.is_zero(w)) continue;
                C.at(i, j) = W.add(C.at(i, j), W.mul(v, w));
            }
        }
    // a fully zero row/col product keeps the ambient precision
    for (auto& x : C.a) x.prec = std::min(x.prec, prec);
    return C;
}

PadicMatrix padic_add(const WittRing& W, const PadicMatrix& A, const PadicMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw check_failure("padic_add shape mismatch");
    PadicMatrix C(A.rows, A.cols, W.precision());
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = W.add(A.a[i], B.a[i]);
    return C;
}

PadicMatrix padic_scalar_mul(const WittRing& W, std::int64_t k, const PadicMatrix& A) {
    PadicMatrix C = A;
    for (auto& x : C.a) x = W.mul_int(k, x);
    return C;
}

Padic padic_trace(const WittRing& W, const PadicMatrix& A) {
    Padic t = W.zero(padic_min_prec(A));
    for (int i = 0; i < A.rows; ++i) t = W.add(t, A.at(i, i));
    return t;
}

int padic_min_prec(const PadicMatrix& A) {
    int m = INT32_MAX;
    for (const auto& x : A.a) m = std::min(m, int(x.prec));
    return A.a.empty() ? 0 : m;
}

bool padic_eq_mod(const WittRing& W, const PadicMatrix& A, const PadicMatrix& B, int digits) {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (size_t i = 0; i < A.a.size(); ++i)
        if (!W.eq_mod(A.a[i], B.a[i], digits)) return false;
    return true;
}

FqMatrix padic_reduce(const WittRing& W, const PadicMatrix& A) {
    FqMatrix m(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) m.at(i, j) = W.reduce(A.at(i, j));
    return m;
}

PadicMatrix padic_lift(const WittRing& W, const FqMatrix& A) {
    PadicMatrix m(A.rows, A.cols, W.precision());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) m.at(i, j) = W.lift(A.at(i, j));
    return m;
}

PadicMatrix padic_unit_inverse(const WittRing& W, const PadicMatrix& A) {
    if (A.rows != A.cols) throw check_failure("inverse of non-square matrix");
    int n = A.rows;
    int prec = padic_min_prec(A);
    PadicMatrix aug(n, 2 * n, prec);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = W.from_int(1, prec);
    }
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int r = c; r < n; ++r)
            if (W.is_unit(aug.at(r, c))) { pr = r; break; }
        if (pr < 0) throw check_failure("matrix is not invertible over the local ring");
        if (pr != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(pr, j), aug.at(c, j));
        Padic pinv = W.unit_inverse(aug.at(c, c));
        for (int j = 0; j < 2 * n; ++j) aug.at(c, j) = W.mul(pinv, aug.at(c, j));
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            Padic f = aug.at(r, c);
            if (W.is_zero(f)) continue;
            for (int j = 0; j < 2 * n; ++j)
                aug.at(r, j) = W.sub(aug.at(r, j), W.mul(f, aug.at(c, j)));
        }
    }
    PadicMatrix inv(n, n, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

HnfResult hnf_local(const WittRing& W, const PadicMatrix& m_in) {
    for (const auto& x : m_in.a)
        if (x.prec < 2) throw insufficient_precision("hnf_local needs precision >= 2 on every entry");

    HnfResult res;
    res.h = m_in;
    res.transform = padic_identity(W, m_in.cols);
    PadicMatrix& H = res.h;
    PadicMatrix& U = res.transform;
    int nr = H.rows, nc = H.cols;
    std::vector<std::uint8_t> row_used(nr, 0);

    auto swap_cols = [&](PadicMatrix& M, int i, int j) {
        for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
    };
    auto scale_col = [&](PadicMatrix& M, int j, const Padic& f) {
        for (int r = 0; r < M.rows; ++r) M.at(r, j) = W.mul(M.at(r, j), f);
    };
    auto axpy_col = [&](PadicMatrix& M, int dst, const Padic& f, int src) {
        for (int r = 0; r < M.rows; ++r)
            M.at(r, dst) = W.sub(M.at(r, dst), W.mul(f, M.at(r, src)));
    };

    int k = 0;
    while (k < nc) {
        int best_v = INT32_MAX, best_r = -1, best_c = -1;
        for (int r = 0; r < nr; ++r) {
            if (row_used[r]) continue;
            for (int c = k; c < nc; ++c) {
                Valuation v = W.valuation(H.at(r, c));
                if (!v.exact) continue;
                if (v.v < best_v) { best_v = v.v; best_r = r; best_c = c; }
            }
        }
        if (best_r < 0) break;  // remaining block is zero within precision
        if (best_c != k) { swap_cols(H, best_c, k); swap_cols(U, best_c, k); }
        Padic unit = W.div_p_pow(H.at(best_r, k), best_v);
        Padic uinv = W.unit_inverse(unit);
        scale_col(H, k, uinv);
        scale_col(U, k, uinv);
        for (int c = k + 1; c < nc; ++c) {
            const Padic& e = H.at(best_r, c);
            if (W.is_zero(e)) continue;
            // the pivot has minimal valuation over the submatrix, so this divides
            Padic f = W.div_p_pow(e, best_v);
            axpy_col(H, c, f, k);
            axpy_col(U, c, f, k);
        }
        res.pivots.push_back(HnfPivot{best_r, k, best_v});
        row_used[best_r] = 1;
        ++k;
    }
    res.min_prec = std::min(padic_min_prec(H), padic_min_prec(U));
    return res;
}

std::optional<std::vector<Padic>> hnf_solve(const WittRing& W, const HnfResult& h, std::vector<Padic> c) {
    std::vector<Padic> x(h.pivots.size());
    int out_prec = INT32_MAX;
    for (size_t i = 0; i < h.pivots.size(); ++i) {
        const auto& piv = h.pivots[i];
        const Padic& e = c[piv.row];
        if (W.is_zero(e)) {
            x[i] = W.zero(e.prec);
            out_prec = std::min(out_prec, e.prec);
            continue;
        }
        Valuation v = W.valuation(e);
        if (v.exact && v.v < piv.val) return std::nullopt;
        Padic f = W.div_p_pow(e, piv.val);
        x[i] = f;
        out_prec = std::min(out_prec, int(f.prec));
        for (int r = 0; r < int(c.size()); ++r)
            c[r] = W.sub(c[r], W.mul(f, h.h.at(r, piv.col)));
    }
    // residual must vanish at the precision of the solution
    for (const auto& e : c) {
        Valuation v = W.valuation(e);
        if (v.exact && v.v < std::min<int>(out_prec, e.prec)) return std::nullopt;
    }
    for (auto& xi : x) xi.prec = std::min<int>(xi.prec, out_prec);
    return x;
}

Padic teichmuller_root(const WittRing& W, FqElem a, long long m) {
    const Fq& F = W.residue_field();
    if (m % W.p() == 0) throw check_failure("root order must be prime to p");
    if (F.pow(a, m) != 1) throw check_failure("residue is not an m-th root of unity");
    Padic x = W.lift(a);
    // Newton for x^m - 1: x <- x - (x^m - 1) / (m x^{m-1})
    for (int it = 0; it < W.precision() + 2; ++it) {
        Padic xm1 = W.one();
        for (long long i = 0; i < m - 1; ++i) xm1 = W.mul(xm1, x);
        Padic xm = W.mul(xm1, x);
        Padic f = W.sub(xm, W.one());
        if (W.is_zero(f)) break;
        Padic df = W.mul_int(m, xm1);
        x = W.sub(x, W.mul(f, W.unit_inverse(df)));
    }
    return x;
}

}  // namespace sl2cert
