#include "sl2cert/fq.hpp"

#include <algorithm>

namespace sl2cert {

namespace {

// Dense polynomial arithmetic over F_p for the irreducibility search only.
using Poly = std::vector<int>;  // coefficients, constant first

Poly poly_mod(Poly f, const Poly& m, int p) {
    // m monic
    int dm = int(m.size()) - 1;
    while (!f.empty() && f.back() % p == 0) f.pop_back();
    while (int(f.size()) - 1 >= dm) {
        int df = int(f.size()) - 1;
        int lead = f[df] % p;
        if (lead != 0) {
            for (int i = 0; i <= dm; ++i) {
                f[df - dm + i] = ((f[df - dm + i] - lead * m[i]) % p + p) % p;
            }
        }
        f.pop_back();
        while (!f.empty() && f.back() == 0) f.pop_back();
        if (f.empty()) break;
    }
    return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = int((c[i + j] + 1LL * a[i] * b[j]) % p);
    return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly base, long long e, const Poly& m, int p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    auto inv_mod_p = [&](int x) {
        int r = 1, e = p - 2, base = ((x % p) + p) % p;
        while (e) {
            if (e & 1) r = int(1LL * r * base % p);
            base = int(1LL * base * base % p);
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b, with b made monic
        int lead = b.back();
        if (lead != 1) {
            int li = inv_mod_p(lead);
            for (auto& c : b) c = int(1LL * c * li % p);
        }
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// f = x^s + sum poly_low[i] x^i, irreducible over F_p?
bool is_irreducible(const std::vector<int>& poly_low, int p, int s) {
    Poly f(poly_low.begin(), poly_low.end());
    f.push_back(1);
    Poly x = {0, 1};
    // completeness: x^{p^s} == x mod f
    long long ps = 1;
    for (int i = 0; i < s; ++i) ps *= p;
    Poly xq = poly_powmod(x, ps, f, p);
    Poly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    diff = poly_mod(std::move(diff), f, p);
    if (!diff.empty()) return false;
    // no factor of degree dividing a proper divisor of s
    for (int i = 1; i < s; ++i) {
        if (s % i != 0) continue;
        long long pi = 1;
        for (int j = 0; j < i; ++j) pi *= p;
        Poly xpi = poly_powmod(x, pi, f, p);
        Poly d = xpi;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        while (!d.empty() && d.back() == 0) d.pop_back();
        Poly g = poly_gcd(f, d, p);
        if (int(g.size()) - 1 != 0) return false;
    }
    return true;
}

}  // namespace

Fq::Fq(int p, int s) : p_(p), s_(s) {
    if (!is_prime(p)) throw usage_error("p is not prime: " + std::to_string(p));
    if (s < 1) throw usage_error("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < s; ++i) {
        q *= p;
        if (q > 20000) throw usage_error("field too large for table-based arithmetic");
    }
    q_ = int(q);

    // lexicographically smallest monic irreducible; coefficient vectors
    // (c0,...,c_{s-1}) are compared constant-first, so c_{s-1} ticks fastest
    std::vector<int> low(s, 0);
    bool found = false;
    auto bump = [&]() {
        for (int i = s - 1; i >= 0; --i) {
            if (low[i] + 1 < p) { ++low[i]; return true; }
            low[i] = 0;
        }
        return false;
    };
    while (true) {
        if (is_irreducible(low, p, s)) { found = true; break; }
        if (!bump()) break;
    }
    if (!found) throw check_failure("no irreducible polynomial found");
    poly_ = low;

    // tables
    auto elem_coeffs = [&](FqElem e) {
        std::vector<int> c(s);
        int v = e;
        for (int i = 0; i < s; ++i) { c[i] = v % p; v /= p; }
        return c;
    };
    auto coeffs_elem = [&](const std::vector<int>& c) {
        int v = 0;
        for (int i = s - 1; i >= 0; --i) v = v * p + (c[i] % p + p) % p;
        return FqElem(v);
    };

    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    neg_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        auto ca = elem_coeffs(FqElem(a));
        std::vector<int> cn(s);
        for (int i = 0; i < s; ++i) cn[i] = (p - ca[i]) % p;
        neg_[a] = coeffs_elem(cn);
        for (int b = 0; b < q_; ++b) {
            auto cb = elem_coeffs(FqElem(b));
            std::vector<int> cs(s);
            for (int i = 0; i < s; ++i) cs[i] = (ca[i] + cb[i]) % p;
            add_[size_t(a) * q_ + b] = coeffs_elem(cs);
            // polynomial product reduced by the defining polynomial
            std::vector<int> prod(2 * s - 1, 0);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j)
                    prod[i + j] = int((prod[i + j] + 1LL * ca[i] * cb[j]) % p);
            for (int d = 2 * s - 2; d >= s; --d) {
                int lead = prod[d];
                if (lead == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < s; ++i)
                    prod[d - s + i] = ((prod[d - s + i] - lead * poly_[i]) % p + p) % p;
            }
            prod.resize(s);
            mul_[size_t(a) * q_ + b] = coeffs_elem(prod);
        }
    }
    inv_.assign(q_, 0);
    for (int a = 1; a < q_; ++a) {
        if (inv_[a]) continue;
        for (int b = 1; b < q_; ++b) {
            if (mul(FqElem(a), FqElem(b)) == 1) { inv_[a] = FqElem(b); inv_[b] = FqElem(a); break; }
        }
    }
    frob_.resize(q_);
    for (int a = 0; a < q_; ++a) frob_[a] = pow(FqElem(a), p);
    square_.assign(q_, 0);
    sqrt_.assign(q_, 0);
    sqrt_has_.assign(q_, 0);
    for (int y = 0; y < q_; ++y) {
        FqElem sq = mul(FqElem(y), FqElem(y));
        if (!sqrt_has_[sq]) { sqrt_has_[sq] = 1; sqrt_[sq] = FqElem(y); }
        if (y) square_[sq] = 1;
    }

    for (int a = 1; a < q_; ++a) {
        if (multiplicative_order(FqElem(a)) == q_ - 1) { theta_ = FqElem(a); break; }
    }
    if (q_ > 1 && theta_ == 0 && q_ != 2) throw check_failure("no multiplicative generator found");
    if (q_ == 2) theta_ = 1;
}

FqElem Fq::inv(FqElem a) const {
    if (a == 0) throw check_failure("inverse of zero in F_q");
    return inv_[a];
}

FqElem Fq::pow(FqElem a, long long n) const {
    if (n < 0) { a = inv(a); n = -n; }
    FqElem r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

bool Fq::is_square(FqElem a) const {
    if (a == 0) throw check_failure("square class of zero is undefined");
    if (q_ % 2 == 0) throw check_failure("square classes need odd q");
    return square_[a] != 0;
}

std::optional<FqElem> Fq::sqrt(FqElem a) const {
    if (!sqrt_has_[a]) return std::nullopt;
    return sqrt_[a];
}

int Fq::multiplicative_order(FqElem a) const {
    if (a == 0) throw check_failure("order of zero");
    int o = 1;
    FqElem x = a;
    while (x != 1) {
        x = mul(x, a);
        ++o;
        if (o > q_) throw check_failure("order computation ran away");
    }
    return o;
}

FqElem Fq::from_coeffs(const std::vector<int>& c) const {
    int v = 0;
    for (int i = s_ - 1; i >= 0; --i) {
        int ci = i < int(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
        v = v * p_ + ci;
    }
    return FqElem(v);
}

std::vector<int> Fq::coeffs(FqElem a) const {
    std::vector<int> c(s_);
    int v = a;
    for (int i = 0; i < s_; ++i) { c[i] = v % p_; v /= p_; }
    return c;
}

FqElem Fq::from_int(long long v) const {
    return FqElem(((v % p_) + p_) % p_);
}

FqElem pick_nonsquare(const Fq& F) {
    for (int a = 1; a < F.q(); ++a)
        if (!F.is_square(FqElem(a))) return FqElem(a);
    throw check_failure("no non-square exists");
}

FqMatrix fq_identity(int n) {
    FqMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix fq_mul(const Fq& F, const FqMatrix& A, const FqMatrix& B) {
    if (A.cols != B.rows) throw check_failure("fq_mul shape mismatch");
    FqMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int t = 0; t < A.cols; ++t) {
            FqElem v = A.at(i, t);
            if (!v) continue;
            for (int j = 0; j < B.cols; ++j) {
                FqElem w = B.at(t, j);
                if (w) C.at(i, j) = F.add(C.at(i, j), F.mul(v, w));
            }
        }
    return C;
}

FqMatrix fq_transpose(const FqMatrix& A) {
    FqMatrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

std::vector<FqElem> fq_apply(const Fq& F, const FqMatrix& A, const std::vector<FqElem>& v) {
    std::vector<FqElem> out(A.rows, 0);
    for (int j = 0; j < A.cols; ++j) {
        FqElem x = v[j];
        if (!x) continue;
        for (int i = 0; i < A.rows; ++i) {
            FqElem w = A.at(i, j);
            if (w) out[i] = F.add(out[i], F.mul(w, x));
        }
    }
    return out;
}

int fq_rref(const Fq& F, FqMatrix& m, std::vector<int>* pivot_cols) {
    int prow = 0;
    if (pivot_cols) pivot_cols->clear();
    for (int c = 0; c < m.cols && prow < m.rows; ++c) {
        int pr = -1;
        for (int r = prow; r < m.rows; ++r)
            if (m.at(r, c)) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != prow)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(prow, j));
        FqElem pinv = F.inv(m.at(prow, c));
        for (int j = c; j < m.cols; ++j) m.at(prow, j) = F.mul(pinv, m.at(prow, j));
        for (int r = 0; r < m.rows; ++r) {
            if (r == prow) continue;
            FqElem f = m.at(r, c);
            if (!f) continue;
            for (int j = c; j < m.cols; ++j)
                m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(prow, j)));
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++prow;
    }
    return prow;
}

int fq_rank(const Fq& F, FqMatrix m) { return fq_rref(F, m); }

std::vector<std::vector<FqElem>> fq_nullspace(const Fq& F, const FqMatrix& m_in) {
    FqMatrix m = m_in;
    std::vector<int> piv;
    fq_rref(F, m, &piv);
    std::vector<std::uint8_t> is_piv(m.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::vector<FqElem>> basis;
    for (int fc = 0; fc < m.cols; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<FqElem> v(m.cols, 0);
        v[fc] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(m.at(int(i), fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FqMatrix> fq_inverse(const Fq& F, const FqMatrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    int n = m.rows;
    FqMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> piv;
    int rank = fq_rref(F, aug, &piv);
    if (rank != n) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (i >= int(piv.size()) || piv[i] != i) return std::nullopt;
    FqMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

}  // namespace sl2cert
