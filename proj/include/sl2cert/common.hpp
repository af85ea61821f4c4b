#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sl2cert {

struct insufficient_precision : std::runtime_error {
    explicit insufficient_precision(const std::string& what) : std::runtime_error(what) {}
};

struct cap_exceeded : std::runtime_error {
    int steps;
    explicit cap_exceeded(int n) : std::runtime_error("lattice walk cap exceeded after " + std::to_string(n) + " steps"), steps(n) {}
};

struct closure_failure : std::runtime_error {
    explicit closure_failure(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical verification failed (or a check precondition was violated).
struct check_failure : std::runtime_error {
    explicit check_failure(const std::string& what) : std::runtime_error(what) {}
};

struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational with small numerator/denominator. All character arithmetic
/// in this project stays within a few million, but intermediates are widened
/// to 128 bits and the result is range-checked.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw check_failure("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    bool is_integer() const { return den == 1; }
    bool operator==(const Rat&) const = default;
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

namespace detail {
inline std::int64_t narrow128(__int128 v, const char* ctx) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw check_failure(std::string("rational overflow in ") + ctx);
    return static_cast<std::int64_t>(v);
}
}  // namespace detail

inline Rat operator+(const Rat& x, const Rat& y) {
    __int128 n = static_cast<__int128>(x.num) * y.den + static_cast<__int128>(y.num) * x.den;
    __int128 d = static_cast<__int128>(x.den) * y.den;
    return Rat(detail::narrow128(n, "add"), detail::narrow128(d, "add"));
}
inline Rat operator-(const Rat& x) { return Rat(-x.num, x.den); }
inline Rat operator-(const Rat& x, const Rat& y) { return x + (-y); }
inline Rat operator*(const Rat& x, const Rat& y) {
    __int128 n = static_cast<__int128>(x.num) * y.num;
    __int128 d = static_cast<__int128>(x.den) * y.den;
    return Rat(detail::narrow128(n, "mul"), detail::narrow128(d, "mul"));
}
inline Rat operator/(const Rat& x, const Rat& y) {
    if (y.num == 0) throw check_failure("rational division by zero");
    __int128 n = static_cast<__int128>(x.num) * y.den;
    __int128 d = static_cast<__int128>(x.den) * y.num;
    return Rat(detail::narrow128(n, "div"), detail::narrow128(d, "div"));
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace sl2cert
