#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqp {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using MutSeq = std::vector<int>;

// Error taxonomy. Everything derives from Error so callers can catch broadly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : Error {
    using Error::Error;
};
struct OverflowError : Error {
    using Error::Error;
};
// Search budget ran out. Says nothing about whether a sequence exists.
struct ReachabilityError : Error {
    using Error::Error;
};
struct InvariantError : Error {
    using Error::Error;
};
struct UnsupportedError : Error {
    using Error::Error;
};

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}
inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}
inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}
inline Int pos(Int a) { return a > 0 ? a : 0; }
inline Int neg(Int a) { return a < 0 ? -a : 0; }

inline Vec unit(int n, int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}
inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = add(a[k], b[k]);
    return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = sub(a[k], b[k]);
    return r;
}
inline Vec operator-(const Vec& a) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = sub(0, a[k]);
    return r;
}
inline Vec operator*(Int s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = mul(s, a[k]);
    return r;
}
inline Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s = add(s, mul(a[k], b[k]));
    return s;
}
inline bool is_zero(const Vec& a) {
    for (Int x : a)
        if (x != 0) return false;
    return true;
}

std::string to_string(const Vec& v);
// Parses "1,-2,0" (whitespace tolerated). Throws UsageError.
Vec parse_vec(const std::string& s);

}  // namespace cqp
