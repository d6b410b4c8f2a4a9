#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "crepant/errors.hpp"

namespace crepant {

/// Arbitrary-precision integer.
using Integer = boost::multiprecision::cpp_int;

/// Exact rational number, always normalized with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw SingularMatrixError("zero denominator");
    if (den < 0) return Rational(Integer(-num), Integer(-den));
    return Rational(num, den);
}

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline Integer floor_of(const Rational& r) {
    Integer n = numerator_of(r), d = denominator_of(r);
    Integer q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

inline Integer ceil_of(const Rational& r) {
    Integer f = floor_of(r);
    return f * denominator_of(r) == numerator_of(r) ? f : Integer(f + 1);
}

inline Integer gcd_of(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm_of(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline std::string to_string(const Integer& v) { return v.str(); }
inline std::string to_string(const Rational& r) { return r.str(); }

inline bool fits_int64(const Integer& v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& v) {
    if (!fits_int64(v)) throw OverflowError();
    return v.convert_to<std::int64_t>();
}

inline std::int64_t to_int64(const Rational& r) {
    if (!is_integral(r)) throw DimensionMismatch("non-integral value where an integer was required: " + r.str());
    return to_int64(numerator_of(r));
}

inline RationalVector to_rational(const IntVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

inline RationalVector unit_vector(std::size_t dim, std::size_t index) {
    RationalVector v(dim, Rational(0));
    v.at(index) = 1;
    return v;
}

// Checked machine-word arithmetic. Overloads on Integer make the same templates
// usable on both the fast path and the exact fallback.
namespace arith {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}
inline std::int64_t exact_div(std::int64_t a, std::int64_t b) {
    if (b == 1) return a;
    if (b == -1) {
        if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError();
        return -a;
    }
    return a / b;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline Integer add(const Integer& a, const Integer& b) { return a + b; }
inline Integer sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer exact_div(const Integer& a, const Integer& b) { return a / b; }
inline Integer neg(const Integer& a) { return -a; }

inline std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError();
    return static_cast<std::int64_t>(v);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace arith

}  // namespace crepant
