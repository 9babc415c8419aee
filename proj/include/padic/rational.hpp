#pragma once

#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "prime.hpp"

namespace padic {

using BigInt = boost::multiprecision::cpp_int;
/// Exact coefficient arithmetic. cpp_rational keeps gcd(num, den) = 1 and
/// den > 0, which is exactly the canonical form the rest of the library
/// relies on.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// p^e for e >= 0.
inline BigInt p_power(Prime p, long e) {
    if (e < 0) throw std::invalid_argument("p_power: negative exponent");
    return big_pow(BigInt(p.value()), static_cast<unsigned long>(e));
}

/// p^e as an exact rational, any sign of e.
inline Rational p_power_rational(Prime p, long e) {
    if (e >= 0) return Rational(p_power(p, e));
    return Rational(1, p_power(p, -e));
}

/// Number of factors p in a nonzero integer.
inline long int_valuation(BigInt n, Prime p) {
    long v = 0;
    const BigInt pb(p.value());
    while (n % pb == 0) {
        n /= pb;
        ++v;
    }
    return v;
}

/// ord_p(x): the r with x = p^r * m/n and (m, p) = (n, p) = 1.
/// nullopt is the infinity marker for x = 0.
inline std::optional<long> valuation_of(const Rational& x, Prime p) {
    if (x == 0) return std::nullopt;
    long v = int_valuation(numerator(x), p);
    if (v == 0) v = -int_valuation(denominator(x), p);
    return v;
}

/// |x|_p = p^{-ord_p(x)}, with |0|_p = 0.
inline Rational norm_of(const Rational& x, Prime p) {
    auto v = valuation_of(x, p);
    if (!v) return Rational(0);
    return p_power_rational(p, -*v);
}

/// The unit part x* with x = p^{ord_p(x)} * x*. Pre: x != 0.
inline Rational unit_part(const Rational& x, Prime p) {
    auto v = valuation_of(x, p);
    if (!v) throw std::invalid_argument("unit_part of zero");
    return x * p_power_rational(p, -*v);
}

inline BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    BigInt x1, y1;
    BigInt g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt x, y;
    BigInt g = egcd(((a % m) + m) % m, m, x, y);
    if (g != 1) throw std::domain_error("mod_inverse: arguments not coprime");
    return ((x % m) + m) % m;
}

inline BigInt pow_mod_big(BigInt base, BigInt exp, const BigInt& m) {
    BigInt r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

/// x mod m for a rational x whose denominator is coprime to m.
inline BigInt rational_mod(const Rational& x, const BigInt& m) {
    BigInt num = numerator(x) % m;
    if (num < 0) num += m;
    BigInt den = denominator(x) % m;
    if (den == 1) return num;
    return (num * mod_inverse(den, m)) % m;
}

/// Leading digit of the canonical expansion of x (the first digit of x*).
/// Pre: x != 0.
inline std::uint32_t leading_digit(const Rational& x, Prime p) {
    Rational u = unit_part(x, p);
    return static_cast<std::uint32_t>(rational_mod(u, BigInt(p.value())));
}

} // namespace padic
