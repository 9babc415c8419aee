#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace padic {

/// Truncated canonical p-adic expansion: p^v * (d0 + d1 p + d2 p^2 + ...)
/// with d0 != 0 and all digits in [0, p). The digit window is the reliable
/// part: a Value is its exact truncation plus O(p^{v + precision}).
///
/// Two zero flavours exist. Kind::Zero is the exact zero of expand(0).
/// Kind::ZeroToPrecision results from cancellation in add/sub: the value is
/// indistinguishable from zero within the known window O(p^{known_to}).
class PadicNumber {
public:
    enum class Kind { Value, Zero, ZeroToPrecision };

    static PadicNumber zero(Prime p) { return PadicNumber(p, Kind::Zero); }

    static PadicNumber zero_to_precision(Prime p, long known_to) {
        PadicNumber z(p, Kind::ZeroToPrecision);
        z.zero_known_to_ = known_to;
        return z;
    }

    /// Canonicalizes: reduces `unit` mod p^ndigits, strips factors of p into
    /// the valuation, detects the all-zero window.
    static PadicNumber from_unit_residue(Prime p, long valuation, BigInt unit, long ndigits) {
        if (ndigits < 1) throw precision_error("p-adic value with no reliable digit");
        BigInt m = p_power(p, ndigits);
        unit %= m;
        if (unit < 0) unit += m;
        if (unit == 0) return zero_to_precision(p, valuation + ndigits);
        const BigInt pb(p.value());
        while (unit % pb == 0) {
            unit /= pb;
            ++valuation;
            --ndigits;
        }
        PadicNumber r(p, Kind::Value);
        r.val_ = valuation;
        r.digits_.reserve(static_cast<std::size_t>(ndigits));
        BigInt cur = unit;
        for (long i = 0; i < ndigits; ++i) {
            r.digits_.push_back(static_cast<std::uint32_t>(cur % pb));
            cur /= pb;
        }
        return r;
    }

    Kind kind() const { return kind_; }
    bool is_value() const { return kind_ == Kind::Value; }
    bool is_exact_zero() const { return kind_ == Kind::Zero; }
    bool is_zeroish() const { return kind_ != Kind::Value; }
    Prime prime() const { return p_; }

    long valuation() const {
        if (kind_ != Kind::Value)
            throw std::logic_error("valuation of a (effective) zero");
        return val_;
    }

    const std::vector<std::uint32_t>& digits() const { return digits_; }
    long precision() const { return static_cast<long>(digits_.size()); }

    /// Absolute precision exponent: the value is known mod p^{known_to()}.
    long known_to() const {
        switch (kind_) {
            case Kind::Value: return val_ + precision();
            case Kind::ZeroToPrecision: return zero_known_to_;
            default: return LONG_MAX;
        }
    }

    /// Sum d_i p^i over the digit window.
    BigInt unit_residue() const {
        BigInt r = 0;
        const BigInt pb(p_.value());
        for (auto it = digits_.rbegin(); it != digits_.rend(); ++it)
            r = r * pb + *it;
        return r;
    }

    /// Exact value of the truncation (zero for both zero kinds).
    Rational to_rational() const {
        if (kind_ != Kind::Value) return Rational(0);
        return Rational(unit_residue()) * p_power_rational(p_, val_);
    }

    PadicNumber with_valuation_shifted(long delta) const {
        PadicNumber r = *this;
        if (kind_ == Kind::Value) r.val_ += delta;
        else if (kind_ == Kind::ZeroToPrecision) r.zero_known_to_ += delta;
        return r;
    }

    PadicNumber truncated(long ndigits) const {
        if (kind_ != Kind::Value || ndigits >= precision()) return *this;
        if (ndigits < 1) throw precision_error("truncation to zero digits");
        PadicNumber r = *this;
        r.digits_.resize(static_cast<std::size_t>(ndigits));
        return r;
    }

    friend PadicNumber operator-(const PadicNumber& x) {
        if (x.kind_ != Kind::Value) return x;
        return from_unit_residue(x.p_, x.val_,
                                 p_power(x.p_, x.precision()) - x.unit_residue(),
                                 x.precision());
    }

    friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
        check_same_prime(x, y);
        if (x.kind_ == Kind::Zero) return y;
        if (y.kind_ == Kind::Zero) return x;
        long window = std::min(x.known_to(), y.known_to());
        long v = LONG_MAX;
        if (x.kind_ == Kind::Value) v = x.val_;
        if (y.kind_ == Kind::Value) v = std::min(v, y.val_);
        if (v >= window) return zero_to_precision(x.p_, window);
        BigInt sum = 0;
        if (x.kind_ == Kind::Value) sum += x.unit_residue() * p_power(x.p_, x.val_ - v);
        if (y.kind_ == Kind::Value) sum += y.unit_residue() * p_power(x.p_, y.val_ - v);
        return from_unit_residue(x.p_, v, sum, window - v);
    }

    friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) {
        return x + (-y);
    }

    friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
        check_same_prime(x, y);
        if (x.kind_ == Kind::Zero || y.kind_ == Kind::Zero) return zero(x.p_);
        if (x.kind_ == Kind::ZeroToPrecision || y.kind_ == Kind::ZeroToPrecision) {
            // |xy|_p <= p^{-(A + v)} with A the zero window, v the other factor's
            // valuation (or the other zero window).
            long bound = (x.kind_ == Kind::ZeroToPrecision ? x.zero_known_to_ : x.val_) +
                         (y.kind_ == Kind::ZeroToPrecision ? y.zero_known_to_ : y.val_);
            return zero_to_precision(x.p_, bound);
        }
        long n = std::min(x.precision(), y.precision());
        BigInt m = p_power(x.p_, n);
        return from_unit_residue(x.p_, x.val_ + y.val_,
                                 (x.unit_residue() * y.unit_residue()) % m, n);
    }

    friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
        check_same_prime(x, y);
        if (y.kind_ != Kind::Value)
            throw std::domain_error("division by (effective) zero p-adic value");
        if (x.kind_ == Kind::Zero) return zero(x.p_);
        if (x.kind_ == Kind::ZeroToPrecision)
            return zero_to_precision(x.p_, x.zero_known_to_ - y.val_);
        long n = std::min(x.precision(), y.precision());
        BigInt m = p_power(x.p_, n);
        BigInt u = (x.unit_residue() % m) * mod_inverse(y.unit_residue() % m, m) % m;
        return from_unit_residue(x.p_, x.val_ - y.val_, u, n);
    }

    bool operator==(const PadicNumber& o) const {
        if (p_ != o.p_ || kind_ != o.kind_) return false;
        switch (kind_) {
            case Kind::Value: return val_ == o.val_ && digits_ == o.digits_;
            case Kind::ZeroToPrecision: return zero_known_to_ == o.zero_known_to_;
            default: return true;
        }
    }
    bool operator!=(const PadicNumber& o) const { return !(*this == o); }

    /// "p^v * (d0 d1 d2 ...)", digits capped at max_digits when >= 0.
    std::string to_string(long max_digits = -1) const {
        if (kind_ == Kind::Zero) return "0";
        std::ostringstream os;
        if (kind_ == Kind::ZeroToPrecision) {
            os << "O(" << p_.value() << "^" << zero_known_to_ << ")";
            return os.str();
        }
        long n = precision();
        if (max_digits >= 0) n = std::min(n, max_digits);
        os << p_.value() << "^" << val_ << " * (";
        for (long i = 0; i < n; ++i) {
            if (i) os << ' ';
            os << digits_[static_cast<std::size_t>(i)];
        }
        if (n < precision()) os << " ...";
        os << ")";
        return os.str();
    }

private:
    PadicNumber(Prime p, Kind k) : p_(p), kind_(k) {}

    static void check_same_prime(const PadicNumber& x, const PadicNumber& y) {
        if (x.p_ != y.p_)
            throw std::invalid_argument("p-adic arithmetic across different primes");
    }

    Prime p_;
    Kind kind_;
    long val_ = 0;
    long zero_known_to_ = 0;
    std::vector<std::uint32_t> digits_;
};

/// Canonical expansion of a rational to N digits.
inline PadicNumber expand(const Rational& x, Prime p, long N) {
    if (N < 1) throw std::invalid_argument("expand: precision must be >= 1");
    if (x == 0) return PadicNumber::zero(p);
    long v = *valuation_of(x, p);
    BigInt residue = rational_mod(unit_part(x, p), p_power(p, N));
    return PadicNumber::from_unit_residue(p, v, residue, N);
}

struct UnitDecomposition {
    long valuation;
    PadicNumber unit;
};

/// x = p^valuation * unit with the unit's first digit nonzero.
inline UnitDecomposition unit_decompose(const PadicNumber& x) {
    if (!x.is_value())
        throw std::domain_error("unit_decompose of a (effective) zero");
    return {x.valuation(), x.with_valuation_shifted(-x.valuation())};
}

} // namespace padic
