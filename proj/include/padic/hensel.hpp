#pragma once

#include <algorithm>
#include <climits>
#include <numeric>
#include <utility>
#include <vector>

#include "fp.hpp"
#include "number.hpp"

namespace padic {

/// Polynomial with p-adic integer coefficients (index = power of x).
struct IntegerPolynomial {
    Prime prime;
    std::vector<PadicNumber> coefficients;

    long degree() const { return static_cast<long>(coefficients.size()) - 1; }
};

/// Coefficients given as exact rationals with ord_p >= 0, expanded to a
/// common digit precision.
inline IntegerPolynomial make_integer_polynomial(Prime p, const std::vector<Rational>& coeffs,
                                                 long digits) {
    IntegerPolynomial f{p, {}};
    f.coefficients.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        auto v = valuation_of(c, p);
        if (v && *v < 0)
            throw std::invalid_argument("integer polynomial: coefficient with ord_p < 0");
        f.coefficients.push_back(expand(c, p, digits));
    }
    return f;
}

/// Residue root seed for Hensel's lemma: f(theta) ≡ 0 (mod p^{2i+1}),
/// ord_p f'(theta) = i.
struct LiftSeed {
    BigInt theta;
    long level = 0; ///< the i of the derivative condition
};

namespace detail {

/// Coefficient residues mod p^K plus the exponent they are reliable to.
struct ResidueView {
    std::vector<BigInt> coeffs;
    long known_to;
};

inline ResidueView residues_of(const IntegerPolynomial& f, long K) {
    long cap = LONG_MAX;
    for (const auto& c : f.coefficients) {
        if (c.is_value() && c.valuation() < 0)
            throw std::invalid_argument("hensel: coefficient with negative valuation");
        cap = std::min(cap, c.known_to());
    }
    if (f.coefficients.empty() || f.coefficients.back().is_exact_zero())
        throw std::invalid_argument("hensel: zero leading coefficient");
    ResidueView view;
    view.known_to = std::min(cap, K);
    if (view.known_to < 1) throw precision_error("hensel: coefficients carry no digits");
    BigInt m = p_power(f.prime, view.known_to);
    view.coeffs.reserve(f.coefficients.size());
    for (const auto& c : f.coefficients)
        view.coeffs.push_back(c.is_value()
                                  ? (c.unit_residue() * p_power(f.prime, c.valuation())) % m
                                  : BigInt(0));
    return view;
}

inline BigInt poly_eval_mod(const std::vector<BigInt>& coeffs, const BigInt& x, const BigInt& m) {
    BigInt r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        r = (r * x + *it) % m;
    }
    if (r < 0) r += m;
    return r;
}

inline std::vector<BigInt> poly_derivative(const std::vector<BigInt>& coeffs) {
    std::vector<BigInt> d;
    for (std::size_t j = 1; j < coeffs.size(); ++j) d.push_back(BigInt(j) * coeffs[j]);
    return d;
}

inline long residue_valuation(BigInt x, Prime p, long cap) {
    if (x == 0) return cap;
    long v = 0;
    const BigInt pb(p.value());
    while (v < cap && x % pb == 0) {
        x /= pb;
        ++v;
    }
    return v;
}

/// Newton iteration for y^q = U (mod p^M) from a mod-p seed with unit
/// derivative. Used for q-th roots where building the degree-q polynomial
/// would be wasteful.
inline BigInt newton_pow_root(std::uint32_t seed, unsigned long q, const BigInt& U,
                              Prime p, long M) {
    long m = 1;
    BigInt y = seed;
    while (m < M) {
        m = std::min(2 * m, M);
        BigInt mod = p_power(p, m);
        BigInt yq1 = pow_mod_big(y, BigInt(q - 1), mod);
        BigInt fy = (yq1 * y - U) % mod;
        BigInt dy = (BigInt(q) * yq1) % mod;
        y = (y - fy * mod_inverse(dy, mod)) % mod;
        if (y < 0) y += mod;
    }
    return y;
}

} // namespace detail

/// The unique p-adic integer root x0 ≡ theta (mod p^{i+1}) promised by
/// Hensel's lemma, to N digits. The seed congruences are checked and the
/// failing one is reported. For i > 0 the iteration runs on the rescaled
/// variable x = theta + p^{i+1} t, which has unit derivative.
inline PadicNumber hensel_lift(const IntegerPolynomial& f, const LiftSeed& seed, long N) {
    const Prime p = f.prime;
    const long i = seed.level;
    if (N < 1) throw std::invalid_argument("hensel_lift: precision must be >= 1");
    if (i < 0) throw std::invalid_argument("hensel_lift: negative derivative level");

    {
        auto view = detail::residues_of(f, 2 * i + 2);
        if (view.known_to < 2 * i + 1)
            throw precision_error("hensel_lift: coefficients too short to check the seed");
        BigInt m = p_power(p, 2 * i + 1);
        if (detail::poly_eval_mod(view.coeffs, seed.theta, m) % m != 0)
            throw std::invalid_argument("hensel seed: f(theta) != 0 (mod p^(2i+1))");
        auto deriv = detail::poly_derivative(view.coeffs);
        BigInt mi = p_power(p, i + 1);
        BigInt dval = detail::poly_eval_mod(deriv, seed.theta, mi);
        long dv = detail::residue_valuation(dval, p, i + 1);
        if (dv >= i + 1)
            throw std::invalid_argument("hensel seed: f'(theta) == 0 (mod p^(i+1))");
        if (dv < i)
            throw std::invalid_argument("hensel seed: f'(theta) != 0 (mod p^i)");
    }

    long K = N + i + 2;
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto view = detail::residues_of(f, K + 2 * i + 1);
        const long work = view.known_to;
        const BigInt mw = p_power(p, work);
        const long deg = f.degree();

        // Taylor shift to theta, then substitute x = theta + p^{i+1} t and
        // divide out p^{2i+1}; division is exact by the seed congruences.
        std::vector<BigInt> g = view.coeffs;
        for (long j = 0; j <= deg; ++j)
            for (long k = deg - 1; k >= j; --k)
                g[static_cast<std::size_t>(k)] =
                    (g[static_cast<std::size_t>(k)] +
                     seed.theta * g[static_cast<std::size_t>(k + 1)]) % mw;
        std::vector<BigInt> h(g.size());
        for (long j = 0; j <= deg; ++j) {
            long shift = j * (i + 1) - (2 * i + 1);
            BigInt val = g[static_cast<std::size_t>(j)] % mw;
            if (val < 0) val += mw;
            if (shift >= 0) {
                h[static_cast<std::size_t>(j)] = (val * p_power(p, shift)) % mw;
            } else {
                BigInt q = p_power(p, -shift);
                if (val % q != 0)
                    throw std::logic_error("hensel_lift: inexact rescale division");
                h[static_cast<std::size_t>(j)] = val / q;
            }
        }

        long t_target = std::min(K - (i + 1), work - (2 * i + 1));
        if (t_target < 1) throw precision_error("hensel_lift: no digits left after rescale");
        auto hderiv = detail::poly_derivative(h);
        BigInt t = (-h[0] * mod_inverse(hderiv.empty() ? BigInt(1) : detail::poly_eval_mod(hderiv, 0, BigInt(p.value())),
                                        BigInt(p.value()))) % BigInt(p.value());
        if (t < 0) t += p.value();
        long m = 1;
        while (m < t_target) {
            m = std::min(2 * m, t_target);
            BigInt mod = p_power(p, m);
            BigInt fv = detail::poly_eval_mod(h, t, mod);
            BigInt dv = detail::poly_eval_mod(hderiv, t, mod);
            t = (t - fv * mod_inverse(dv, mod)) % mod;
            if (t < 0) t += mod;
        }

        long K_actual = t_target + i + 1;
        BigInt R = (seed.theta + p_power(p, i + 1) * t) % p_power(p, K_actual);
        if (R < 0) R += p_power(p, K_actual);
        if (R == 0) return PadicNumber::zero_to_precision(p, K_actual);
        long v = detail::residue_valuation(R, p, K_actual);
        if (K_actual - v >= N)
            return PadicNumber::from_unit_residue(p, 0, R, K_actual).truncated(N);
        K += N - (K_actual - v); // root sits deeper than expected; widen
    }
    throw precision_error("hensel_lift: could not reach the requested precision");
}

/// Solutions of x^q = a over Q_p for (q, p) = 1: empty unless
/// q | log_p|a|_p and the leading digit passes the power-residue test,
/// exactly gcd(q, p-1) roots otherwise.
inline std::vector<PadicNumber> qth_root_qp(const Rational& a, unsigned long q, Prime p, long N) {
    if (q == 0) throw std::invalid_argument("qth_root_qp: q = 0");
    if (a == 0) throw std::invalid_argument("qth_root_qp: a = 0");
    if (q % p.value() == 0)
        throw unsupported_error("q-th roots with p | q are not supported");
    long v = *valuation_of(a, p);
    if (v % static_cast<long>(q) != 0) return {};
    std::uint32_t a0 = leading_digit(a, p);
    auto seeds = qth_roots_fp(FpElement(a0, p), q);
    if (seeds.empty()) return {};
    BigInt U = rational_mod(unit_part(a, p), p_power(p, N));
    std::vector<PadicNumber> roots;
    roots.reserve(seeds.size());
    for (auto s : seeds)
        roots.push_back(PadicNumber::from_unit_residue(
            p, v / static_cast<long>(q), detail::newton_pow_root(s, q, U, p, N), N));
    return roots;
}

/// q-th roots of a truncated value (unit-level Newton over the known digit
/// window). Pre: p odd, (q, p) = 1, q | valuation.
inline std::vector<PadicNumber> padic_nth_root(const PadicNumber& x, unsigned long q) {
    const Prime p = x.prime();
    if (!x.is_value()) throw std::domain_error("padic_nth_root of a (effective) zero");
    if (q == 0 || q % p.value() == 0)
        throw unsupported_error("q-th roots with p | q are not supported");
    if (x.valuation() % static_cast<long>(q) != 0) return {};
    auto seeds = qth_roots_fp(FpElement(x.digits()[0], p), q);
    std::vector<PadicNumber> roots;
    roots.reserve(seeds.size());
    long M = x.precision();
    BigInt U = x.unit_residue();
    for (auto s : seeds)
        roots.push_back(PadicNumber::from_unit_residue(
            p, x.valuation() / static_cast<long>(q),
            detail::newton_pow_root(s, q, U, p, M), M));
    return roots;
}

/// Solutions of x^2 + q x + r = 0 over Q_p, p >= 2. Solvable iff
/// log_p|(q/2)^2 - r|_p is even and the unit part is a square mod p
/// (Euler's criterion for p > 2, the "≡ 1 (mod 8)" rule for p = 2).
/// A doubled root is returned once with multiplicity 2. An empty set
/// signals "no solutions".
inline std::vector<std::pair<PadicNumber, int>> quadratic_solve_qp(const Rational& q,
                                                                   const Rational& r,
                                                                   Prime p, long N) {
    if (N < 1) throw std::invalid_argument("quadratic_solve_qp: precision must be >= 1");
    if (r == 0) {
        if (q == 0) return {{PadicNumber::zero(p), 2}};
        return {{PadicNumber::zero(p), 1}, {expand(-q, p, N), 1}};
    }
    Rational half_q = q / 2;
    Rational delta = half_q * half_q - r;
    if (delta == 0) return {{expand(-half_q, p, N), 2}};

    long od = *valuation_of(delta, p);
    if (od % 2 != 0) return {};
    Rational du = unit_part(delta, p);
    if (p.odd()) {
        if (!is_quadratic_residue(leading_digit(delta, p), p)) return {};
    } else {
        if (rational_mod(du, BigInt(8)) != 1) return {};
    }

    // Cancellation in -q/2 ± s is bounded by the Newton-polygon valuations.
    long ords = od / 2;
    long base = ords;
    if (q != 0) base = std::min(base, *valuation_of(half_q, p));
    long loss = std::max(0L, *valuation_of(r, p) - 2 * base);
    long M = N + loss + 2;

    PadicNumber s = PadicNumber::zero(p);
    if (p.odd()) {
        std::uint32_t seed = sqrt_mod(leading_digit(delta, p), p);
        seed = std::min(seed, p.value() - seed);
        s = PadicNumber::from_unit_residue(
            p, ords, detail::newton_pow_root(seed, 2, rational_mod(du, p_power(p, M)), p, M), M);
    } else {
        auto f = make_integer_polynomial(p, {-du, Rational(0), Rational(1)}, M + 8);
        s = hensel_lift(f, LiftSeed{BigInt(1), 1}, M).with_valuation_shifted(ords);
    }

    std::vector<std::pair<PadicNumber, int>> roots;
    if (q == 0) {
        roots = {{s, 1}, {-s, 1}};
    } else {
        long e = std::max(M + 2, s.known_to() - *valuation_of(half_q, p) + 1);
        PadicNumber mh = expand(-half_q, p, e);
        roots = {{mh + s, 1}, {mh - s, 1}};
    }
    std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
        if (x.first.valuation() != y.first.valuation())
            return x.first.valuation() < y.first.valuation();
        return x.first.digits() < y.first.digits();
    });
    return roots;
}

} // namespace padic
