#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cubic.hpp"

namespace padic {

struct CardanoReport {
    bool applicable = false;
    std::string branch = "none"; ///< "I.1".."I.5"
    std::optional<PadicNumber> root;
    std::optional<PadicNumber> inner_sqrt;                     ///< sqrt((a/3)^3 + (b/2)^2)
    std::optional<std::pair<PadicNumber, PadicNumber>> pair;   ///< (u, v) with u v = -a/3
    std::optional<std::uint32_t> delta0_used;
};

/// Decides whether the radical expression
///   x = cbrt(b/2 + sqrt((a/3)^3 + (b/2)^2)) + cbrt(b/2 - sqrt(...))
/// is meaningful over Q_p. Pre: p > 3 (type invariant) and ab != 0.
inline CardanoReport cardano_applicable(const CubicEquation& eq) {
    if (eq.a_zero || eq.b_zero)
        throw std::invalid_argument("cardano: requires ab != 0");
    const Prime p = eq.prime;
    const std::uint64_t pv = p.value();
    const long la = eq.log_norm_a, lb = eq.log_norm_b;
    CardanoReport rep;
    if (3 * la < 2 * lb) {
        if (lb % 3 == 0 && detail::cube_residue(eq.b0, p)) {
            rep.applicable = true;
            rep.branch = "I.1";
        }
    } else if (3 * la > 2 * lb) {
        std::uint32_t t = static_cast<std::uint32_t>(mul_mod(3 % pv, eq.a0, pv));
        if (la % 2 == 0 && is_quadratic_residue(t, p)) {
            rep.applicable = true;
            rep.branch = "I.5";
        }
    } else {
        auto dd = discriminant_data(eq);
        std::uint32_t four_b0 = static_cast<std::uint32_t>(mul_mod(4 % pv, eq.b0, pv));
        if (dd.is_zero) {
            if (detail::cube_residue(four_b0, p)) {
                rep.applicable = true;
                rep.branch = "I.2";
            }
        } else if (dd.D_norm_log < 0) {
            if (dd.D_norm_log % 2 == 0 && dd.delta0 && detail::cube_residue(four_b0, p)) {
                rep.applicable = true;
                rep.branch = "I.3";
            }
        } else if (detail::recurrence_test(eq) && dd.delta0) {
            // |D|_p = 1. The theorem fixes Delta0 only up to sign; test the
            // chosen square root first, then its complement.
            for (std::uint32_t d : {*dd.delta0, static_cast<std::uint32_t>(pv - *dd.delta0)}) {
                std::uint64_t c = (mul_mod(108 % pv, eq.b0, pv) + mul_mod(12 % pv, d, pv)) % pv;
                if (c != 0 && detail::cube_residue(static_cast<std::uint32_t>(c), p)) {
                    rep.applicable = true;
                    rep.branch = "I.4";
                    rep.delta0_used = d;
                    break;
                }
            }
        }
    }
    return rep;
}

/// Evaluates the Cardano expression: u is a cube root of b/2 + s, the
/// partner is forced to v = (-a/3)/u, which by the radicand product
/// identity cubes to b/2 - s. The returned root is u + v.
inline CardanoReport cardano_solve(const CubicEquation& eq, long N) {
    CardanoReport rep = cardano_applicable(eq);
    if (!rep.applicable)
        throw std::invalid_argument("cardano_solve: the Cardano method is not applicable here");
    const Prime p = eq.prime;
    const long la = eq.log_norm_a, lb = eq.log_norm_b;
    const long k = (3 * la < 2 * lb) ? -lb / 3 : -la / 2; // valuation of the emitted root
    const long M = detail::digits_needed(N, 3 * k) + 2;

    const Rational a3 = eq.a / 3, b2 = eq.b / 2;
    const Rational rad_delta = a3 * a3 * a3 + b2 * b2;

    auto expand_to_window = [&](const Rational& x, long window) {
        long digits = window - *valuation_of(x, p);
        return expand(x, p, std::max(digits, 1L));
    };

    PadicNumber s = PadicNumber::zero(p);
    PadicNumber rad_plus = PadicNumber::zero(p);
    PadicNumber rad_minus = PadicNumber::zero(p);
    if (rad_delta == 0) {
        rad_plus = rad_minus = expand(b2, p, M);
    } else {
        // survive the cancellation on the small side of b/2 +- s
        long sdigits = M + std::max(0L, 2 * lb - 3 * la) + 2;
        auto ss = qth_root_qp(rad_delta, 2, p, sdigits);
        if (ss.size() != 2)
            throw std::logic_error("cardano: inner square root missing though applicable");
        s = ss.front();
        long ord_b2 = *valuation_of(b2, p);
        PadicNumber b2_pn = expand_to_window(b2, s.known_to());
        rad_plus = b2_pn + s;
        rad_minus = b2_pn - s;
        long expect = std::min(ord_b2, s.valuation());
        if (!rad_plus.is_value() || rad_plus.valuation() != expect) {
            std::swap(rad_plus, rad_minus);
            s = -s;
        }
    }

    auto cube_roots = padic_nth_root(rad_plus, 3);
    if (cube_roots.empty())
        throw std::logic_error("cardano: radicand is not a cube though applicable");
    for (const auto& u : cube_roots) {
        PadicNumber v = expand(-a3, p, std::max(u.precision(), 1L)) / u;
        PadicNumber x = u + v;
        if (!x.is_value()) continue;
        // v^3 must reproduce the "-" radicand within the shared window
        PadicNumber v3 = v * v * v;
        Rational diff = v3.to_rational() - rad_minus.to_rational();
        if (diff != 0) {
            long agree = *valuation_of(diff, p);
            if (agree < std::min(v3.known_to(), rad_minus.known_to()) - 3) continue;
        }
        Rational xr = x.to_rational();
        Rational res = xr * xr * xr + eq.a * xr - eq.b;
        if (res == 0 || *valuation_of(res, p) >= N - 2) {
            rep.root = x;
            rep.inner_sqrt = s;
            rep.pair = std::make_pair(u, v);
            return rep;
        }
    }
    throw std::logic_error("cardano: no cube-root pairing satisfied the radicand identity");
}

} // namespace padic
