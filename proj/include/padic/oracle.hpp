#pragma once

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "cubic.hpp"

namespace padic {

struct OracleWitness {
    long valuation;  ///< ord_p of the certified root
    BigInt residue;  ///< the surviving residue class (unit-level for qp scans)
    int multiplicity;
};

struct OracleVerdict {
    long count = 0; ///< distinct roots
    long count_with_multiplicity = 0;
    std::vector<OracleWitness> witnesses;
    long modulus_exponent = 0; ///< K actually used
    long window = 0;           ///< T (qp scans only)
};

/// Exhaustive root list of x^3 + a0 x - b0 over F_p, with multiplicities
/// read off the derivatives.
inline OracleVerdict fp_bruteforce(FpElement a0, FpElement b0) {
    if (a0.p != b0.p) throw std::invalid_argument("fp_bruteforce: mismatched primes");
    Prime pr(a0.p);
    const std::uint64_t p = a0.p;
    if (p > 1000000) throw unsupported_error("fp_bruteforce: p too large to enumerate");
    OracleVerdict v;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t fx = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(a0.value, x, p) +
                            p - b0.value) % p;
        if (fx != 0) continue;
        std::uint64_t dfx = (mul_mod(3 % p, mul_mod(x, x, p), p) + a0.value) % p;
        int mult = 1;
        if (dfx == 0) {
            mult = 2;
            if (mul_mod(6 % p, x, p) == 0) mult = 3;
        }
        v.witnesses.push_back({0, BigInt(x), mult});
        v.count += 1;
        v.count_with_multiplicity += mult;
    }
    return v;
}

namespace detail {

/// Residue classes theta mod p^K with F(theta) ≡ 0 (mod p^K) for the cubic
/// F = C3 x^3 + C1 x + C0 (p-adic integer coefficients, min ord 0), each
/// certified by the raw Hensel seed test and merged into disjoint balls.
/// Shares no branch logic with the solver.
inline std::vector<std::pair<BigInt, long>> enumerate_certified_roots(
    const Rational& C3, const Rational& C1, const Rational& C0, Prime p, long K,
    bool units_only) {
    const std::uint64_t pv = p.value();
    const BigInt mK = p_power(p, K);
    const BigInt c3 = rational_mod(C3, mK), c1 = rational_mod(C1, mK), c0 = rational_mod(C0, mK);
    auto eval = [&](const BigInt& x, const BigInt& mod) {
        BigInt r = ((c3 * x % mod) * x % mod + c1) * x % mod;
        r = (r + c0) % mod;
        return r;
    };
    std::vector<BigInt> cands;
    for (std::uint64_t x = units_only ? 1 : 0; x < pv; ++x)
        if (eval(BigInt(x), BigInt(pv)) == 0) cands.emplace_back(x);
    BigInt level_mod(pv);
    for (long level = 2; level <= K; ++level) {
        BigInt next_mod = level_mod * pv;
        std::vector<BigInt> next;
        for (const auto& c : cands)
            for (std::uint64_t d = 0; d < pv; ++d) {
                BigInt theta = c + level_mod * d;
                if (eval(theta, next_mod) == 0) next.push_back(std::move(theta));
            }
        cands = std::move(next);
        level_mod = next_mod;
    }
    // Certification: i = ord F'(theta); the class guarantees a unique root
    // in theta + p^{i+1} Zp only when 2i + 1 <= K.
    std::vector<std::pair<BigInt, long>> certified;
    for (const auto& theta : cands) {
        BigInt d = (3 * c3 % mK * theta % mK * theta % mK + c1) % mK;
        long iv = residue_valuation(d, p, K);
        if (2 * iv + 1 > K)
            throw oracle_modulus_error(
                "zp oracle: K = " + std::to_string(K) +
                    " cannot certify a class with derivative valuation >= " + std::to_string(iv),
                std::max(2 * iv + 3, K + 4));
        certified.emplace_back(theta, iv);
    }
    std::sort(certified.begin(), certified.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<BigInt, long>> merged;
    for (const auto& [theta, iv] : certified) {
        bool fresh = true;
        for (const auto& [t2, iv2] : merged) {
            BigInt ball = p_power(p, std::min(iv, iv2) + 1);
            if ((theta - t2) % ball == 0) { fresh = false; break; }
        }
        if (fresh) merged.emplace_back(theta, iv);
    }
    return merged;
}

inline void require_nonzero_coefficients(const CubicEquation& eq, const char* who) {
    if (eq.a_zero || eq.b_zero)
        throw std::invalid_argument(std::string(who) + ": ab = 0 is handled upstream");
}

} // namespace detail

/// Counts Zp roots (units only, on request) by enumerating residue classes
/// mod p^K and applying the raw Hensel seed test. With D = 0 the factored
/// exact roots 3b/(2a), -3b/a are used instead; classes around a genuine
/// double root can never be certified by a finite K.
inline OracleVerdict zp_oracle(const CubicEquation& eq, long K, bool units_only = false) {
    detail::require_nonzero_coefficients(eq, "zp_oracle");
    if (K < 2) throw std::invalid_argument("zp_oracle: K must be >= 2");
    const Prime p = eq.prime;
    OracleVerdict v;
    v.modulus_exponent = K;
    Rational D_orig = -4 * eq.a * eq.a * eq.a - 27 * eq.b * eq.b;
    if (D_orig == 0) {
        const std::pair<Rational, int> factored[] = {{3 * eq.b / (2 * eq.a), 2},
                                                     {-3 * eq.b / eq.a, 1}};
        for (const auto& [root, mult] : factored) {
            long ord = *valuation_of(root, p);
            if (ord < 0 || (units_only && ord != 0)) continue;
            v.witnesses.push_back({ord, rational_mod(root, p_power(p, K)), mult});
            v.count += 1;
            v.count_with_multiplicity += mult;
        }
        return v;
    }
    long orda = *valuation_of(eq.a, p), ordb = *valuation_of(eq.b, p);
    long e = std::max({0L, -orda, -ordb});
    Rational c = p_power_rational(p, e);
    for (const auto& [theta, iv] :
         detail::enumerate_certified_roots(c, c * eq.a, -c * eq.b, p, K, units_only)) {
        v.witnesses.push_back({detail::residue_valuation(theta, p, K), theta, 1});
        v.count += 1;
        v.count_with_multiplicity += 1;
    }
    return v;
}

/// Counts Q_p roots by scanning x = p^t u, u a unit, over t in [-T, T],
/// reducing each slice to a unit-level enumeration. The needed window is
/// pinned by the Newton polygon of (3, ord a, ord b); an undersized T is an
/// explicit, retryable error.
inline OracleVerdict qp_oracle(const CubicEquation& eq, long K, long T) {
    detail::require_nonzero_coefficients(eq, "qp_oracle");
    const Prime p = eq.prime;
    long orda = *valuation_of(eq.a, p), ordb = *valuation_of(eq.b, p);
    // Root valuations sit on the lower Newton hull of (0, ord b), (1, ord a),
    // (3, 0): two slopes when the middle point is below the chord, one slope
    // otherwise.
    long t_need = 3 * orda < 2 * ordb
                      ? std::max(std::labs(ordb - orda), (std::labs(orda) + 1) / 2) + 1
                      : (std::labs(ordb) + 2) / 3 + 1;
    if (T < t_need)
        throw oracle_window_error("qp oracle: window T = " + std::to_string(T) +
                                      " cannot cover all candidate valuations",
                                  t_need);
    OracleVerdict v;
    v.modulus_exponent = K;
    v.window = T;
    Rational D_orig = -4 * eq.a * eq.a * eq.a - 27 * eq.b * eq.b;
    if (D_orig == 0) {
        const std::pair<Rational, int> factored[] = {{3 * eq.b / (2 * eq.a), 2},
                                                     {-3 * eq.b / eq.a, 1}};
        for (const auto& [root, mult] : factored) {
            long ord = *valuation_of(root, p);
            v.witnesses.push_back({ord, rational_mod(unit_part(root, p), p_power(p, K)), mult});
            v.count += 1;
            v.count_with_multiplicity += mult;
        }
        return v;
    }
    for (long t = -T; t <= T; ++t) {
        long e = -std::min({3 * t, orda + t, ordb});
        Rational C3 = p_power_rational(p, 3 * t + e);
        Rational C1 = eq.a * p_power_rational(p, t + e);
        Rational C0 = -eq.b * p_power_rational(p, e);
        for (const auto& [theta, iv] :
             detail::enumerate_certified_roots(C3, C1, C0, p, K, /*units_only=*/true)) {
            v.witnesses.push_back({t, theta, 1});
            v.count += 1;
            v.count_with_multiplicity += 1;
        }
    }
    return v;
}

/// Escalating wrappers: retry on the explicit K/T errors, within a desk cap.
inline OracleVerdict zp_oracle_auto(const CubicEquation& eq, long K = 8, bool units_only = false) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            return zp_oracle(eq, K, units_only);
        } catch (const oracle_modulus_error& err) {
            K = std::min(std::max(2 * K, err.suggested_exponent), 64L);
        }
    }
    throw std::runtime_error("zp_oracle: escalation budget exhausted");
}

inline OracleVerdict qp_oracle_auto(const CubicEquation& eq, long K = 8, long T = 4) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            return qp_oracle(eq, K, T);
        } catch (const oracle_modulus_error& err) {
            K = std::min(std::max(2 * K, err.suggested_exponent), 64L);
        } catch (const oracle_window_error& err) {
            T = std::min(std::max(T + 2, err.suggested_window), 40L);
        }
    }
    throw std::runtime_error("qp_oracle: escalation budget exhausted");
}

} // namespace padic
