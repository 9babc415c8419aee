#pragma once

#include <optional>
#include <random>
#include <vector>

#include <padic/padic.hpp>

namespace padic::testutil {

/// ord_p(x^3 + a x - b) for the exact truncation of a computed root;
/// nullopt means the residual is exactly zero.
inline std::optional<long> cubic_residual_valuation(const Rational& a, const Rational& b,
                                                    const PadicNumber& root) {
    Rational x = root.to_rational();
    Rational res = x * x * x + a * x - b;
    if (res == 0) return std::nullopt;
    return *valuation_of(res, root.prime());
}

inline bool residual_at_least(const Rational& a, const Rational& b, const PadicNumber& root,
                              long bound) {
    auto v = cubic_residual_valuation(a, b, root);
    return !v || *v >= bound;
}

/// ord_p(x - y) of the exact truncations; nullopt for exact agreement.
inline std::optional<long> distance_valuation(const PadicNumber& x, const PadicNumber& y) {
    Rational d = x.to_rational() - y.to_rational();
    if (d == 0) return std::nullopt;
    return *valuation_of(d, x.prime());
}

inline bool agree_to(const PadicNumber& x, const PadicNumber& y, long exponent) {
    auto d = distance_valuation(x, y);
    return !d || *d >= exponent;
}

/// Independent digit-by-digit expansion: strip the valuation, then peel one
/// digit at a time with the modular inverse of the denominator.
inline std::vector<std::uint32_t> expansion_oracle(Rational x, Prime p, long N) {
    if (x == 0) return {};
    x = unit_part(x, p);
    std::vector<std::uint32_t> digits;
    const BigInt pb(p.value());
    for (long i = 0; i < N; ++i) {
        BigInt d = rational_mod(x, pb);
        digits.push_back(static_cast<std::uint32_t>(d));
        x = (x - Rational(d)) / Rational(pb);
    }
    return digits;
}

/// Independent digit-by-digit Hensel lift for a simple seed (i = 0):
/// x_{j+1} = x_j - f(x_j) * f'(x0)^{-1} mod p^{j+1}, one digit per step.
inline BigInt digitwise_lift_oracle(const std::vector<Rational>& coeffs, std::uint32_t seed,
                                    Prime p, long K) {
    auto eval = [&](const BigInt& x, const BigInt& m) {
        BigInt r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            r = (r * x + rational_mod(*it, m)) % m;
        return r;
    };
    BigInt dseed = 0;
    {
        BigInt m(p.value());
        for (std::size_t j = 1; j < coeffs.size(); ++j) {
            BigInt pw = pow_mod_big(BigInt(seed), BigInt(j - 1), m);
            dseed = (dseed + BigInt(j) * rational_mod(coeffs[j], m) % m * pw) % m;
        }
    }
    BigInt inv_d = mod_inverse(dseed, BigInt(p.value()));
    BigInt x = seed;
    for (long j = 1; j < K; ++j) {
        BigInt m = p_power(p, j + 1);
        BigInt fx = eval(x, m);
        x = (x - fx * inv_d) % m;
        if (x < 0) x += m;
    }
    return x;
}

/// Quadratic oracle: decide solvability of x^2 + qx + r = 0 over Q_p by
/// enumerating unit residues mod p^K across every valuation slice. Shares
/// nothing with quadratic_solve_qp.
inline bool quadratic_solvable_by_enumeration(const Rational& q, const Rational& r, Prime p,
                                              long K) {
    if (q * q == 4 * r) return true; // exact double root -q/2
    long ordq = q == 0 ? 1000 : *valuation_of(q, p);
    long ordr = r == 0 ? 1000 : *valuation_of(r, p);
    long T = std::max({std::labs(ordq), std::labs(ordr), 4L}) + 2;
    for (long t = -T; t <= T; ++t) {
        long o2 = 2 * t, o1 = (q == 0 ? 1000000 : ordq + t), o0 = (r == 0 ? 1000000 : ordr);
        long e = -std::min({o2, o1, o0});
        Rational C2 = p_power_rational(p, 2 * t + e);
        Rational C1 = q * p_power_rational(p, t + e);
        Rational C0 = r * p_power_rational(p, e);
        BigInt m = p_power(p, K);
        BigInt c2 = rational_mod(C2, m), c1 = rational_mod(C1, m), c0 = rational_mod(C0, m);
        for (std::uint64_t u = 1; u < p.value(); ++u) {
            if (((c2 * u % p.value() * u + c1 * u + c0) % p.value()) != 0) continue;
            std::vector<BigInt> live{BigInt(u)};
            BigInt level = p.value();
            for (long lev = 2; lev <= K && !live.empty(); ++lev) {
                BigInt next_mod = level * p.value();
                std::vector<BigInt> next;
                for (auto& x : live)
                    for (std::uint64_t d = 0; d < p.value(); ++d) {
                        BigInt theta = x + level * d;
                        if (((c2 * theta % next_mod) * theta + c1 * theta + c0) % next_mod == 0)
                            next.push_back(theta);
                    }
                live = std::move(next);
                level = next_mod;
            }
            for (auto& theta : live) {
                BigInt d = (2 * c2 * theta + c1) % p_power(p, K);
                long iv = detail::residue_valuation(d, p, K);
                if (2 * iv + 1 <= K) return true;
            }
        }
    }
    return false;
}

struct RandomRational {
    std::mt19937_64 rng;
    explicit RandomRational(std::uint64_t seed) : rng(seed) {}

    /// p^e * (two random digits), e uniform in [emin, emax], optional sign.
    Rational next(Prime p, long emin, long emax, bool signs = true) {
        std::uniform_int_distribution<long> ed(emin, emax);
        std::uniform_int_distribution<std::uint32_t> d0(1, p.value() - 1);
        std::uniform_int_distribution<std::uint32_t> d1(0, p.value() - 1);
        Rational unit = Rational(d0(rng)) + Rational(d1(rng)) * p.value();
        if (signs && (rng() & 1)) unit = -unit;
        return unit * p_power_rational(p, ed(rng));
    }
};

/// Deterministic generators for equations hitting a chosen Cardano branch.
/// Construction plus rejection sampling; every emitted pair is re-verified
/// through cardano_applicable.
struct CardanoBranchGen {
    std::mt19937_64 rng;
    explicit CardanoBranchGen(std::uint64_t seed) : rng(seed) {}

    std::pair<Rational, Rational> generate(Prime p, const std::string& branch) {
        for (int attempt = 0; attempt < 4000; ++attempt) {
            auto cand = propose(p, branch);
            if (!cand) continue;
            CubicEquation eq(p, cand->first, cand->second);
            auto rep = cardano_applicable(eq);
            if (rep.applicable && rep.branch == branch) return *cand;
        }
        throw std::runtime_error("CardanoBranchGen: no instance found for branch " + branch);
    }

private:
    long pick(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    }

    Rational unit(Prime p, std::uint32_t forced_lead = 0) {
        std::uint32_t d0 = forced_lead
                               ? forced_lead
                               : static_cast<std::uint32_t>(pick(1, p.value() - 1));
        return Rational(d0) + Rational(pick(0, p.value() - 1)) * p.value() +
               Rational(pick(0, p.value() - 1)) * p.value() * p.value();
    }

    std::optional<std::pair<Rational, Rational>> propose(Prime p, const std::string& branch) {
        const std::uint64_t pv = p.value();
        if (branch == "I.1") {
            long lb = 3 * pick(-2, 2);
            std::uint32_t b0 = 0;
            if (pv % 3 == 1) { // force a cube residue
                std::uint32_t c = static_cast<std::uint32_t>(pick(1, pv - 1));
                b0 = static_cast<std::uint32_t>(mul_mod(mul_mod(c, c, pv), c, pv));
            }
            Rational b = unit(p, b0) * p_power_rational(p, -lb);
            long la = (2 * lb - 1 >= 0 ? (2 * lb - 1) / 3 : (2 * lb - 1 - 2) / 3) - pick(0, 2);
            Rational a = unit(p) * p_power_rational(p, -la);
            if ((rng() & 1) != 0) a = -a;
            if (3 * la >= 2 * lb) return std::nullopt;
            return std::make_pair(a, b);
        }
        if (branch == "I.2") {
            Rational c = unit(p) * p_power_rational(p, pick(-2, 2));
            if ((rng() & 1) != 0) c = -c;
            return std::make_pair(-3 * c * c, -2 * c * c * c);
        }
        if (branch == "I.3" || branch == "I.4") {
            Rational astar, bstar;
            if (branch == "I.3") {
                // need Dbar == 0: b0^2 = -4 a0^3 / 27 mod p
                std::uint32_t a0 = static_cast<std::uint32_t>(pick(1, pv - 1));
                std::uint64_t rhs = mul_mod(
                    (pv - mul_mod(4, mul_mod(mul_mod(a0, a0, pv), a0, pv), pv)) % pv,
                    detail::mod_inverse_word(27 % pv, pv), pv);
                if (rhs == 0 || !is_quadratic_residue(static_cast<std::uint32_t>(rhs), p))
                    return std::nullopt;
                astar = unit(p, a0);
                bstar = unit(p, sqrt_mod(static_cast<std::uint32_t>(rhs), p));
            } else if (pv % 3 == 1) {
                // -3 d0 is a QR here only when the residue cubic splits
                // completely; build one from a zero-sum root triple
                std::uint64_t r1 = static_cast<std::uint64_t>(pick(1, pv - 1));
                std::uint64_t r2 = static_cast<std::uint64_t>(pick(1, pv - 1));
                std::uint64_t r3 = (2 * pv - r1 - r2) % pv;
                if (r3 == 0 || r1 == r2 || r1 == r3 || r2 == r3) return std::nullopt;
                std::uint64_t e2 = (mul_mod(r1, r2, pv) + mul_mod(r1, r3, pv) +
                                    mul_mod(r2, r3, pv)) % pv;
                std::uint64_t e3 = mul_mod(mul_mod(r1, r2, pv), r3, pv);
                if (e2 == 0 || e3 == 0) return std::nullopt;
                astar = unit(p, static_cast<std::uint32_t>(e2));
                bstar = unit(p, static_cast<std::uint32_t>(e3));
            } else {
                astar = unit(p);
                bstar = unit(p);
            }
            long t = pick(-1, 1);
            return std::make_pair(astar * p_power_rational(p, 2 * t),
                                  bstar * p_power_rational(p, 3 * t));
        }
        if (branch == "I.5") {
            long la = 2 * pick(-1, 1);
            // force 3 a0 to be a QR
            std::uint32_t s = static_cast<std::uint32_t>(pick(1, pv - 1));
            std::uint32_t a0 = static_cast<std::uint32_t>(mul_mod(
                mul_mod(s, s, pv), detail::mod_inverse_word(3 % pv, pv), pv));
            Rational a = unit(p, a0) * p_power_rational(p, -la);
            long lb = (3 * la - 1 >= 0 ? (3 * la - 1) / 2 : (3 * la - 1 - 1) / 2) - pick(0, 2);
            Rational b = unit(p) * p_power_rational(p, -lb);
            if ((rng() & 1) != 0) b = -b;
            if (3 * la <= 2 * lb) return std::nullopt;
            return std::make_pair(a, b);
        }
        throw std::invalid_argument("unknown Cardano branch " + branch);
    }
};

} // namespace padic::testutil
