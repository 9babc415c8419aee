#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "prime.hpp"
#include "rational.hpp"

namespace padic {

/// Residue class in F_p.
struct FpElement {
    std::uint32_t value{0};
    std::uint32_t p{0};

    FpElement() = default;
    FpElement(std::uint64_t v, Prime pr)
        : value(static_cast<std::uint32_t>(v % pr.value())), p(pr.value()) {}

    static FpElement from_signed(std::int64_t v, Prime pr) {
        std::int64_t m = static_cast<std::int64_t>(pr.value());
        std::int64_t r = v % m;
        if (r < 0) r += m;
        return FpElement(static_cast<std::uint64_t>(r), pr);
    }

    bool operator==(const FpElement& o) const { return value == o.value && p == o.p; }
};

inline FpElement pow_mod(FpElement base, std::uint64_t exp) {
    FpElement r;
    r.p = base.p;
    r.value = static_cast<std::uint32_t>(pow_mod_u64(base.value, exp, base.p));
    return r;
}

/// Euler-style criterion: a != 0 is a q-th power residue iff
/// a^{(p-1)/d} = 1 with d = gcd(q, p-1).
inline bool power_residue_test(FpElement a, std::uint64_t q) {
    if (a.value == 0) throw std::invalid_argument("power_residue_test: a = 0");
    if (q == 0) throw std::invalid_argument("power_residue_test: q = 0");
    std::uint64_t d = std::gcd(q, static_cast<std::uint64_t>(a.p - 1));
    return pow_mod_u64(a.value, (a.p - 1) / d, a.p) == 1;
}

inline bool is_quadratic_residue(std::uint32_t a, Prime p) {
    return pow_mod_u64(a % p.value(), (p.value() - 1) / 2, p.value()) == 1;
}

/// Tonelli-Shanks square root mod an odd prime. Pre: a is a QR (or 0).
inline std::uint32_t sqrt_mod(std::uint32_t a, Prime p) {
    const std::uint64_t m = p.value();
    a %= m;
    if (a == 0) return 0;
    if (m % 4 == 3)
        return static_cast<std::uint32_t>(pow_mod_u64(a, (m + 1) / 4, m));
    std::uint64_t s = 0, q = m - 1;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    std::uint64_t z = 2;
    while (pow_mod_u64(z, (m - 1) / 2, m) != m - 1) ++z;
    std::uint64_t c = pow_mod_u64(z, q, m);
    std::uint64_t r = pow_mod_u64(a, (q + 1) / 2, m);
    std::uint64_t t = pow_mod_u64(a, q, m);
    std::uint64_t e = s;
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) { tt = mul_mod(tt, tt, m); ++i; }
        std::uint64_t b = pow_mod_u64(c, 1ull << (e - i - 1), m);
        r = mul_mod(r, b, m);
        c = mul_mod(b, b, m);
        t = mul_mod(t, c, m);
        e = i;
    }
    return static_cast<std::uint32_t>(r);
}

namespace detail {

inline std::uint64_t mod_inverse_word(std::uint64_t a, std::uint64_t p) {
    return pow_mod_u64(a % p, p - 2, p); // p prime
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

/// Discrete log of `target` in the subgroup generated by `base` of prime
/// order ell, by baby-step giant-step.
inline std::uint64_t dlog_prime_order(std::uint64_t base, std::uint64_t target,
                                      std::uint64_t ell, std::uint64_t p) {
    std::uint64_t step = 1;
    while (step * step < ell) ++step;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < step; ++j) {
        baby.emplace(cur, j);
        cur = mul_mod(cur, base, p);
    }
    std::uint64_t giant = mod_inverse_word(cur, p); // base^{-step}
    cur = target % p;
    for (std::uint64_t i = 0; i <= step; ++i) {
        auto it = baby.find(cur);
        if (it != baby.end()) return i * step + it->second;
        cur = mul_mod(cur, giant, p);
    }
    throw std::logic_error("dlog_prime_order: target not in subgroup");
}

/// One solution of x^ell = a mod p for an odd prime ell | p-1, given that a
/// is an ell-th power residue (Adleman-Manders-Miller descent).
inline std::uint32_t amm_root(std::uint32_t a, std::uint64_t ell, Prime pr) {
    const std::uint64_t p = pr.value();
    std::uint64_t t = p - 1, s = 0;
    while (t % ell == 0) { t /= ell; ++s; }
    std::uint64_t c = 2;
    while (pow_mod_u64(c, (p - 1) / ell, p) == 1) ++c;
    std::uint64_t b = pow_mod_u64(c, t, p); // order ell^s
    std::uint64_t ell_pow_s = 1;
    for (std::uint64_t i = 0; i < s; ++i) ell_pow_s *= ell;
    std::uint64_t omega = pow_mod_u64(b, ell_pow_s / ell, p); // order ell
    // Pohlig digit extraction: a^t = b^J inside the ell-Sylow subgroup.
    std::uint64_t A = pow_mod_u64(a, t, p);
    std::uint64_t J = 0, ell_pow_i = 1;
    for (std::uint64_t i = 0; i < s; ++i) {
        std::uint64_t rest = mul_mod(A, mod_inverse_word(pow_mod_u64(b, J, p), p), p);
        std::uint64_t chunk = pow_mod_u64(rest, ell_pow_s / (ell_pow_i * ell), p);
        std::uint64_t digit = dlog_prime_order(omega, chunk, ell, p);
        J += digit * ell_pow_i;
        ell_pow_i *= ell;
    }
    std::uint64_t inv_t = static_cast<std::uint64_t>(
        mod_inverse(BigInt(t % ell_pow_s), BigInt(ell_pow_s)));
    std::uint64_t jp = static_cast<std::uint64_t>((BigInt(J) * inv_t) % ell_pow_s);
    if (jp % ell != 0)
        throw std::logic_error("amm_root: input is not an ell-th power residue");
    std::uint64_t h = jp / ell;
    std::uint64_t delta = (t == 1) ? 0
        : static_cast<std::uint64_t>(mod_inverse(BigInt(ell % t), BigInt(t)));
    BigInt e = (BigInt(h) * (1 - BigInt(delta) * BigInt(ell))) % BigInt(ell_pow_s);
    if (e < 0) e += ell_pow_s;
    return static_cast<std::uint32_t>(mul_mod(
        pow_mod_u64(a, delta, p),
        pow_mod_u64(b, static_cast<std::uint64_t>(e), p), p));
}

/// Element of exact multiplicative order d (d | p-1).
inline std::uint32_t element_of_order(std::uint64_t d, Prime pr) {
    const std::uint64_t p = pr.value();
    auto fs = prime_factors(d);
    for (std::uint64_t c = 2;; ++c) {
        std::uint64_t w = pow_mod_u64(c, (p - 1) / d, p);
        bool ok = w != 1 || d == 1;
        for (auto ell : fs)
            if (pow_mod_u64(w, d / ell, p) == 1) { ok = false; break; }
        if (ok) return static_cast<std::uint32_t>(w);
    }
}

} // namespace detail

/// All solutions of x^q = a in F_p (a != 0): empty unless the residue test
/// passes, exactly gcd(q, p-1) roots otherwise. Exhaustive search for small
/// p, order-factoring descent above.
inline std::vector<std::uint32_t> qth_roots_fp(FpElement a, std::uint64_t q) {
    if (a.value == 0) throw std::invalid_argument("qth_roots_fp: a = 0");
    if (q == 0) throw std::invalid_argument("qth_roots_fp: q = 0");
    Prime pr(a.p);
    const std::uint64_t p = a.p;
    const std::uint64_t d = std::gcd(q, static_cast<std::uint64_t>(p - 1));
    if (pow_mod_u64(a.value, (p - 1) / d, p) != 1) return {};
    std::vector<std::uint32_t> roots;
    constexpr std::uint64_t kExhaustiveLimit = 10000;
    if (p < kExhaustiveLimit) {
        std::uint64_t e = q % (p - 1);
        if (e == 0) e = p - 1;
        for (std::uint64_t x = 1; x < p; ++x)
            if (pow_mod_u64(x, e, p) == a.value)
                roots.push_back(static_cast<std::uint32_t>(x));
        return roots;
    }
    // Descent: reduce x^q = a to y^d = a via Bezout u*q + v*(p-1) = d, x = y^u;
    // extract prime-by-prime roots of y^d = a; enumerate with a d-th root of
    // unity.
    BigInt bu, bv;
    egcd(BigInt(q), BigInt(p - 1), bu, bv);
    BigInt u = bu % BigInt(p - 1);
    if (u < 0) u += p - 1;
    std::uint64_t y = a.value;
    std::uint64_t rem = d;
    for (auto ell : detail::prime_factors(d)) {
        while (rem % ell == 0) {
            y = (ell == 2) ? sqrt_mod(static_cast<std::uint32_t>(y), pr)
                           : detail::amm_root(static_cast<std::uint32_t>(y), ell, pr);
            rem /= ell;
        }
    }
    std::uint64_t x0 = pow_mod_u64(y, static_cast<std::uint64_t>(u), p);
    std::uint64_t omega = (d == 1) ? 1 : detail::element_of_order(d, pr);
    std::uint64_t x = x0;
    for (std::uint64_t j = 0; j < d; ++j) {
        roots.push_back(static_cast<std::uint32_t>(x));
        x = mul_mod(x, omega, p);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// u_{p-2} of the recurrence u_{n+3} = b0 u_n - a0 u_{n+1},
/// u_1 = 0, u_2 = -a0, u_3 = b0, via companion-matrix exponentiation.
inline std::uint32_t u_pm2(std::uint32_t a0, std::uint32_t b0, Prime pr) {
    const std::uint64_t p = pr.value();
    using Mat = std::array<std::array<std::uint64_t, 3>, 3>;
    auto mul = [p](const Mat& A, const Mat& B) {
        Mat C{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                if (A[i][k] == 0) continue;
                for (int j = 0; j < 3; ++j)
                    C[i][j] = (C[i][j] + mul_mod(A[i][k], B[k][j], p)) % p;
            }
        return C;
    };
    Mat M{{{0, 1, 0}, {0, 0, 1}, {b0 % p, (p - a0 % p) % p, 0}}};
    Mat R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::uint64_t e = p - 3; // u_{p-2} sits p-3 steps past u_1
    while (e > 0) {
        if (e & 1) R = mul(R, M);
        M = mul(M, M);
        e >>= 1;
    }
    std::uint64_t u1 = 0, u2 = (p - a0 % p) % p, u3 = b0 % p;
    return static_cast<std::uint32_t>((mul_mod(R[0][0], u1, p) +
                                       mul_mod(R[0][1], u2, p) +
                                       mul_mod(R[0][2], u3, p)) % p);
}

/// O(p) reference computation of the same term, kept for differential tests.
inline std::uint32_t u_pm2_iterative(std::uint32_t a0, std::uint32_t b0, Prime pr) {
    const std::uint64_t p = pr.value();
    std::uint64_t u1 = 0, u2 = (p - a0 % p) % p, u3 = b0 % p;
    for (std::uint64_t n = 1; n + 3 <= p - 2; ++n) {
        std::uint64_t next = (mul_mod(b0 % p, u1, p) + p - mul_mod(a0 % p, u2, p)) % p;
        u1 = u2;
        u2 = u3;
        u3 = next;
    }
    return static_cast<std::uint32_t>(u3);
}

struct FpRoot {
    FpElement value;
    int multiplicity;
};

struct FpCubicReport {
    int count = 0; ///< number of solutions counted with multiplicity
    std::vector<FpRoot> roots;
    FpElement Dbar;
    FpElement u_pm2;
    bool simple_root_exists = false;
};

namespace detail {

inline void require_cubic_preconditions(FpElement a0, FpElement b0) {
    if (a0.p != b0.p) throw std::invalid_argument("fp cubic: mismatched primes");
    if (a0.p <= 3) throw unsupported_error("fp cubic analysis requires p > 3");
    if (a0.value == 0 || b0.value == 0)
        throw std::invalid_argument("fp cubic: zero coefficient");
}

// Dense little-endian polynomials over F_p; the cubic use keeps degrees tiny.
using FpPoly = std::vector<std::uint64_t>;

inline FpPoly poly_trim(FpPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline FpPoly poly_rem(FpPoly f, const FpPoly& g, std::uint64_t p) {
    f = poly_trim(std::move(f));
    FpPoly gg = poly_trim(g);
    std::uint64_t lead_inv = mod_inverse_word(gg.back(), p);
    while (f.size() >= gg.size() && !f.empty()) {
        std::uint64_t c = mul_mod(f.back(), lead_inv, p);
        std::size_t shift = f.size() - gg.size();
        for (std::size_t i = 0; i < gg.size(); ++i) {
            std::uint64_t sub = mul_mod(c, gg[i], p);
            f[shift + i] = (f[shift + i] + p - sub) % p;
        }
        f = poly_trim(std::move(f));
    }
    return f;
}

inline FpPoly poly_quotient(FpPoly f, const FpPoly& g, std::uint64_t p) {
    f = poly_trim(std::move(f));
    FpPoly gg = poly_trim(g);
    FpPoly q(f.size() >= gg.size() ? f.size() - gg.size() + 1 : 0, 0);
    std::uint64_t lead_inv = mod_inverse_word(gg.back(), p);
    while (f.size() >= gg.size() && !f.empty()) {
        std::uint64_t c = mul_mod(f.back(), lead_inv, p);
        std::size_t shift = f.size() - gg.size();
        q[shift] = c;
        for (std::size_t i = 0; i < gg.size(); ++i) {
            std::uint64_t sub = mul_mod(c, gg[i], p);
            f[shift + i] = (f[shift + i] + p - sub) % p;
        }
        f = poly_trim(std::move(f));
    }
    return q;
}

inline FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint64_t p) {
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mul_mod(a[i], b[j], p)) % p;
    return poly_rem(std::move(c), mod, p);
}

inline FpPoly poly_powmod(FpPoly base, BigInt e, const FpPoly& mod, std::uint64_t p) {
    FpPoly r{1};
    base = poly_rem(std::move(base), mod, p);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        FpPoly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t inv = mod_inverse_word(a.back(), p);
        for (auto& c : a) c = mul_mod(c, inv, p);
    }
    return a;
}

/// Roots of a squarefree, fully-split polynomial of degree <= 3, by
/// equal-degree splitting with a deterministic shift sequence.
inline void split_roots(const FpPoly& f, Prime pr, std::vector<std::uint32_t>& out) {
    const std::uint64_t p = pr.value();
    FpPoly g = poly_trim(f);
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(static_cast<std::uint32_t>(
            mul_mod((p - g[0]) % p, mod_inverse_word(g[1], p), p)));
        return;
    }
    if (g.size() == 3) {
        std::uint64_t a = g[2], b = g[1], c = g[0];
        std::uint64_t disc = (mul_mod(b, b, p) + p - mul_mod(4 % p, mul_mod(a, c, p), p)) % p;
        std::uint64_t s = sqrt_mod(static_cast<std::uint32_t>(disc), pr);
        std::uint64_t inv2a = mod_inverse_word(mul_mod(2, a, p), p);
        out.push_back(static_cast<std::uint32_t>(mul_mod(((p - b) + s) % p, inv2a, p)));
        out.push_back(static_cast<std::uint32_t>(mul_mod(((p - b) + p - s) % p, inv2a, p)));
        return;
    }
    for (std::uint64_t delta = 1;; ++delta) {
        FpPoly shifted{delta % p, 1}; // x + delta
        FpPoly h = poly_powmod(shifted, BigInt((p - 1) / 2), g, p);
        if (h.empty()) h = {0};
        h[0] = (h[0] + p - 1) % p; // (x+delta)^{(p-1)/2} - 1
        FpPoly d = poly_gcd(h, g, p);
        if (d.size() > 1 && d.size() < g.size()) {
            split_roots(d, pr, out);
            split_roots(poly_quotient(g, d, p), pr, out);
            return;
        }
    }
}

/// Distinct roots of x^3 + a0 x - b0 over F_p.
inline std::vector<std::uint32_t> fp_cubic_distinct_roots(std::uint32_t a0, std::uint32_t b0,
                                                          Prime pr) {
    const std::uint64_t p = pr.value();
    std::vector<std::uint32_t> roots;
    if (p < 10000) {
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t y = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(a0 % p, x, p) +
                               p - b0 % p) % p;
            if (y == 0) roots.push_back(static_cast<std::uint32_t>(x));
        }
        return roots;
    }
    FpPoly f{(p - b0 % p) % p, a0 % p, 0, 1};
    FpPoly xp = poly_powmod(FpPoly{0, 1}, BigInt(p), f, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p; // x^p - x
    FpPoly lin = poly_gcd(xp, f, p); // product of the linear factors
    split_roots(lin, pr, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace detail

/// Root count of x^3 + a0 x = b0 over F_p, with multiplicity: 3 when
/// Dbar u_{p-2}^2 = 0, 0 when it equals 9 a0^2, 1 otherwise.
inline FpCubicReport fp_cubic_count(FpElement a0, FpElement b0) {
    detail::require_cubic_preconditions(a0, b0);
    Prime pr(a0.p);
    const std::uint64_t p = a0.p;
    FpCubicReport rep;
    std::uint64_t a3 = mul_mod(mul_mod(a0.value, a0.value, p), a0.value, p);
    std::uint64_t b2 = mul_mod(b0.value, b0.value, p);
    std::uint64_t dbar = ((p - mul_mod(4, a3, p)) + (p - mul_mod(27 % p, b2, p))) % p;
    rep.Dbar = FpElement(dbar, pr);
    rep.u_pm2 = FpElement(u_pm2(a0.value, b0.value, pr), pr);
    std::uint64_t left = mul_mod(dbar, mul_mod(rep.u_pm2.value, rep.u_pm2.value, p), p);
    std::uint64_t right = mul_mod(9 % p, mul_mod(a0.value, a0.value, p), p);
    if (left == 0) rep.count = 3;
    else if (left == right) rep.count = 0;
    else rep.count = 1;
    return rep;
}

/// Full root list with multiplicities. Pre: Dbar u^2 != 9 a0^2. A
/// multiplicity-2 root occurs exactly when Dbar = 0, at 3 b0 / (2 a0), with
/// simple companion -3 b0 / a0. No root ever has multiplicity 3.
inline FpCubicReport fp_cubic_classify(FpElement a0, FpElement b0) {
    FpCubicReport rep = fp_cubic_count(a0, b0);
    if (rep.count == 0)
        throw std::invalid_argument("fp_cubic_classify: equation has no roots (precondition)");
    Prime pr(a0.p);
    const std::uint64_t p = a0.p;
    if (rep.Dbar.value == 0) {
        std::uint64_t inv_a = detail::mod_inverse_word(a0.value, p);
        std::uint64_t x1 = mul_mod(mul_mod(3 % p, b0.value, p),
                                   detail::mod_inverse_word(mul_mod(2, a0.value, p), p), p);
        std::uint64_t x2 = mul_mod((p - 3 % p), mul_mod(b0.value, inv_a, p), p);
        rep.roots.push_back({FpElement(x1, pr), 2});
        rep.roots.push_back({FpElement(x2, pr), 1});
    } else {
        for (auto r : detail::fp_cubic_distinct_roots(a0.value, b0.value, pr))
            rep.roots.push_back({FpElement(r, pr), 1});
    }
    for (const auto& root : rep.roots) {
        std::uint64_t deriv = (mul_mod(3 % p, mul_mod(root.value.value, root.value.value, p), p) +
                               a0.value) % p;
        if (deriv != 0) rep.simple_root_exists = true;
    }
    return rep;
}

} // namespace padic
