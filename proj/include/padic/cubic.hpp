#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hensel.hpp"

namespace padic {

enum class Domain { Units, Integers, Field };

inline const char* domain_name(Domain d) {
    switch (d) {
        case Domain::Units: return "units";
        case Domain::Integers: return "zp";
        default: return "qp";
    }
}

inline const char* domain_tag(Domain d) {
    switch (d) {
        case Domain::Units: return "Zp*";
        case Domain::Integers: return "Zp";
        default: return "Qp";
    }
}

/// x^3 + a x = b over Q_p with exact rational coefficients and cached
/// normalized data. Only p > 3 is supported; p = 2, 3 is a hard error.
struct CubicEquation {
    Prime prime;
    Rational a, b;
    bool a_zero, b_zero;
    long log_norm_a = 0, log_norm_b = 0; ///< log_p|.|_p = -ord_p, meaningful when nonzero
    Rational a_star, b_star;             ///< unit parts
    std::uint32_t a0 = 0, b0 = 0;        ///< leading digits

    CubicEquation(Prime p, Rational a_in, Rational b_in)
        : prime(p), a(std::move(a_in)), b(std::move(b_in)),
          a_zero(a == 0), b_zero(b == 0) {
        if (p.value() <= 3)
            throw unsupported_error("cubic criteria are only available for p > 3 (got p = " +
                                    std::to_string(p.value()) + ")");
        if (!a_zero) {
            log_norm_a = -*valuation_of(a, p);
            a_star = unit_part(a, p);
            a0 = leading_digit(a, p);
        }
        if (!b_zero) {
            log_norm_b = -*valuation_of(b, p);
            b_star = unit_part(b, p);
            b0 = leading_digit(b, p);
        }
    }
};

/// D = -4 (a|a|_p)^3 - 27 (b|b|_p)^2 and the residues derived from it.
struct DiscriminantData {
    Rational D;
    bool is_zero = false;
    long D_norm_log = 0;  ///< log_p|D|_p (<= 0), meaningless when D = 0
    std::uint32_t d0 = 0; ///< leading digit of D*, 0 when D = 0
    std::uint32_t D0 = 0; ///< -4 a0^3 - 27 b0^2 mod p
    std::uint32_t u_pm2 = 0;
    std::optional<std::uint32_t> delta0; ///< sqrt(-3 d0) mod p when a nonzero QR
};

inline DiscriminantData discriminant_data(const CubicEquation& eq) {
    if (eq.a_zero || eq.b_zero)
        throw std::invalid_argument("discriminant_data: zero coefficient (use the ab-zero path)");
    const Prime p = eq.prime;
    const std::uint64_t pv = p.value();
    DiscriminantData dd;
    dd.D = -4 * eq.a_star * eq.a_star * eq.a_star - 27 * eq.b_star * eq.b_star;
    dd.is_zero = dd.D == 0;
    std::uint64_t a3 = mul_mod(mul_mod(eq.a0, eq.a0, pv), eq.a0, pv);
    std::uint64_t b2 = mul_mod(eq.b0, eq.b0, pv);
    dd.D0 = static_cast<std::uint32_t>(((pv - mul_mod(4, a3, pv)) +
                                        (pv - mul_mod(27 % pv, b2, pv))) % pv);
    dd.u_pm2 = u_pm2(eq.a0, eq.b0, p);
    if (!dd.is_zero) {
        dd.D_norm_log = -*valuation_of(dd.D, p);
        dd.d0 = leading_digit(dd.D, p);
        std::uint64_t md = (pv - mul_mod(3, dd.d0, pv)) % pv; // -3 d0
        if (md != 0 && is_quadratic_residue(static_cast<std::uint32_t>(md), p)) {
            std::uint32_t r = sqrt_mod(static_cast<std::uint32_t>(md), p);
            dd.delta0 = std::min(r, static_cast<std::uint32_t>(pv - r));
        }
    }
    return dd;
}

struct SolvabilityReport {
    bool solvable = false;
    std::string branch;
    std::vector<long> scaling_exponents;
    std::optional<std::uint32_t> seed;
};

struct PadicRoot {
    PadicNumber value;
    int multiplicity;
};

struct RootSet {
    std::vector<PadicRoot> roots;
    int count_with_multiplicity = 0;
    int count_distinct = 0;
    std::string branch;
};

namespace detail {

inline bool cube_residue(std::uint32_t x0, Prime p) {
    std::uint64_t d = std::gcd(3u, p.value() - 1);
    return pow_mod_u64(x0, (p.value() - 1) / d, p.value()) == 1;
}

inline std::uint32_t neg_mod(std::uint32_t x, Prime p) {
    return x == 0 ? 0 : p.value() - x;
}

/// Extra digits so the emitted root still meets the residual bound N-2
/// after undoing a x = p^k y scaling against an equation with |A| = p^m.
inline long digits_needed(long N, long three_k_minus_m) {
    return std::max(N, N - 2 - three_k_minus_m);
}

/// D0 u_{p-2}^2 != 9 a0^2 (mod p): the shared solvability residue test.
inline bool recurrence_test(const CubicEquation& eq) {
    const std::uint64_t pv = eq.prime.value();
    std::uint64_t u = u_pm2(eq.a0, eq.b0, eq.prime);
    std::uint64_t a3 = mul_mod(mul_mod(eq.a0, eq.a0, pv), eq.a0, pv);
    std::uint64_t b2 = mul_mod(eq.b0, eq.b0, pv);
    std::uint64_t D0 = ((pv - mul_mod(4, a3, pv)) + (pv - mul_mod(27 % pv, b2, pv))) % pv;
    std::uint64_t left = mul_mod(D0, mul_mod(u, u, pv), pv);
    std::uint64_t right = mul_mod(9 % pv, mul_mod(eq.a0, eq.a0, pv), pv);
    return left != right;
}

struct BranchCounts {
    int mult = 0;
    int distinct = 0;
    std::string tag = "none";
};

/// Count sub-table for the |A|^3 = |B|^2 stratum, driven by the exact D.
inline BranchCounts d_analysis_counts(const CubicEquation& eq, const DiscriminantData& dd) {
    const std::uint64_t pv = eq.prime.value();
    if (dd.is_zero) return {3, 2, "D=0"};
    if (dd.D0 != 0) { // |D|_p = 1
        if (dd.u_pm2 == 0) return {3, 3, "u=0"};
        std::uint64_t left = mul_mod(dd.D0, mul_mod(dd.u_pm2, dd.u_pm2, pv), pv);
        std::uint64_t right = mul_mod(9 % pv, mul_mod(eq.a0, eq.a0, pv), pv);
        if (left == right) return {0, 0, "none"};
        return {1, 1, "simple"};
    }
    if (dd.D_norm_log % 2 == 0) {
        if (is_quadratic_residue(dd.d0, eq.prime)) return {3, 3, "sqrt(d0)"};
        return {1, 1, "sqrt(d0)-fail"};
    }
    return {1, 1, "oddlogD"};
}

/// Counting for a = 0 or b = 0 (x^q = c criteria).
inline BranchCounts ab_zero_counts(const CubicEquation& eq, Domain dom) {
    const Prime p = eq.prime;
    if (eq.a_zero && eq.b_zero) {
        if (dom == Domain::Units) return {0, 0, "a=b=0"};
        return {3, 1, "a=b=0"};
    }
    if (eq.a_zero) { // x^3 = b
        long vb = -eq.log_norm_b;
        BranchCounts bc{0, 0, "a=0"};
        if (vb % 3 != 0) return bc;
        long vroot = vb / 3;
        bool in_domain = dom == Domain::Field ||
                         (vroot >= 0 && (dom == Domain::Integers || vroot == 0));
        if (in_domain && cube_residue(eq.b0, p)) {
            int d = static_cast<int>(std::gcd(3u, p.value() - 1));
            bc.mult = bc.distinct = d;
        }
        return bc;
    }
    // b = 0: x (x^2 + a) = 0
    BranchCounts bc{0, 0, "b=0"};
    if (dom != Domain::Units) {
        bc.mult = bc.distinct = 1; // the root x = 0
    }
    long va = -eq.log_norm_a;
    if (va % 2 == 0) {
        long vroot = va / 2;
        bool in_domain = dom == Domain::Field ||
                         (vroot >= 0 && (dom == Domain::Integers || vroot == 0));
        if (in_domain && is_quadratic_residue(neg_mod(eq.a0, p), p)) {
            bc.mult += 2;
            bc.distinct += 2;
        }
    }
    return bc;
}

} // namespace detail

/// Number of solutions in the chosen domain per the counting theorem.
/// count_with_multiplicity follows the theorem's figures (the D = 0 rows
/// count the doubled root twice); count_distinct does not.
inline RootSet count(const CubicEquation& eq, Domain dom) {
    RootSet rs;
    const Prime p = eq.prime;
    const std::uint64_t pv = p.value();
    detail::BranchCounts bc;
    if (eq.a_zero || eq.b_zero) {
        bc = detail::ab_zero_counts(eq, dom);
        rs.branch = std::string("ab-zero(") + bc.tag + ")";
        rs.count_with_multiplicity = bc.mult;
        rs.count_distinct = bc.distinct;
        return rs;
    }
    const long la = eq.log_norm_a, lb = eq.log_norm_b;
    const long A3 = 3 * la, B2 = 2 * lb;
    switch (dom) {
        case Domain::Units:
            if (la < 0 && lb == 0) {
                if (pv % 3 == 1)
                    bc = detail::cube_residue(eq.b0, p)
                             ? detail::BranchCounts{3, 3, "cbrt(b0)-split"}
                             : detail::BranchCounts{0, 0, "none"};
                else
                    bc = {1, 1, "cbrt(b0)-unique"};
            } else if (lb < 0 && la == 0) {
                bc = is_quadratic_residue(detail::neg_mod(eq.a0, p), p)
                         ? detail::BranchCounts{2, 2, "sqrt(-a0)"}
                         : detail::BranchCounts{0, 0, "none"};
            } else if (la == 0 && lb == 0) {
                bc = detail::d_analysis_counts(eq, discriminant_data(eq));
            } else if (la == lb && la > 0) {
                bc = {1, 1, "linear"};
            }
            break;
        case Domain::Integers:
            if (A3 < B2 && lb <= 0) {
                if (lb % 3 == 0) {
                    if (pv % 3 == 1)
                        bc = detail::cube_residue(eq.b0, p)
                                 ? detail::BranchCounts{3, 3, "cbrt(b0)-split"}
                                 : detail::BranchCounts{0, 0, "none"};
                    else
                        bc = {1, 1, "cbrt(b0)-unique"};
                }
            } else if (A3 == B2 && lb <= 0) {
                bc = detail::d_analysis_counts(eq, discriminant_data(eq));
            } else if (A3 > B2) {
                if (la <= 0) {
                    if (la % 2 == 0)
                        bc = is_quadratic_residue(detail::neg_mod(eq.a0, p), p)
                                 ? detail::BranchCounts{3, 3, "sqrt(-a0)"}
                                 : detail::BranchCounts{1, 1, "sqrt(-a0)-fail"};
                    else
                        bc = {1, 1, "oddloga"};
                } else if (lb <= la) {
                    bc = {1, 1, "deep-linear"};
                }
            }
            break;
        case Domain::Field:
            if (A3 < B2) {
                if (lb % 3 == 0) {
                    if (pv % 3 == 1)
                        bc = detail::cube_residue(eq.b0, p)
                                 ? detail::BranchCounts{3, 3, "cbrt(b0)-split"}
                                 : detail::BranchCounts{0, 0, "none"};
                    else
                        bc = {1, 1, "cbrt(b0)-unique"};
                }
            } else if (A3 == B2) {
                bc = detail::d_analysis_counts(eq, discriminant_data(eq));
            } else {
                if (la % 2 == 0)
                    bc = is_quadratic_residue(detail::neg_mod(eq.a0, p), p)
                             ? detail::BranchCounts{3, 3, "sqrt(-a0)"}
                             : detail::BranchCounts{1, 1, "sqrt(-a0)-fail"};
                else
                    bc = {1, 1, "oddloga"};
            }
            break;
    }
    rs.branch = std::string("Thm4.1-") + domain_tag(dom) + "-" + bc.tag;
    rs.count_with_multiplicity = bc.mult;
    rs.count_distinct = bc.distinct;
    return rs;
}

/// Solvability per the criterion theorem, with the matching case label and
/// the scaling exponents k that witness it.
inline SolvabilityReport solvable(const CubicEquation& eq, Domain dom) {
    SolvabilityReport rep;
    const Prime p = eq.prime;
    const std::uint64_t pv = p.value();
    if (eq.a_zero || eq.b_zero) {
        auto bc = detail::ab_zero_counts(eq, dom);
        rep.solvable = bc.mult > 0;
        rep.branch = std::string("ab-zero(") + bc.tag + ")";
        return rep;
    }
    const long la = eq.log_norm_a, lb = eq.log_norm_b;
    const long A3 = 3 * la, B2 = 2 * lb;
    auto seed_linear = [&]() {
        return static_cast<std::uint32_t>(
            mul_mod(eq.b0, detail::mod_inverse_word(eq.a0, pv), pv));
    };
    switch (dom) {
        case Domain::Units:
            if (la < 0 && lb == 0 && detail::cube_residue(eq.b0, p)) {
                rep = {true, "Thm3.2-I.1", {}, qth_roots_fp(FpElement(eq.b0, p), 3).front()};
            } else if (lb < 0 && la == 0 &&
                       is_quadratic_residue(detail::neg_mod(eq.a0, p), p)) {
                rep = {true, "Thm3.2-I.2", {}, sqrt_mod(detail::neg_mod(eq.a0, p), p)};
            } else if (la == 0 && lb == 0 && detail::recurrence_test(eq)) {
                rep = {true, "Thm3.2-I.3", {}, std::nullopt};
                for (const auto& r : fp_cubic_classify(FpElement(eq.a0, p), FpElement(eq.b0, p)).roots)
                    if (r.multiplicity == 1) { rep.seed = r.value.value; break; }
            } else if (la == lb && la > 0) {
                rep = {true, "Thm3.2-I.4", {}, seed_linear()};
            } else {
                rep.branch = "Thm3.2-I-none";
            }
            break;
        case Domain::Integers:
            if (A3 < B2 && lb <= 0 && lb % 3 == 0 && detail::cube_residue(eq.b0, p)) {
                rep = {true, "Thm3.2-II.1", {-lb / 3},
                       qth_roots_fp(FpElement(eq.b0, p), 3).front()};
            } else if (A3 == B2 && lb <= 0 && detail::recurrence_test(eq)) {
                rep = {true, "Thm3.2-II.2", {-la / 2}, std::nullopt};
            } else if (A3 > B2 && lb <= la) {
                rep = {true, "Thm3.2-II.3", {la - lb}, seed_linear()};
                if (la % 2 == 0 && la <= 0 &&
                    is_quadratic_residue(detail::neg_mod(eq.a0, p), p))
                    rep.scaling_exponents.push_back(-la / 2);
            } else {
                rep.branch = "Thm3.2-II-none";
            }
            break;
        case Domain::Field:
            if (A3 < B2 && lb % 3 == 0 && detail::cube_residue(eq.b0, p)) {
                rep = {true, "Thm3.2-III.1", {-lb / 3},
                       qth_roots_fp(FpElement(eq.b0, p), 3).front()};
            } else if (A3 == B2 && detail::recurrence_test(eq)) {
                rep = {true, "Thm3.2-III.2", {-la / 2}, std::nullopt};
            } else if (A3 > B2) {
                rep = {true, "Thm3.2-III.3", {la - lb}, seed_linear()};
                if (la % 2 == 0 && is_quadratic_residue(detail::neg_mod(eq.a0, p), p))
                    rep.scaling_exponents.push_back(-la / 2);
            } else {
                rep.branch = "Thm3.2-III-none";
            }
            break;
    }
    return rep;
}

namespace detail {

/// Roots of y^3 + A y = B lying in Zp* (|A|, |B| normalized by the caller's
/// scaling x = p^k y; k and the deep-branch level m only widen precision).
inline std::vector<PadicRoot> units_roots(Prime p, const Rational& A, const Rational& B,
                                          long N, long k) {
    std::vector<PadicRoot> out;
    const std::uint64_t pv = p.value();
    const long la = -*valuation_of(A, p), lb = -*valuation_of(B, p);
    const std::uint32_t A0 = leading_digit(A, p), B0 = leading_digit(B, p);
    const long guard = 10;

    if (la < 0 && lb == 0) {
        auto seeds = qth_roots_fp(FpElement(B0, p), 3);
        if (seeds.empty()) return out;
        long M = digits_needed(N, 3 * k);
        auto f = make_integer_polynomial(p, {-B, A, Rational(0), Rational(1)}, M + guard);
        for (auto s : seeds) out.push_back({hensel_lift(f, {BigInt(s), 0}, M), 1});
    } else if (lb < 0 && la == 0) {
        std::uint32_t na = neg_mod(A0, p);
        if (!is_quadratic_residue(na, p)) return out;
        long M = digits_needed(N, 3 * k);
        auto f = make_integer_polynomial(p, {-B, A, Rational(0), Rational(1)}, M + guard);
        std::uint32_t r = sqrt_mod(na, p);
        out.push_back({hensel_lift(f, {BigInt(r), 0}, M), 1});
        out.push_back({hensel_lift(f, {BigInt(pv - r), 0}, M), 1});
    } else if (la == 0 && lb == 0) {
        auto rep = fp_cubic_count(FpElement(A0, p), FpElement(B0, p));
        if (rep.count == 0) return out;
        long M = digits_needed(N, 3 * k);
        if (rep.Dbar.value != 0) {
            auto f = make_integer_polynomial(p, {-B, A, Rational(0), Rational(1)}, M + guard);
            for (auto s : fp_cubic_distinct_roots(A0, B0, p))
                out.push_back({hensel_lift(f, {BigInt(s), 0}, M), 1});
        } else {
            // Residue double root. The exact D decides whether it splits.
            Rational D = -4 * A * A * A - 27 * B * B;
            if (D == 0) {
                out.push_back({expand(3 * B / (2 * A), p, M), 2});
                out.push_back({expand(-3 * B / A, p, M), 1});
            } else {
                long kD = *valuation_of(D, p); // >= 1 since D0 = 0
                std::uint32_t simple_seed = static_cast<std::uint32_t>(mul_mod(
                    mul_mod(pv - 3 % pv, B0, pv), mod_inverse_word(A0, pv), pv));
                auto f = make_integer_polynomial(p, {-B, A, Rational(0), Rational(1)},
                                                 M + kD + guard);
                PadicNumber xbar = hensel_lift(f, {BigInt(simple_seed), 0}, M + kD);
                out.push_back({xbar.truncated(M), 1});
                if (kD % 2 == 0 && is_quadratic_residue(leading_digit(D, p), p)) {
                    // remaining factor x^2 + xbar x + (xbar^2 + A), completed square
                    PadicNumber xh = xbar * expand(Rational(1, 2), p, M + kD);
                    PadicNumber t = -(expand(Rational(3), p, M + kD) * xh * xh +
                                      expand(A, p, M + kD));
                    auto sq = padic_nth_root(t, 2);
                    if (sq.size() != 2)
                        throw std::logic_error("cubic: quadratic factor lost its square root");
                    for (const auto& s : sq) out.push_back({(s - xh).truncated(M), 1});
                }
            }
        }
    } else if (la == lb && la > 0) {
        long m = la;
        long M = digits_needed(N, 3 * k - m);
        auto g = make_integer_polynomial(
            p, {-unit_part(B, p), unit_part(A, p), Rational(0), p_power_rational(p, m)},
            M + guard);
        std::uint32_t seed = static_cast<std::uint32_t>(
            mul_mod(B0, mod_inverse_word(A0, pv), pv));
        out.push_back({hensel_lift(g, {BigInt(seed), 0}, M), 1});
    }
    return out;
}

/// The admissible scaling exponents x = p^k y for the domain.
inline std::vector<long> scaling_candidates(const CubicEquation& eq, Domain dom) {
    const long la = eq.log_norm_a, lb = eq.log_norm_b;
    const long A3 = 3 * la, B2 = 2 * lb;
    const bool zp = dom == Domain::Integers;
    std::vector<long> ks;
    if (A3 < B2) {
        if (lb % 3 == 0 && (!zp || -lb / 3 >= 0)) ks.push_back(-lb / 3);
    } else if (A3 == B2) {
        if (!zp || -la / 2 >= 0) ks.push_back(-la / 2); // 3 la = 2 lb forces la even
    } else {
        if (!zp || la - lb >= 0) ks.push_back(la - lb);
        if (la % 2 == 0 && (!zp || -la / 2 >= 0)) ks.push_back(-la / 2);
    }
    return ks;
}

inline void sort_roots(std::vector<PadicRoot>& roots) {
    std::sort(roots.begin(), roots.end(), [](const PadicRoot& x, const PadicRoot& y) {
        long vx = x.value.is_value() ? x.value.valuation() : LONG_MAX;
        long vy = y.value.is_value() ? y.value.valuation() : LONG_MAX;
        if (vx != vy) return vx < vy;
        return x.value.is_value() && y.value.is_value() &&
               x.value.digits() < y.value.digits();
    });
}

inline RootSet finalize_roots(std::vector<PadicRoot> roots, std::string branch) {
    sort_roots(roots);
    // Dedupe by p-adic distance: collected roots from different scalings have
    // distinct valuations, so this only collapses genuine re-discoveries.
    std::vector<PadicRoot> kept;
    for (auto& r : roots) {
        bool dup = false;
        if (!kept.empty() && r.value.is_value() && kept.back().value.is_value() &&
            r.value.valuation() == kept.back().value.valuation()) {
            long window = std::min(r.value.precision(), kept.back().value.precision());
            dup = std::equal(r.value.digits().begin(), r.value.digits().begin() + window,
                             kept.back().value.digits().begin());
        }
        if (dup) kept.back().multiplicity += r.multiplicity;
        else kept.push_back(std::move(r));
    }
    RootSet rs;
    rs.branch = std::move(branch);
    for (const auto& r : kept) rs.count_with_multiplicity += r.multiplicity;
    rs.count_distinct = static_cast<int>(kept.size());
    rs.roots = std::move(kept);
    return rs;
}

} // namespace detail

/// Roots for a = 0 or b = 0: x^3 = b resp. x (x^2 + a) = 0, filtered by
/// domain membership.
inline RootSet ab_zero_solve(const CubicEquation& eq, Domain dom, long N) {
    if (!eq.a_zero && !eq.b_zero)
        throw std::invalid_argument("ab_zero_solve: both coefficients are nonzero");
    const Prime p = eq.prime;
    std::vector<PadicRoot> roots;
    std::string tag;
    if (eq.a_zero && eq.b_zero) {
        tag = "a=b=0";
        if (dom != Domain::Units) roots.push_back({PadicNumber::zero(p), 3});
    } else if (eq.a_zero) {
        tag = "a=0";
        long vb = -eq.log_norm_b;
        if (vb % 3 == 0) {
            long vroot = vb / 3;
            bool in_domain = dom == Domain::Field ||
                             (vroot >= 0 && (dom == Domain::Integers || vroot == 0));
            if (in_domain)
                for (auto& r : qth_root_qp(eq.b, 3, p, detail::digits_needed(N, 3 * vroot)))
                    roots.push_back({r, 1});
        }
    } else {
        tag = "b=0";
        if (dom != Domain::Units) roots.push_back({PadicNumber::zero(p), 1});
        long va = -eq.log_norm_a;
        if (va % 2 == 0) {
            long vroot = va / 2;
            bool in_domain = dom == Domain::Field ||
                             (vroot >= 0 && (dom == Domain::Integers || vroot == 0));
            if (in_domain)
                for (auto& r : qth_root_qp(-eq.a, 2, p, detail::digits_needed(N, 3 * vroot)))
                    roots.push_back({r, 1});
        }
    }
    return detail::finalize_roots(std::move(roots), "ab-zero(" + tag + ")");
}

/// All roots in the domain to (at least) N digits, with multiplicities.
/// Construction is by branch: scale x = p^k y, seed in F_p, Hensel-lift; the
/// D = 0 stratum yields the exact rational roots 3b/(2a) and -3b/a.
inline RootSet roots(const CubicEquation& eq, Domain dom, long N) {
    if (N < 1) throw std::invalid_argument("roots: precision must be >= 1");
    if (eq.a_zero || eq.b_zero) return ab_zero_solve(eq, dom, N);
    std::vector<PadicRoot> out;
    if (dom == Domain::Units) {
        out = detail::units_roots(eq.prime, eq.a, eq.b, N, 0);
    } else {
        for (long k : detail::scaling_candidates(eq, dom)) {
            Rational A = eq.a * p_power_rational(eq.prime, -2 * k);
            Rational B = eq.b * p_power_rational(eq.prime, -3 * k);
            for (auto& r : detail::units_roots(eq.prime, A, B, N, k))
                out.push_back({r.value.with_valuation_shifted(k), r.multiplicity});
        }
    }
    return detail::finalize_roots(std::move(out), count(eq, dom).branch);
}

} // namespace padic
