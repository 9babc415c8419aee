#include <set>

#include <gtest/gtest.h>

#include "testutil.hpp"

using namespace padic;

namespace {

void expect_root_near(const RootSet& rs, const Rational& expected, Prime p, long digits) {
    for (const auto& r : rs.roots) {
        if (r.value.is_exact_zero()) {
            if (expected == 0) return;
            continue;
        }
        Rational diff = r.value.to_rational() - expected;
        if (diff == 0 || *valuation_of(diff, p) >= digits) return;
    }
    FAIL() << "no root close to " << expected;
}

} // namespace

TEST(CubicEquation, Construction) {
    EXPECT_THROW(CubicEquation(Prime(2), Rational(1), Rational(1)), unsupported_error);
    EXPECT_THROW(CubicEquation(Prime(3), Rational(1), Rational(1)), unsupported_error);
    CubicEquation eq(Prime(5), Rational(25), Rational(250));
    EXPECT_EQ(eq.log_norm_a, -2);
    EXPECT_EQ(eq.log_norm_b, -3);
    EXPECT_EQ(eq.a0, 1u);
    EXPECT_EQ(eq.b0, 2u);
    EXPECT_EQ(eq.a_star, Rational(1));
    EXPECT_EQ(eq.b_star, Rational(2));
}

TEST(Discriminant, Examples) {
    // (x-1)^2 (x+2): a = -3, b = -2 gives D = 0 exactly
    auto d1 = discriminant_data(CubicEquation(Prime(5), Rational(-3), Rational(-2)));
    EXPECT_TRUE(d1.is_zero);
    EXPECT_EQ(d1.D, Rational(0));

    auto d2 = discriminant_data(CubicEquation(Prime(11), Rational(4), Rational(5)));
    EXPECT_EQ(d2.D, Rational(-931));
    EXPECT_EQ(d2.D0, static_cast<std::uint32_t>(((-931) % 11 + 11) % 11));
    EXPECT_EQ(d2.D_norm_log, 0);
    EXPECT_EQ(d2.u_pm2, 0u); // the 3-distinct-roots case

    auto d3 = discriminant_data(CubicEquation(Prime(7), Rational(1), Rational(1)));
    EXPECT_EQ(d3.D, Rational(-31));
    EXPECT_EQ(d3.D_norm_log, 0);
    EXPECT_EQ(d3.d0, static_cast<std::uint32_t>(((-31) % 7 + 7) % 7));

    EXPECT_THROW(discriminant_data(CubicEquation(Prime(5), Rational(0), Rational(1))),
                 std::invalid_argument);
}

TEST(Solvable, WorkedExamples) {
    for (std::uint64_t pv : {5ull, 7ull}) {
        Prime p(pv);
        Rational p2(pv * pv), twop3(2 * pv * pv * pv);
        CubicEquation eq(p, p2, twop3); // x^3 + p^2 x = 2 p^3
        EXPECT_FALSE(solvable(eq, Domain::Units).solvable);
        auto zp = solvable(eq, Domain::Integers);
        EXPECT_TRUE(zp.solvable);
        EXPECT_EQ(zp.branch, "Thm3.2-II.2"); // |a|^3 = |b|^2 here
        ASSERT_EQ(zp.scaling_exponents.size(), 1u);
        EXPECT_EQ(zp.scaling_exponents[0], 1);
    }
    {
        Prime p(5);
        CubicEquation eq(p, Rational(25), Rational(1 + 625, 125));
        EXPECT_FALSE(solvable(eq, Domain::Integers).solvable);
        auto qp = solvable(eq, Domain::Field);
        EXPECT_TRUE(qp.solvable);
        EXPECT_EQ(qp.branch, "Thm3.2-III.1");
        EXPECT_EQ(qp.scaling_exponents, std::vector<long>{-1});
    }
    {
        Prime p(7);
        CubicEquation eq(p, Rational(-3, 7), Rational(-4, 7));
        auto qp = solvable(eq, Domain::Field);
        EXPECT_TRUE(qp.solvable);
        EXPECT_EQ(qp.branch, "Thm3.2-III.3");
    }
}

TEST(Count, SpecExamples) {
    {
        auto rs = count(CubicEquation(Prime(5), Rational(-1), Rational(5)), Domain::Units);
        EXPECT_EQ(rs.count_with_multiplicity, 2);
        EXPECT_EQ(rs.branch, "Thm4.1-Zp*-sqrt(-a0)");
    }
    {
        auto rs = count(CubicEquation(Prime(5), Rational(-3), Rational(-2)), Domain::Units);
        EXPECT_EQ(rs.count_with_multiplicity, 3);
        EXPECT_EQ(rs.count_distinct, 2);
        EXPECT_EQ(rs.branch, "Thm4.1-Zp*-D=0");
    }
    {
        auto rs = count(CubicEquation(Prime(7), Rational(1), Rational(1)), Domain::Units);
        EXPECT_EQ(rs.count_with_multiplicity, 0);
    }
}

TEST(Roots, WorkedExamples) {
    for (std::uint64_t pv : {5ull, 7ull}) {
        Prime p(pv);
        CubicEquation eq(p, Rational(pv * pv), Rational(2 * pv * pv * pv));
        auto rs = roots(eq, Domain::Integers, 12);
        ASSERT_EQ(rs.roots.size(), 1u);
        EXPECT_EQ(rs.roots[0].value.to_rational(), Rational(pv)); // root x = p, exactly
        EXPECT_TRUE(roots(eq, Domain::Units, 12).roots.empty());
    }
    {
        Prime p(5);
        CubicEquation eq(p, Rational(25), Rational(626, 125));
        auto rs = roots(eq, Domain::Field, 12);
        ASSERT_EQ(rs.roots.size(), 1u);
        EXPECT_EQ(rs.roots[0].value.to_rational(), Rational(1, 5)); // root 1/p, exactly
        EXPECT_TRUE(roots(eq, Domain::Integers, 12).roots.empty());
    }
    for (std::uint64_t pv : {5ull, 7ull, 11ull}) {
        Prime p(pv);
        CubicEquation eq(p, Rational(-3, pv), Rational(3 - static_cast<long>(pv), pv));
        auto rs = roots(eq, Domain::Field, 12);
        ASSERT_EQ(rs.roots.size(), 1u);
        expect_root_near(rs, Rational(-1), p, 12);
    }
}

TEST(Roots, DoubleRootFamily) {
    // a = -3c^2, b = -2c^3 factors as (x - c)^2 (x + 2c)
    for (std::uint64_t pv : {5ull, 7ull, 11ull}) {
        Prime p(pv);
        for (Rational c : {Rational(1), Rational(2), Rational(3), Rational(1, 5)}) {
            if (pv == 5 && c == Rational(1, 5)) continue; // not integral there
            CubicEquation eq(p, -3 * c * c, -2 * c * c * c);
            auto rs = roots(eq, Domain::Integers, 16);
            EXPECT_EQ(rs.count_with_multiplicity, 3);
            EXPECT_EQ(rs.count_distinct, 2);
            expect_root_near(rs, c, p, 14);
            expect_root_near(rs, -2 * c, p, 14);
            bool saw_double = false;
            for (auto& r : rs.roots)
                if (r.multiplicity == 2) {
                    saw_double = true;
                    Rational diff = r.value.to_rational() - c; // double root is 3b/(2a) = c
                    EXPECT_TRUE(diff == 0 || *valuation_of(diff, p) >= 14);
                }
            EXPECT_TRUE(saw_double);
        }
    }
    // c = 1/5 over Q_5: roots exist only in the field domain
    {
        Prime p(5);
        Rational c(1, 5);
        CubicEquation eq(p, -3 * c * c, -2 * c * c * c);
        EXPECT_EQ(count(eq, Domain::Integers).count_with_multiplicity, 0);
        auto rs = roots(eq, Domain::Field, 16);
        EXPECT_EQ(rs.count_with_multiplicity, 3);
        EXPECT_EQ(rs.count_distinct, 2);
        expect_root_near(rs, c, p, 12);
        expect_root_near(rs, -2 * c, p, 12);
    }
}

TEST(Roots, QuadraticFactorSplit) {
    // |a| = |b| = 1, Dbar = 0 mod 5, D = -62100 has ord 2 and square unit:
    // one residue root splits into two close 5-adic roots.
    Prime p(5);
    CubicEquation eq(p, Rational(-3), Rational(48));
    auto dd = discriminant_data(eq);
    EXPECT_FALSE(dd.is_zero);
    EXPECT_EQ(dd.D, Rational(-62100));
    EXPECT_EQ(dd.D_norm_log, -2);
    auto rs = roots(eq, Domain::Units, 24);
    EXPECT_EQ(rs.count_with_multiplicity, 3);
    EXPECT_EQ(rs.count_distinct, 3);
    EXPECT_EQ(rs.branch, "Thm4.1-Zp*-sqrt(d0)");
    int near_one = 0, near_three = 0;
    for (auto& r : rs.roots) {
        EXPECT_TRUE(testutil::residual_at_least(eq.a, eq.b, r.value, 22));
        if (r.value.digits()[0] == 1) ++near_one;
        if (r.value.digits()[0] == 3) ++near_three;
    }
    EXPECT_EQ(near_one, 2);
    EXPECT_EQ(near_three, 1);
    // the two close roots are still separated well inside the window
    std::vector<PadicNumber> close;
    for (auto& r : rs.roots)
        if (r.value.digits()[0] == 1) close.push_back(r.value);
    auto d = testutil::distance_valuation(close[0], close[1]);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, 1); // separation at ord(D)/2
    // non-residue and odd-ord cousins stay single
    EXPECT_EQ(count(CubicEquation(p, Rational(-3), Rational(23)), Domain::Units)
                  .count_with_multiplicity, 1);
    auto odd = count(CubicEquation(p, Rational(-3), Rational(123)), Domain::Units);
    EXPECT_EQ(odd.count_with_multiplicity, 1);
    EXPECT_EQ(odd.branch, "Thm4.1-Zp*-oddlogD");
}

TEST(Roots, ThreeDistinctResidueRoots) {
    Prime p(11);
    CubicEquation eq(p, Rational(4), Rational(5));
    auto rs = roots(eq, Domain::Units, 12);
    EXPECT_EQ(rs.branch, "Thm4.1-Zp*-u=0");
    ASSERT_EQ(rs.roots.size(), 3u);
    std::set<std::uint32_t> leads;
    for (auto& r : rs.roots) leads.insert(r.value.digits()[0]);
    EXPECT_EQ(leads, (std::set<std::uint32_t>{1, 2, 8}));
}

TEST(Roots, DeepLinearBranch) {
    Prime p(7);
    CubicEquation eq(p, Rational(3, 7), Rational(5, 7));
    auto rs = roots(eq, Domain::Units, 12);
    ASSERT_EQ(rs.roots.size(), 1u);
    EXPECT_EQ(rs.roots[0].value.digits()[0], 4u); // 5/3 mod 7
    EXPECT_TRUE(testutil::residual_at_least(eq.a, eq.b, rs.roots[0].value, 10));
}

TEST(Roots, TwoScalingsGiveThreeIntegerRoots) {
    // |b| < |a| = 1 with -a0 a QR: k = 0 contributes two unit roots and
    // k = log|a|-log|b| = 1 one deeper root.
    Prime p(5);
    CubicEquation eq(p, Rational(-1), Rational(5));
    EXPECT_EQ(count(eq, Domain::Units).count_with_multiplicity, 2);
    auto rs = roots(eq, Domain::Integers, 16);
    ASSERT_EQ(rs.roots.size(), 3u);
    EXPECT_EQ(rs.count_with_multiplicity, 3);
    std::multiset<long> vals;
    for (auto& r : rs.roots) {
        vals.insert(r.value.valuation());
        EXPECT_TRUE(testutil::residual_at_least(eq.a, eq.b, r.value, 14));
    }
    EXPECT_EQ(vals, (std::multiset<long>{0, 0, 1}));
}

TEST(AbZero, Examples) {
    Prime p5(5), p7(7);
    // x^3 = p: unsolvable everywhere
    CubicEquation pure(p5, Rational(0), Rational(5));
    for (Domain d : {Domain::Units, Domain::Integers, Domain::Field})
        EXPECT_TRUE(roots(pure, d, 8).roots.empty());
    // x^3 - 4x = 0 over Z5*: exactly ±2
    CubicEquation sq(p5, Rational(-4), Rational(0));
    auto rs = ab_zero_solve(sq, Domain::Units, 8);
    ASSERT_EQ(rs.roots.size(), 2u);
    EXPECT_EQ(rs.roots[0].value.to_rational(), Rational(2));
    auto zp = ab_zero_solve(sq, Domain::Integers, 8);
    EXPECT_EQ(zp.count_with_multiplicity, 3); // 0 joins
    // cube roots of unity over Z7*
    CubicEquation unity(p7, Rational(0), Rational(1));
    auto ru = roots(unity, Domain::Units, 8);
    ASSERT_EQ(ru.roots.size(), 3u);
    std::set<std::uint32_t> leads;
    for (auto& r : ru.roots) leads.insert(r.value.digits()[0]);
    EXPECT_EQ(leads, (std::set<std::uint32_t>{1, 2, 4}));
    // both zero: triple root 0
    CubicEquation zero(p5, Rational(0), Rational(0));
    auto rz = roots(zero, Domain::Integers, 8);
    ASSERT_EQ(rz.roots.size(), 1u);
    EXPECT_TRUE(rz.roots[0].value.is_exact_zero());
    EXPECT_EQ(rz.count_with_multiplicity, 3);
    EXPECT_EQ(rz.count_distinct, 1);
    EXPECT_TRUE(roots(zero, Domain::Units, 8).roots.empty());
}

TEST(Cubic, ScalingCorrespondence) {
    testutil::RandomRational gen(21);
    Prime p(7);
    for (int i = 0; i < 40; ++i) {
        Rational a = gen.next(p, -3, 3), b = gen.next(p, -3, 3);
        CubicEquation eq(p, a, b);
        auto rs = roots(eq, Domain::Field, 16);
        for (auto& r : rs.roots) {
            long k = r.value.valuation();
            Rational A = a * p_power_rational(p, -2 * k);
            Rational B = b * p_power_rational(p, -3 * k);
            PadicNumber y = r.value.with_valuation_shifted(-k);
            EXPECT_EQ(y.valuation(), 0);
            Rational yr = y.to_rational();
            // f(x) = p^{3k} (y^3 + A y - B), so the scaled residual carries
            // the bound shifted by 3k
            Rational res = yr * yr * yr + A * yr - B;
            if (res != 0)
                EXPECT_GE(*valuation_of(res, p), 16 - 2 - 3 * k);
        }
    }
}

TEST(Cubic, NecessaryNormConditions) {
    // whenever a units root exists, (|a|, |b|) sits in one of the three
    // admissible configurations
    testutil::RandomRational gen(22);
    Prime p(5);
    for (int i = 0; i < 300; ++i) {
        Rational a = gen.next(p, -3, 3), b = gen.next(p, -3, 3);
        CubicEquation eq(p, a, b);
        if (!solvable(eq, Domain::Units).solvable) continue;
        long la = eq.log_norm_a, lb = eq.log_norm_b;
        bool ok = (la < 0 && lb == 0) || (lb < 0 && la == 0) || (la == lb && la >= 0);
        EXPECT_TRUE(ok) << "a=" << a << " b=" << b;
    }
}

TEST(Cubic, ConsistencyTriangleAndOracleMiniGrid) {
    Prime p(5);
    for (long alpha = -2; alpha <= 2; ++alpha)
        for (long beta = -2; beta <= 2; ++beta)
            for (std::uint32_t ua = 1; ua < 5; ++ua)
                for (std::uint32_t ub = 1; ub < 5; ++ub) {
                    CubicEquation eq(p, Rational(ua) * p_power_rational(p, alpha),
                                     Rational(ub) * p_power_rational(p, beta));
                    for (Domain dom : {Domain::Units, Domain::Integers, Domain::Field}) {
                        auto sv = solvable(eq, dom);
                        auto ct = count(eq, dom);
                        auto rt = roots(eq, dom, 12);
                        EXPECT_EQ(sv.solvable, ct.count_with_multiplicity > 0);
                        EXPECT_EQ(sv.solvable, !rt.roots.empty());
                        EXPECT_EQ(ct.count_with_multiplicity, rt.count_with_multiplicity)
                            << "a=" << eq.a << " b=" << eq.b << " dom=" << domain_name(dom);
                        EXPECT_EQ(ct.count_distinct, rt.count_distinct);
                        // membership and residuals
                        for (auto& r : rt.roots) {
                            if (dom == Domain::Units) EXPECT_EQ(r.value.valuation(), 0);
                            if (dom == Domain::Integers) EXPECT_GE(r.value.valuation(), 0);
                            EXPECT_TRUE(testutil::residual_at_least(eq.a, eq.b, r.value, 10));
                        }
                        // pairwise distinct
                        for (std::size_t i = 0; i + 1 < rt.roots.size(); ++i)
                            for (std::size_t j = i + 1; j < rt.roots.size(); ++j) {
                                auto d = testutil::distance_valuation(rt.roots[i].value,
                                                                      rt.roots[j].value);
                                EXPECT_TRUE(d.has_value());
                            }
                        OracleVerdict ov = dom == Domain::Field
                                               ? qp_oracle_auto(eq)
                                               : zp_oracle_auto(eq, 8, dom == Domain::Units);
                        EXPECT_EQ(ct.count_distinct, ov.count)
                            << "a=" << eq.a << " b=" << eq.b << " dom=" << domain_name(dom);
                        EXPECT_EQ(ct.count_with_multiplicity, ov.count_with_multiplicity);
                    }
                    // domain monotonicity
                    EXPECT_LE(count(eq, Domain::Units).count_distinct,
                              count(eq, Domain::Integers).count_distinct);
                    EXPECT_LE(count(eq, Domain::Integers).count_distinct,
                              count(eq, Domain::Field).count_distinct);
                }
}

TEST(Cubic, LargePrimePipeline) {
    // above the exhaustive-search threshold the F_p seeds come from the
    // gcd/splitting path; verify the full pipeline by residuals only
    testutil::RandomRational gen(24);
    for (std::uint64_t pv : {10007ull, 786433ull}) {
        Prime p(pv);
        for (int i = 0; i < 6; ++i) {
            Rational a = gen.next(p, -2, 2), b = gen.next(p, -2, 2);
            CubicEquation eq(p, a, b);
            for (Domain dom : {Domain::Units, Domain::Integers, Domain::Field}) {
                auto ct = count(eq, dom);
                auto rt = roots(eq, dom, 12);
                EXPECT_EQ(ct.count_with_multiplicity, rt.count_with_multiplicity);
                for (auto& r : rt.roots)
                    EXPECT_TRUE(testutil::residual_at_least(a, b, r.value, 10));
            }
            auto card = cardano_applicable(eq);
            if (card.applicable) {
                auto rep = cardano_solve(eq, 12);
                EXPECT_TRUE(testutil::residual_at_least(a, b, *rep.root, 10));
            }
        }
    }
}

TEST(Cubic, SoakAtPrimesBeyondTheGrid) {
    // the acceptance grids stop at p = 13; spot-check prime independence
    testutil::RandomRational gen(25);
    for (std::uint64_t pv : {17ull, 19ull, 23ull}) {
        Prime p(pv);
        for (int i = 0; i < 40; ++i) {
            CubicEquation eq(p, gen.next(p, -3, 3), gen.next(p, -3, 3));
            for (Domain dom : {Domain::Units, Domain::Integers, Domain::Field}) {
                auto ct = count(eq, dom);
                OracleVerdict ov = dom == Domain::Field
                                       ? qp_oracle_auto(eq)
                                       : zp_oracle_auto(eq, 8, dom == Domain::Units);
                EXPECT_EQ(ct.count_distinct, ov.count)
                    << "p=" << pv << " a=" << eq.a << " b=" << eq.b
                    << " dom=" << domain_name(dom);
                EXPECT_EQ(ct.count_with_multiplicity, ov.count_with_multiplicity);
                EXPECT_EQ(solvable(eq, dom).solvable, ov.count > 0);
            }
        }
    }
}

TEST(Cubic, IntegerAndFieldCountsNeverTwo) {
    testutil::RandomRational gen(23);
    for (std::uint64_t pv : {5ull, 7ull}) {
        Prime p(pv);
        for (int i = 0; i < 200; ++i) {
            CubicEquation eq(p, gen.next(p, -3, 3), gen.next(p, -3, 3));
            for (Domain dom : {Domain::Integers, Domain::Field}) {
                int c = count(eq, dom).count_with_multiplicity;
                EXPECT_TRUE(c == 0 || c == 1 || c == 3) << c;
            }
        }
    }
}
