#include <gtest/gtest.h>

#include <vicsek/identities.hpp>

using namespace vicsek;

TEST(Polynomial, Arithmetic) {
    const Polynomial L = Polynomial::variable();
    const Polynomial p = (L - Polynomial(1)) * (L + Polynomial(1));
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p, L * L - Polynomial(1));
    EXPECT_EQ(p(ExactRational(3)), 8);
    EXPECT_DOUBLE_EQ(p.evaluate(0.5), -0.75);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ((p - p).str(), "0");
    EXPECT_EQ(p.str(), "L^2 - 1");
}

TEST(RationalFunction, ClearedDifference) {
    const RationalFunction x(Polynomial::variable());
    const RationalFunction one(1);
    // 1/(x-1) - 1/(x+1) = 2/(x^2-1)
    const auto lhs = one / (x - one) - one / (x + one);
    const auto rhs = RationalFunction(2) / (x * x - one);
    EXPECT_TRUE(cleared_difference(lhs, rhs).is_zero());
    EXPECT_FALSE(cleared_difference(lhs, RationalFunction(3) / (x * x - one)).is_zero());
    EXPECT_THROW(one / RationalFunction(0), domain_error);
}

TEST(Identities, AllHoldExactly) {
    const auto cases = identity_cases();
    EXPECT_EQ(cases.size(), 12u);
    for (const auto& c : cases) {
        EXPECT_TRUE(cleared_difference(c.lhs, c.rhs).is_zero()) << c.name;
        const auto r = check_identity(c, 1000);
        EXPECT_TRUE(r.pass) << c.name << " " << r.extremes.dump();
    }
}

TEST(Identities, SymbolicCoefficientsMatchNumeric) {
    const auto s = symbolic_coefficients();
    for (double x : {0.01, 0.1, 1.0 / 6.0, 0.3}) {
        const auto k = extension_coefficients_formula(x);
        EXPECT_NEAR(s.alpha.evaluate(x), k.alpha, 1e-13);
        EXPECT_NEAR(s.beta.evaluate(x), k.beta, 1e-13);
        EXPECT_NEAR(s.chi.evaluate(x), k.chi, 1e-13);
        EXPECT_NEAR(s.delta.evaluate(x), k.delta, 1e-13);
        EXPECT_NEAR(s.R.evaluate(x), decimation_map(x), 1e-13);
    }
}

TEST(Identities, PerturbedIdentityIsRejected) {
    const auto s = symbolic_coefficients();
    const RationalFunction L = s.lambda, one(1), three(3);
    // beta - delta against a wrong right-hand side.
    IdentityCase wrong{"wrong", s.beta - s.delta, one / (three - RationalFunction(5) * L)};
    const auto r = check_identity(wrong, 100);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.witnesses.empty());
}

TEST(Identities, ValuesAtOneSixth) {
    const auto k = extension_coefficients_formula(ExactRational(1, 6));
    EXPECT_EQ(k.beta - k.delta, ExactRational(1, 2));
    EXPECT_EQ(ExactRational(1) - k.alpha - 3 * k.chi, ExactRational(-2));
    EXPECT_EQ(ExactRational(1) - k.beta - 3 * k.delta, ExactRational(-5, 2));
}

TEST(Inequalities, AllFamiliesHold) {
    const auto rep = check_inequalities(10000);
    for (const auto& r : rep.results) EXPECT_TRUE(r.pass) << r.name << " " << r.extremes.dump();
    EXPECT_EQ(rep.results.size(), 8u);
}

TEST(Inequalities, ChiQuadraticRange) {
    const auto rep = check_inequalities(10000);
    for (const auto& r : rep.results)
        if (r.name == "chi_quadratic_bounds") {
            EXPECT_GT(r.extremes["observed_min"].get<double>(), 0.08);
            EXPECT_LT(r.extremes["observed_max"].get<double>(), 0.22);
        }
}

TEST(Inequalities, ViolationProducesWitnesses) {
    InequalityCase c{"too_tight", [](double x) { return x; }, 0.0, 0.05, 0.0, 0.1, true};
    const auto r = check_inequality(c, 100);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.witnesses.empty());
    EXPECT_LE(r.witnesses.size(), kMaxInequalityWitnesses);
}

TEST(Inequalities, GridExcludesOpenEndpoints) {
    const auto g = uniform_grid(0.0, 1.0, 4, false);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_GT(g.front(), 0.0);
    EXPECT_LT(g.back(), 1.0);
    const auto h = uniform_grid(0.0, 1.0, 4, true);
    EXPECT_EQ(h.back(), 1.0);
    EXPECT_THROW(uniform_grid(0.0, 1.0, 1, true), domain_error);
}
