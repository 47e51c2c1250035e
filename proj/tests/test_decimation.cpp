#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <vicsek/eigensolve.hpp>
#include <vicsek/spectral.hpp>

using namespace vicsek;
using boost::multiprecision::cpp_rational;

namespace {

// lim 15^m lambda_m, computed separately with 50-digit arithmetic.
const char* const kLambda2Oracle = "2.601810867103814864589049949442086406465";

struct Group {
    double value;
    int multiplicity;
};

void expect_spectrum(const DenseSpectrum& s, const std::vector<Group>& expected, double tol) {
    ASSERT_EQ(s.groups.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_NEAR(s.groups[i].value, expected[i].value, tol) << "group " << i;
        EXPECT_EQ(s.groups[i].multiplicity, expected[i].multiplicity) << "group " << i;
    }
}

}  // namespace

TEST(Decimation, PolynomialValues) {
    EXPECT_EQ(decimation_map(cpp_rational(1, 6)), cpp_rational(4, 3));
    EXPECT_EQ(decimation_map(cpp_rational(0)), 0);
    EXPECT_EQ(decimation_map(cpp_rational(1, 2)), cpp_rational(0));
    EXPECT_EQ(decimation_map(cpp_rational(5, 6)), cpp_rational(0));
    EXPECT_EQ(decimation_map(cpp_rational(1)), cpp_rational(3));
    EXPECT_EQ(f2(cpp_rational(1, 6)), 1);
    EXPECT_EQ(gamma_cubic(cpp_rational(0)), 4);
}

TEST(Decimation, CriticalPointsAreStationary) {
    const auto [lo, hi] = critical_points<double>();
    EXPECT_NEAR(decimation_map_derivative(lo), 0.0, 1e-13);
    EXPECT_NEAR(decimation_map_derivative(hi), 0.0, 1e-13);
    EXPECT_NEAR(lo, (8.0 - std::sqrt(19.0)) / 18.0, 1e-16);
    EXPECT_LT(lo, hi);
}

TEST(Decimation, BranchInverseRoundTrip) {
    for (int b = 1; b <= 3; ++b) {
        const auto [ylo, yhi] = branch_range<double>(b);
        const auto [xlo, xhi] = branch_interval<double>(b);
        for (int k = 0; k <= 200; ++k) {
            const double y = ylo + (yhi - ylo) * k / 200.0;
            const double x = branch_inverse(b, y);
            EXPECT_GE(x, xlo - 1e-15);
            EXPECT_LE(x, xhi + 1e-15);
            EXPECT_NEAR(decimation_map(x), y, 1e-13) << "branch " << b << " y " << y;
        }
    }
}

TEST(Decimation, BranchTwoIsDecreasing) {
    const auto [ylo, yhi] = branch_range<double>(2);
    double prev = branch_inverse(2, ylo);
    for (int k = 1; k <= 100; ++k) {
        const double x = branch_inverse(2, ylo + (yhi - ylo) * k / 100.0);
        EXPECT_LE(x, prev);
        prev = x;
    }
}

TEST(Decimation, BranchInverseOutOfRange) {
    EXPECT_THROW(branch_inverse(1, 5.0), domain_error);
    EXPECT_THROW(branch_inverse(2, -1.0), domain_error);
    EXPECT_THROW(branch_inverse(4, 0.5), domain_error);
}

TEST(Decimation, LambdaOneIsOneSixth) {
    EXPECT_NEAR(branch_inverse(1, 4.0 / 3.0), 1.0 / 6.0, 1e-16);
    EXPECT_EQ(branch_inverse(1, 0.0), 0.0);
    EXPECT_NEAR(branch_inverse(2, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(branch_inverse(3, 0.0), 5.0 / 6.0, 1e-15);
}

TEST(Decimation, LambdaSequenceIsDecreasingAndConverges) {
    const auto s = lambda_sequence<double>(20);
    ASSERT_EQ(s.levels(), 20);
    EXPECT_DOUBLE_EQ(s.lambdas[0], 4.0 / 3.0);
    for (int m = 1; m <= 20; ++m) {
        EXPECT_LT(s.lambdas[m], s.lambdas[m - 1]);
        EXPECT_NEAR(decimation_map(s.lambdas[m]), s.lambdas[m - 1], 1e-14 * s.lambdas[m - 1] + 1e-300);
    }
    const double oracle = std::stod(kLambda2Oracle);
    EXPECT_NEAR(s.limit_estimate(), oracle, 1e-12 * oracle);
    EXPECT_THROW(lambda_sequence<double>(0), domain_error);
}

TEST(Decimation, HighPrecisionLimitMatchesOracle) {
    const auto s = lambda2_limit<HighFloat>();
    EXPECT_TRUE(s.converged);
    const HighFloat oracle(kLambda2Oracle);
    EXPECT_LT(abs(s.limit_estimate() - oracle), HighFloat("1e-38"));
    const auto d = lambda2_limit<double>();
    EXPECT_NEAR(d.limit_estimate(), static_cast<double>(oracle), 1e-13 * 2.6);
}

TEST(Decimation, CoefficientsAtZeroAndOneSixth) {
    const auto k0 = extension_coefficients_formula(cpp_rational(0));
    EXPECT_EQ(k0.a, 9);
    EXPECT_EQ(k0.b, 6);
    EXPECT_EQ(k0.c, 1);
    EXPECT_EQ(k0.d, 2);
    EXPECT_EQ(k0.gamma, cpp_rational(1, 12));
    const auto k = extension_coefficients_formula(cpp_rational(1, 6));
    EXPECT_EQ(k.gamma, cpp_rational(1, 2));
    EXPECT_EQ(k.alpha, cpp_rational(3, 2));
    EXPECT_EQ(k.beta, cpp_rational(5, 4));
    EXPECT_EQ(k.chi, cpp_rational(1, 2));
    EXPECT_EQ(k.delta, cpp_rational(3, 4));
    // Double path agrees.
    const auto kd = coefficients(1.0 / 6.0);
    EXPECT_NEAR(kd.gamma, 0.5, 1e-15);
}

TEST(Decimation, ForbiddenValues) {
    try {
        coefficients(0.5);
        FAIL() << "expected forbidden_eigenvalue";
    } catch (const forbidden_eigenvalue& e) {
        EXPECT_EQ(e.root(), "1/2");
    }
    EXPECT_THROW(coefficients((7.0 - std::sqrt(17.0)) / 12.0), forbidden_eigenvalue);
    EXPECT_THROW(coefficients((7.0 + std::sqrt(17.0)) / 12.0), forbidden_eigenvalue);
    EXPECT_NO_THROW(coefficients(0.0));
    EXPECT_NO_THROW(coefficients(4.0 / 3.0));
    EXPECT_TRUE(is_forbidden(4.0 / 3.0));
    EXPECT_FALSE(is_forbidden(1.0 / 6.0));
    for (const auto& f : forbidden_values())
        if (!f.rational) {
            EXPECT_NEAR(f2(f.value), 0.0, 1e-14) << f.name;
        }
}

TEST(Decimation, DenseSpectrumLevelZero) {
    const auto s = dense_eigensolve(build_graph(0));
    expect_spectrum(s, {{0.0, 1}, {4.0 / 3.0, 3}}, 1e-12);
}

TEST(Decimation, DenseSpectrumLevelOne) {
    const auto s = dense_eigensolve(build_graph(1));
    expect_spectrum(s, {{0.0, 1}, {1.0 / 6.0, 3}, {5.0 / 6.0, 1}, {4.0 / 3.0, 11}}, 1e-10);
    EXPECT_GE(s.multiplicity_of(1.0 / 6.0, 1e-8), 3);
}

TEST(Decimation, DenseSpectrumLevelTwo) {
    const auto s = dense_eigensolve(build_graph(2));
    expect_spectrum(s,
                    {{0.0, 1},
                     {0.011533, 3},
                     {0.070704, 1},
                     {1.0 / 6.0, 11},
                     {0.364547, 1},
                     {0.47284, 3},
                     {5.0 / 6.0, 1},
                     {0.848961, 3},
                     {0.898082, 1},
                     {4.0 / 3.0, 51}},
                    5e-6);
}

TEST(Decimation, LevelSpectrumMatchesDense) {
    for (int m = 0; m <= 3; ++m) {
        const auto dense = dense_eigensolve(build_graph(m));
        const auto predicted = level_spectrum(m);
        int total = 0;
        for (const auto& e : predicted) {
            total += e.multiplicity;
            EXPECT_GE(dense.multiplicity_of(e.eigenvalue, 1e-9), e.multiplicity) << e.word.str();
        }
        EXPECT_EQ(total, static_cast<int>(dense.eigenvalues.size())) << "m=" << m;
    }
}

TEST(Decimation, FractalSpectrumHead) {
    const auto entries = enumerate_spectrum(5, 6);
    ASSERT_EQ(entries.size(), 5u);
    EXPECT_EQ(entries[0].eigenvalue, 0.0);
    EXPECT_NEAR(entries[1].eigenvalue, std::stod(kLambda2Oracle), 1e-11);
    EXPECT_EQ(entries[1].multiplicity, 3);
    for (std::size_t i = 1; i < entries.size(); ++i) EXPECT_LE(entries[i - 1].eigenvalue, entries[i].eigenvalue);
    bool eleven = false;
    for (const auto& e : enumerate_spectrum(40, 6))
        eleven |= e.word.series == Series::FourThirds && e.word.birth_level == 1 && e.multiplicity == 11;
    EXPECT_TRUE(eleven);
    EXPECT_THROW(enumerate_spectrum(0, 6), domain_error);
    EXPECT_THROW(enumerate_spectrum(10, 13), resource_limit);
    EXPECT_THROW(enumerate_spectrum(1000, 0), resource_limit);
}

TEST(Decimation, WordAdmissibility) {
    EXPECT_TRUE((SpectrumWord{Series::Zero, 0, {1, 1, 3, 2}}.admissible()));
    EXPECT_FALSE((SpectrumWord{Series::Zero, 0, {2}}.admissible()));
    EXPECT_TRUE((SpectrumWord{Series::FourThirds, 2, {1, 2}}.admissible()));
    EXPECT_FALSE((SpectrumWord{Series::FourThirds, 2, {3}}.admissible()));
    for (const auto& w : spectrum_words(4)) EXPECT_TRUE(w.admissible()) << w.str();
    EXPECT_EQ((SpectrumWord{Series::FourThirds, 2, {}}.multiplicity()), 51);
}
