#pragma once

// Identities and inequalities satisfied by R, f_2 and the extension
// coefficients. Equalities are checked exactly as rational-function
// identities over Q and on a grid in double; inequalities on a grid.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "report.hpp"
#include "spectral.hpp"

namespace vicsek {

using ExactRational = boost::multiprecision::cpp_rational;

/// Polynomial in lambda with exact rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<ExactRational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(int constant) : c_{ExactRational(constant)} { trim(); }
    Polynomial(ExactRational constant) : c_{std::move(constant)} { trim(); }

    static Polynomial variable() { return Polynomial(std::vector<ExactRational>{0, 1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<ExactRational>& coefficients() const { return c_; }

    ExactRational operator()(const ExactRational& x) const {
        ExactRational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    double evaluate(double x) const {
        double r = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + static_cast<double>(*it);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<ExactRational> r(std::max(a.c_.size(), b.c_.size()), ExactRational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<ExactRational> r(a.c_.size() + b.c_.size() - 1, ExactRational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return (a - b).is_zero(); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!first) os << (c_[i] < 0 ? " - " : " + ");
            else if (c_[i] < 0) os << "-";
            const ExactRational mag = c_[i] < 0 ? ExactRational(-c_[i]) : c_[i];
            if (mag != 1 || i == 0) os << mag;
            if (i >= 1) os << (mag != 1 ? "*" : "") << "L";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<ExactRational> c_;
};

/// num / den with exact rational coefficients; no cancellation is attempted.
class RationalFunction {
public:
    RationalFunction(Polynomial num = {}, Polynomial den = Polynomial(1)) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw domain_error("rational function with zero denominator");
    }
    RationalFunction(int constant) : RationalFunction(Polynomial(constant)) {}

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    double evaluate(double x) const { return num_.evaluate(x) / den_.evaluate(x); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.num_.is_zero()) throw domain_error("division by the zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

    /// Numerator of a - b after clearing denominators; zero iff a == b identically.
    friend Polynomial cleared_difference(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ - b.num_ * a.den_;
    }

private:
    Polynomial num_;
    Polynomial den_;
};

/// The decimation polynomials and extension coefficients as exact rational functions.
struct SymbolicCoefficients {
    RationalFunction lambda, R, f2, one_minus_2l, five_minus_6l;
    RationalFunction a, b, c, d, gamma, alpha, beta, chi, delta;
};

inline SymbolicCoefficients symbolic_coefficients() {
    const Polynomial L = Polynomial::variable();
    SymbolicCoefficients s;
    s.lambda = RationalFunction(L);
    s.R = RationalFunction(((Polynomial(36) * L - Polynomial(48)) * L + Polynomial(15)) * L);
    s.f2 = RationalFunction((Polynomial(18) * L - Polynomial(21)) * L + Polynomial(4));
    s.one_minus_2l = RationalFunction(Polynomial(1) - Polynomial(2) * L);
    s.five_minus_6l = RationalFunction(Polynomial(5) - Polynomial(6) * L);
    s.a = RationalFunction((Polynomial(36) * L - Polynomial(42)) * L + Polynomial(9));
    s.b = RationalFunction(Polynomial(6) * ((Polynomial(3) * L - Polynomial(4)) * L + Polynomial(1)));
    s.c = RationalFunction(1);
    s.d = RationalFunction(Polynomial(2) - Polynomial(3) * L);
    const Polynomial cubic = ((Polynomial(-36) * L + Polynomial(60)) * L - Polynomial(29)) * L + Polynomial(4);
    s.gamma = RationalFunction(Polynomial(1), Polynomial(3) * cubic);
    s.alpha = s.gamma * s.a;
    s.beta = s.gamma * s.b;
    s.chi = s.gamma * s.c;
    s.delta = s.gamma * s.d;
    return s;
}

struct IdentityCase {
    std::string name;
    RationalFunction lhs;
    RationalFunction rhs;
    /// Grid domain for the floating check, avoiding forbidden values.
    double lo = 0.0;
    double hi = 1.0 / 6.0;
};

inline std::vector<IdentityCase> identity_cases() {
    const auto s = symbolic_coefficients();
    const RationalFunction L = s.lambda;
    const RationalFunction one(1), three(3);
    const RationalFunction denom = three * s.one_minus_2l * s.f2;
    return {
        {"R_factorization", s.R, three * L * s.one_minus_2l * s.five_minus_6l},
        {"R_minus_4_thirds", three * s.R - RationalFunction(4), (RationalFunction(6) * L - one) * s.f2},
        {"gamma_equals_chi", s.gamma, s.chi},
        {"gamma_factored", s.gamma, one / denom},
        {"one_plus_3alpha_minus_3chi", one + three * s.alpha - three * s.chi,
         (RationalFunction(2) * L - three) / (RationalFunction(2) * L - one)},
        {"one_plus_3beta_minus_3delta", one + three * s.beta - three * s.delta,
         (RationalFunction(2) * L - RationalFunction(2)) / (RationalFunction(2) * L - one)},
        {"one_minus_beta_minus_3delta", one - s.beta - three * s.delta,
         RationalFunction(18) * L * (L - one) * three * s.one_minus_2l / denom},
        {"one_minus_beta_minus_3delta_via_R", one - s.beta - three * s.delta,
         RationalFunction(18) * (L - one) * s.R / (denom * s.five_minus_6l)},
        {"one_minus_alpha_minus_3chi", one - s.alpha - three * s.chi,
         RationalFunction(-3) * L * s.five_minus_6l * three * s.one_minus_2l / denom},
        {"one_minus_alpha_minus_3chi_via_R", one - s.alpha - three * s.chi, RationalFunction(-3) * s.R / denom},
        {"beta_minus_delta", s.beta - s.delta, one / (three - RationalFunction(6) * L)},
        {"alpha_minus_one", s.alpha - one, three * (s.R - one) * s.chi},
    };
}

inline std::vector<double> uniform_grid(double lo, double hi, int n, bool include_hi) {
    if (n < 2) throw domain_error("grid size must be >= 2");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    const int steps = include_hi ? n : n + 1;
    for (int i = 1; i <= n; ++i) g.push_back(lo + (hi - lo) * i / steps);
    return g;
}

inline PropertyResult check_identity(const IdentityCase& c, int grid_size, double tol = 1e-12) {
    const Polynomial diff = cleared_difference(c.lhs, c.rhs);
    const bool exact = diff.is_zero();
    double worst = 0.0, worst_at = c.lo;
    for (double x : uniform_grid(c.lo, c.hi, grid_size, true)) {
        const double l = c.lhs.evaluate(x), r = c.rhs.evaluate(x);
        const double err = std::abs(l - r) / std::max(1.0, std::abs(r));
        if (err > worst) {
            worst = err;
            worst_at = x;
        }
    }
    std::vector<std::string> wit;
    if (!exact) wit.push_back("cleared difference " + diff.str());
    if (worst > tol) wit.push_back("lambda=" + std::to_string(worst_at) + " residual=" + std::to_string(worst));
    return {c.name, exact && worst <= tol, wit,
            {{"exact", exact}, {"grid_max_residual", worst}, {"grid_size", grid_size}}};
}

inline SuiteReport check_identities(int grid_size) {
    SuiteReport rep{"identities", {{"grid", grid_size}}, std::nullopt, {}};
    for (const auto& c : identity_cases()) rep.add(check_identity(c, grid_size));
    return rep;
}

/// One-sided endpoint distance added to every inequality grid.
inline constexpr double kEndpointRefinement = 1e-8;
inline constexpr std::size_t kMaxInequalityWitnesses = 100;

struct InequalityCase {
    std::string name;
    std::function<double(double)> value;
    double lower;  // strict bounds on value
    double upper;
    double lo;     // open at lo
    double hi;
    bool hi_closed;
};

inline std::vector<InequalityCase> inequality_cases(double lambda2) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double l1 = 1.0 / 6.0;
    auto k = [](double x) { return extension_coefficients_formula(x); };
    return {
        {"alpha_in_unit_interval", [=](double x) { return k(x).alpha; }, 0.0, 1.0, 0.0, lambda2, false},
        {"beta_in_unit_interval", [=](double x) { return k(x).beta; }, 0.0, 1.0, 0.0, lambda2, false},
        {"delta_in_unit_interval", [=](double x) { return k(x).delta; }, 0.0, 1.0, 0.0, l1, false},
        {"one_minus_alpha_minus_3chi_negative", [=](double x) { auto c = k(x); return 1.0 - c.alpha - 3.0 * c.chi; },
         -inf, 0.0, 0.0, l1, true},
        {"one_minus_beta_minus_3delta_negative", [=](double x) { auto c = k(x); return 1.0 - c.beta - 3.0 * c.delta; },
         -inf, 0.0, 0.0, l1, true},
        {"beta_exceeds_delta", [=](double x) { auto c = k(x); return c.beta - c.delta; }, 0.0, inf, 0.0, l1, false},
        {"alpha_exceeds_chi", [=](double x) { auto c = k(x); return c.alpha - c.chi; }, 0.0, inf, 0.0, l1, false},
        {"chi_quadratic_bounds",
         [=](double x) { return k(x).chi * (1.0 - 3.75 * x + 2.25 * x * x); }, 0.08, 0.22, 0.0, l1, true},
    };
}

inline PropertyResult check_inequality(const InequalityCase& c, int grid_size) {
    auto pts = uniform_grid(c.lo, c.hi, grid_size, c.hi_closed);
    pts.push_back(c.lo + kEndpointRefinement);
    pts.push_back(c.hi - kEndpointRefinement);
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    std::vector<std::string> wit;
    for (double x : pts) {
        const double v = c.value(x);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        if (!(v > c.lower && v < c.upper) && wit.size() < kMaxInequalityWitnesses)
            wit.push_back("lambda=" + std::to_string(x) + " value=" + std::to_string(v));
    }
    return {c.name, wit.empty(), wit,
            {{"observed_min", vmin}, {"observed_max", vmax}, {"domain", {c.lo, c.hi}}, {"points", pts.size()}}};
}

inline SuiteReport check_inequalities(int grid_size) {
    const double lambda2 = lambda_table(2)[2];
    SuiteReport rep{"inequalities", {{"grid", grid_size}, {"lambda2", lambda2}}, std::nullopt, {}};
    for (const auto& c : inequality_cases(lambda2)) rep.add(check_inequality(c, grid_size));
    return rep;
}

}  // namespace vicsek
