#pragma once

// Spectral decimation on VS2: the decimation map R, its three monotone branch
// inverses, the eigenvalue sequence along the first branch, the coefficients
// of the local extension matrix, and eigenvalue enumeration by branch words.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "error.hpp"

namespace vicsek {

/// Software float with 64 significant decimal digits.
using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<64>>;

enum class Precision { Double, High };

inline constexpr int kLaplacianRenormalization = 15;

// ---------------------------------------------------------------------------
// Decimation polynomials. Written against a generic field T so the same
// formulas evaluate in double, HighFloat and exact rational functions.

template <class T>
T f2(const T& x) {
    return (T(18) * x - T(21)) * x + T(4);
}

template <class T>
T g2(const T& x) {
    return T(6) * x - T(3);
}

template <class T>
T h2(const T& x) {
    return T(6) * x - T(5);
}

/// R(x) = 36x^3 - 48x^2 + 15x, Horner form.
template <class T>
T decimation_map(const T& x) {
    return ((T(36) * x - T(48)) * x + T(15)) * x;
}

template <class T>
T decimation_map_derivative(const T& x) {
    return (T(108) * x - T(96)) * x + T(15);
}

/// 4 - 29x + 60x^2 - 36x^3, the cubic whose reciprocal (over 3) is gamma.
template <class T>
T gamma_cubic(const T& x) {
    return ((T(-36) * x + T(60)) * x - T(29)) * x + T(4);
}

/// Critical points of R: (8 -+ sqrt 19)/18. They split [0,1] into the branches.
template <class T>
std::pair<T, T> critical_points() {
    using std::sqrt;
    const T s = sqrt(T(19));
    return {(T(8) - s) / T(18), (T(8) + s) / T(18)};
}

// ---------------------------------------------------------------------------
// Forbidden eigenvalues.

struct ForbiddenValue {
    std::string name;
    double value;
    bool rational;
    bool gamma_pole;  // singular point of the extension matrix
};

inline std::vector<ForbiddenValue> forbidden_values() {
    const double s17 = std::sqrt(17.0);
    return {
        {"0", 0.0, true, false},
        {"1/2", 0.5, true, true},
        {"4/3", 4.0 / 3.0, true, false},
        {"(7-sqrt17)/12", (7.0 - s17) / 12.0, false, true},
        {"(7+sqrt17)/12", (7.0 + s17) / 12.0, false, true},
    };
}

inline constexpr double kSurdMembershipRadius = 1e-14;

namespace detail {

inline bool matches_forbidden(double lambda, const ForbiddenValue& f) {
    if (f.rational) return lambda == f.value;
    return std::abs(lambda - f.value) <= kSurdMembershipRadius;
}

}  // namespace detail

/// Name of the forbidden value lambda equals, or empty when it is allowed.
inline std::string forbidden_match(double lambda) {
    for (const auto& f : forbidden_values())
        if (detail::matches_forbidden(lambda, f)) return f.name;
    return {};
}

inline bool is_forbidden(double lambda) { return !forbidden_match(lambda).empty(); }

// ---------------------------------------------------------------------------
// Extension matrix coefficients.

template <class T>
struct ExtensionCoefficients {
    T lambda;
    T a, b, c, d;
    T gamma;
    T alpha, beta, chi, delta;
};

/// Coefficients by formula, without the forbidden-value guard. Works for any
/// field T, including exact rational functions of lambda.
template <class T>
ExtensionCoefficients<T> extension_coefficients_formula(const T& lambda) {
    ExtensionCoefficients<T> k;
    k.lambda = lambda;
    k.a = (T(36) * lambda - T(42)) * lambda + T(9);
    k.b = T(6) * ((T(3) * lambda - T(4)) * lambda + T(1));
    k.c = T(1);
    k.d = T(2) - T(3) * lambda;
    k.gamma = T(1) / (T(3) * gamma_cubic(lambda));
    k.alpha = k.gamma * k.a;
    k.beta = k.gamma * k.b;
    k.chi = k.gamma * k.c;
    k.delta = k.gamma * k.d;
    return k;
}

/// Coefficients at lambda. Throws forbidden_eigenvalue at a pole of gamma
/// (1/2 and the roots of f2); 0 and 4/3 are admissible arguments.
template <class T>
ExtensionCoefficients<T> coefficients(const T& lambda) {
    const double l = static_cast<double>(lambda);
    for (const auto& f : forbidden_values())
        if (f.gamma_pole && detail::matches_forbidden(l, f)) throw forbidden_eigenvalue(f.name, l);
    return extension_coefficients_formula(lambda);
}

// ---------------------------------------------------------------------------
// Branch inverses.

template <class T>
struct SolverTolerance {
    static T residual() { return T(1e-14); }
    static int max_iterations() { return 200; }
};

template <>
struct SolverTolerance<HighFloat> {
    static HighFloat residual() { return HighFloat("1e-60"); }
    static int max_iterations() { return 600; }
};

/// Domain interval of branch b (1, 2 or 3).
template <class T>
std::pair<T, T> branch_interval(int branch) {
    const auto [lo, hi] = critical_points<T>();
    switch (branch) {
        case 1: return {T(0), lo};
        case 2: return {lo, hi};
        case 3: return {hi, T(1)};
        default: throw domain_error("branch must be 1, 2 or 3");
    }
}

/// Range [min, max] of R over the branch interval.
template <class T>
std::pair<T, T> branch_range(int branch) {
    const auto [lo, hi] = branch_interval<T>(branch);
    T ylo = decimation_map(lo), yhi = decimation_map(hi);
    if (ylo > yhi) std::swap(ylo, yhi);
    return {ylo, yhi};
}

namespace detail {

/// Newton steps past convergence while the residual keeps shrinking.
template <class T>
T polish(T x, T r, T dr, const T& y, const T& lo, const T& hi) {
    using std::abs;
    for (int k = 0; k < 3 && dr != T(0); ++k) {
        const T next = x - r / dr;
        if (next < lo || next > hi) break;
        const T rn = decimation_map(next) - y;
        if (!(abs(rn) < abs(r))) break;
        x = next;
        r = rn;
        dr = decimation_map_derivative(x);
    }
    return x;
}

}  // namespace detail

/// The unique x in the closed interval of `branch` with R(x) = y.
///
/// Bracketed Newton iteration with bisection fallback. Converged when
/// |R(x) - y| <= tol * max(|y|, |x R'(x)|); the scale keeps the test relative
/// for the tiny y that occur deep in the eigenvalue sequence.
template <class T>
T branch_inverse(int branch, const T& y) {
    using std::abs;
    const auto [lo, hi] = branch_interval<T>(branch);
    const auto [ymin, ymax] = branch_range<T>(branch);
    const T slack = T(16) * std::numeric_limits<T>::epsilon() * (abs(ymax) + T(1));
    if (y < ymin - slack || y > ymax + slack)
        throw domain_error("y = " + std::to_string(static_cast<double>(y)) + " outside the range of branch " +
                           std::to_string(branch));

    // Orientation: R increasing on branches 1 and 3, decreasing on branch 2.
    const bool increasing = branch != 2;
    if (y <= ymin) return increasing ? lo : hi;
    if (y >= ymax) return increasing ? hi : lo;
    if (branch == 1 && y == T(0)) return T(0);

    T a = lo, b = hi;  // invariant: root in [a, b]
    T x = branch == 1 ? T(y / T(15)) : T((a + b) / T(2));
    if (x > b) x = b;
    const T tol = SolverTolerance<T>::residual();
    for (int it = 0; it < SolverTolerance<T>::max_iterations(); ++it) {
        const T r = decimation_map(x) - y;
        const T dr = decimation_map_derivative(x);
        T scale = abs(y);
        if (abs(x * dr) > scale) scale = abs(x * dr);
        if (abs(r) <= tol * scale) return detail::polish(x, r, dr, y, lo, hi);
        // Shrink the bracket using the sign of r.
        const bool below = increasing ? (r < T(0)) : (r > T(0));
        if (below)
            a = x;
        else
            b = x;
        T next = (a + b) / T(2);
        if (dr != T(0)) next = x - r / dr;
        if (!(next > a && next < b)) next = (a + b) / T(2);
        if (next == x) return x;
        x = next;
    }
    throw convergence_failure("branch " + std::to_string(branch) + " inverse did not converge for y = " +
                              std::to_string(static_cast<double>(y)));
}

// ---------------------------------------------------------------------------
// The eigenvalue sequence lambda_m = phi_1(lambda_{m-1}), lambda_0 = 4/3.

template <class T>
struct SpectralSequence {
    std::vector<T> lambdas;    // lambda_0 .. lambda_M
    std::vector<T> estimates;  // 15^m lambda_m
    std::vector<T> deltas;     // estimates[m] - estimates[m-1]; deltas[0] = 0
    bool converged = false;

    int levels() const { return static_cast<int>(lambdas.size()) - 1; }
    const T& limit_estimate() const { return estimates.back(); }
};

namespace detail {

template <class T>
void push_level(SpectralSequence<T>& s, const T& lambda, const T& power) {
    s.lambdas.push_back(lambda);
    s.estimates.push_back(power * lambda);
    s.deltas.push_back(s.estimates.size() > 1 ? s.estimates.back() - s.estimates[s.estimates.size() - 2] : T(0));
}

}  // namespace detail

/// lambda_0 .. lambda_M along branch 1, starting from 4/3.
template <class T>
SpectralSequence<T> lambda_sequence(int levels) {
    if (levels < 1) throw domain_error("lambda_sequence needs at least one level");
    SpectralSequence<T> s;
    T power = T(1);
    T lambda = T(4) / T(3);
    detail::push_level(s, lambda, power);
    for (int m = 1; m <= levels; ++m) {
        lambda = branch_inverse(1, lambda);
        power *= T(kLaplacianRenormalization);
        detail::push_level(s, lambda, power);
    }
    return s;
}

inline constexpr int kLimitLevelCap = 64;

/// Iterates until |15^{m+1} lambda_{m+1} - 15^m lambda_m| < 10 ulp of the estimate.
template <class T>
SpectralSequence<T> lambda2_limit(int level_cap = kLimitLevelCap) {
    using std::abs;
    SpectralSequence<T> s;
    T power = T(1);
    T lambda = T(4) / T(3);
    detail::push_level(s, lambda, power);
    for (int m = 1; m <= level_cap; ++m) {
        lambda = branch_inverse(1, lambda);
        power *= T(kLaplacianRenormalization);
        detail::push_level(s, lambda, power);
        if (abs(s.deltas.back()) < T(10) * std::numeric_limits<T>::epsilon() * abs(s.estimates.back())) {
            s.converged = true;
            break;
        }
    }
    if (!s.converged)
        throw convergence_failure("lambda2 estimates did not settle within " + std::to_string(level_cap) + " levels");
    return s;
}

/// Table of lambda_0..lambda_M in double, for the recursions and extensions.
inline std::vector<double> lambda_table(int levels) {
    std::vector<double> out;
    for (const auto& l : lambda_sequence<double>(std::max(levels, 1)).lambdas) out.push_back(l);
    out.resize(static_cast<std::size_t>(levels) + 1);
    return out;
}

/// lim 15^n phi_1^n(x), the tail of every eigenvalue word (all letters 1).
template <class T>
T branch1_tail_limit(T x, int level_cap = kLimitLevelCap) {
    using std::abs;
    if (x == T(0)) return T(0);
    T power = T(1);
    T prev = x;
    for (int n = 1; n <= level_cap; ++n) {
        x = branch_inverse(1, x);
        power *= T(kLaplacianRenormalization);
        const T est = power * x;
        if (abs(est - prev) < T(10) * std::numeric_limits<T>::epsilon() * abs(est)) return est;
        prev = est;
    }
    throw convergence_failure("branch-1 tail limit did not settle");
}

// ---------------------------------------------------------------------------
// Eigenvalue words.

enum class Series { Zero, FourThirds };

/// A Neumann eigenvalue named by its series, birth level and the finite
/// prefix of its branch word; the tail of 1s is implied.
struct SpectrumWord {
    Series series = Series::Zero;
    int birth_level = 0;
    std::vector<int> prefix;

    /// True when the word obeys the admissibility rules of its series.
    bool admissible() const {
        for (int l : prefix)
            if (l < 1 || l > 3) return false;
        if (series == Series::Zero) {
            auto it = std::find_if(prefix.begin(), prefix.end(), [](int l) { return l != 1; });
            return it == prefix.end() || *it == 3;
        }
        return prefix.empty() || prefix.front() == 1;
    }

    int event_level() const { return birth_level + static_cast<int>(prefix.size()); }

    int multiplicity() const {
        if (series == Series::Zero) return 1;
        int p = 1;
        for (int k = 0; k < birth_level; ++k) p *= 5;
        return 2 * p + 1;
    }

    std::string str() const {
        std::string s = series == Series::Zero ? "0" : "4/3@" + std::to_string(birth_level);
        s += ":";
        for (int l : prefix) s.push_back(static_cast<char>('0' + l));
        s += "(1)";
        return s;
    }
};

struct SpectrumEntry {
    double eigenvalue;
    int multiplicity;
    SpectrumWord word;
};

namespace detail {

template <class Fn>
void for_each_suffix(std::vector<int>& prefix, int remaining, Fn& fn) {
    // Emits prefix extended by every word over {1,2,3} of length <= remaining
    // whose last letter is not 1.
    for (int l = 1; l <= 3; ++l) {
        if (remaining <= 0) return;
        prefix.push_back(l);
        if (l != 1) fn(prefix);
        for_each_suffix(prefix, remaining - 1, fn);
        prefix.pop_back();
    }
}

inline double apply_branches(double x, const std::vector<int>& prefix) {
    for (int l : prefix) x = branch_inverse(l, x);
    return x;
}

}  // namespace detail

/// All admissible words whose last non-trivial event happens at level <= max_level.
inline std::vector<SpectrumWord> spectrum_words(int max_level) {
    std::vector<SpectrumWord> out;
    out.push_back({Series::Zero, 0, {}});
    for (int j = 1; j <= max_level; ++j) {
        std::vector<int> prefix(static_cast<std::size_t>(j - 1), 1);
        prefix.push_back(3);
        out.push_back({Series::Zero, 0, prefix});
        auto emit = [&](const std::vector<int>& p) { out.push_back({Series::Zero, 0, p}); };
        detail::for_each_suffix(prefix, max_level - j, emit);
    }
    for (int k = 0; k <= max_level; ++k) {
        out.push_back({Series::FourThirds, k, {}});
        if (k < max_level) {
            std::vector<int> prefix{1};
            auto emit = [&](const std::vector<int>& p) { out.push_back({Series::FourThirds, k, p}); };
            detail::for_each_suffix(prefix, max_level - k - 1, emit);
        }
    }
    return out;
}

/// Eigenvalue of the fractal Laplacian named by an admissible word.
inline double word_eigenvalue(const SpectrumWord& w) {
    const double start = w.series == Series::Zero ? 0.0 : 4.0 / 3.0;
    const double x = detail::apply_branches(start, w.prefix);
    return std::pow(15.0, w.event_level()) * branch1_tail_limit(x);
}

/// Lowest `count` Neumann eigenvalues, ascending, from words with event level
/// <= level_cap. Every word beyond the cap yields an eigenvalue of at least
/// 15^{cap+1} (8 - sqrt 19)/18; the call fails if the result is not below it.
inline std::vector<SpectrumEntry> enumerate_spectrum(int count, int level_cap) {
    if (count < 1) throw domain_error("count must be >= 1");
    if (level_cap < 0 || level_cap > 12) throw resource_limit("level_cap must lie in [0, 12]");
    std::vector<SpectrumEntry> all;
    for (const auto& w : spectrum_words(level_cap))
        all.push_back({word_eigenvalue(w), w.multiplicity(), w});
    std::sort(all.begin(), all.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.eigenvalue < b.eigenvalue;
    });
    const double bound = std::pow(15.0, level_cap + 1) * critical_points<double>().first;
    if (static_cast<int>(all.size()) < count || all[static_cast<std::size_t>(count - 1)].eigenvalue >= bound)
        throw resource_limit("level_cap " + std::to_string(level_cap) + " cannot certify the lowest " +
                             std::to_string(count) + " eigenvalues");
    all.resize(static_cast<std::size_t>(count));
    return all;
}

/// Eigenvalues of -Delta_m on the level-m graph predicted by decimation:
/// words truncated at level m, without the 15^m renormalization.
inline std::vector<SpectrumEntry> level_spectrum(int level) {
    std::vector<SpectrumEntry> out;
    for (const auto& w : spectrum_words(level)) {
        const double start = w.series == Series::Zero ? 0.0 : 4.0 / 3.0;
        double x = detail::apply_branches(start, w.prefix);
        for (int n = w.event_level(); n < level; ++n) x = branch_inverse(1, x);
        out.push_back({x, w.multiplicity(), w});
    }
    std::sort(out.begin(), out.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.eigenvalue < b.eigenvalue; });
    return out;
}

}  // namespace vicsek
