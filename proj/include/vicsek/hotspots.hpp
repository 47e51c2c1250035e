#pragma once

// The partition of unity f, g, h, k on addresses, two independent evaluators
// of it (extended eigenfunctions and the one-letter recursion), closed forms
// along [1]^m, [2]^m, [5]^m, and the property sweeps built on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "extension.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "words.hpp"

namespace vicsek {

inline constexpr double kEqualityTol = 1e-12;
inline constexpr int kDefaultSweepDepth = 8;

struct PartitionQuad {
    double f = 0, g = 0, h = 0, k = 0;

    double sum() const { return f + g + h + k; }
    double component(int i) const { return i == 1 ? f : i == 2 ? g : i == 3 ? h : k; }

    /// The four affine combinations of (u_1, u_2, u_3) at a point.
    static PartitionQuad from_basis_values(const std::array<double, 3>& u) {
        const double u1 = u[0], u2 = u[1], u3 = u[2];
        return {0.75 * u1 - 0.25 * u2 - 0.25 * u3 + 0.25, -0.25 * u1 + 0.75 * u2 - 0.25 * u3 + 0.25,
                -0.25 * u1 - 0.25 * u2 + 0.75 * u3 + 0.25, -0.25 * u1 - 0.25 * u2 - 0.25 * u3 + 0.25};
    }
};

/// f, g, h, k at q_{omega,i} from the extended eigenbasis.
inline PartitionQuad quad_from_eigenbasis(const EigenBasis& basis, const Address& a) {
    if (static_cast<int>(a.word.size()) > basis.max_level())
        throw level_mismatch("address " + a.str() + " deeper than extended basis level " +
                             std::to_string(basis.max_level()));
    return PartitionQuad::from_basis_values(basis.values_at(a));
}

// ---------------------------------------------------------------------------
// One-letter recursion.

/// Coefficients alpha_m, beta_m, chi_m, delta_m for m = 0..M.
class RecursionTable {
public:
    explicit RecursionTable(int max_level) : lambdas_(lambda_table(max_level)) {
        for (double l : lambdas_) coeffs_.push_back(coefficients(l));
    }

    /// Copy with alpha_m scaled by (1 + relative) at every level; a fault
    /// injection hook for testing the verification suites.
    RecursionTable with_corrupted_alpha(double relative) const {
        RecursionTable t = *this;
        for (auto& c : t.coeffs_) c.alpha *= 1.0 + relative;
        return t;
    }

    int max_level() const { return static_cast<int>(lambdas_.size()) - 1; }
    double lambda(int m) const { return lambdas_.at(static_cast<std::size_t>(m)); }
    const ExtensionCoefficients<double>& at(int m) const {
        if (m < 0 || m > max_level())
            throw level_mismatch("recursion table holds levels 0.." + std::to_string(max_level()) +
                                 ", level " + std::to_string(m) + " requested");
        return coeffs_[static_cast<std::size_t>(m)];
    }

private:
    std::vector<double> lambdas_;
    std::vector<ExtensionCoefficients<double>> coeffs_;
};

using CornerValues = std::array<double, 4>;  // values at corners 1..4 of one cell

namespace detail {

template <class T>
T alpha_pattern(const ExtensionCoefficients<T>& k, const std::array<T, 4>& p, int heavy) {
    T s = (T(1) - k.alpha - T(3) * k.chi) / T(4);
    for (int j = 1; j <= 4; ++j) s += (j == heavy ? k.alpha : k.chi) * p[static_cast<std::size_t>(j - 1)];
    return s;
}

template <class T>
T beta_pattern(const ExtensionCoefficients<T>& k, const std::array<T, 4>& p, int heavy) {
    T s = (T(1) - k.beta - T(3) * k.delta) / T(4);
    for (int j = 1; j <= 4; ++j) s += (j == heavy ? k.beta : k.delta) * p[static_cast<std::size_t>(j - 1)];
    return s;
}

}  // namespace detail

/// Value at (omega letter, corner) from the four values at (omega, 1..4),
/// with k the coefficients at lambda_{|omega|+1}. Works for any of f, g, h, k.
template <class T>
T recursion_child(const ExtensionCoefficients<T>& k, const std::array<T, 4>& parent, int letter, int corner) {
    // Fixed point: F_i(q_i) = q_i.
    if (letter == corner && letter <= 4) return parent[static_cast<std::size_t>(corner - 1)];
    switch (letter * 10 + corner) {
        case 12: case 14: return detail::alpha_pattern(k, parent, 1);
        case 21: case 23: return detail::alpha_pattern(k, parent, 2);
        case 32: case 34: return detail::alpha_pattern(k, parent, 3);
        case 41: case 43: return detail::alpha_pattern(k, parent, 4);
        case 51: case 13: return detail::beta_pattern(k, parent, 1);
        case 52: case 24: return detail::beta_pattern(k, parent, 2);
        case 53: case 31: return detail::beta_pattern(k, parent, 3);
        case 54: case 42: return detail::beta_pattern(k, parent, 4);
        default: break;
    }
    throw consistency_error("no recursion formula for letter " + std::to_string(letter) + ", corner " +
                            std::to_string(corner));
}

inline CornerValues recursion_children(const ExtensionCoefficients<double>& k, const CornerValues& parent,
                                       int letter) {
    CornerValues out{};
    for (int j = 1; j <= 4; ++j) out[static_cast<std::size_t>(j - 1)] = recursion_child(k, parent, letter, j);
    return out;
}

/// Initial corner values of f, g, h, k on the empty word: Kronecker deltas.
inline CornerValues initial_corner_values(int component) {
    CornerValues v{};
    v[static_cast<std::size_t>(component - 1)] = 1.0;
    return v;
}

/// Component (1=f, 2=g, 3=h, 4=k) at all four corners of the cell of `word`.
inline CornerValues recursive_cell(const Word& word, const RecursionTable& table, int component = 1) {
    if (static_cast<int>(word.size()) > table.max_level())
        throw level_mismatch("recursion table too short for word " + word.str());
    CornerValues v = initial_corner_values(component);
    for (std::size_t m = 0; m < word.size(); ++m)
        v = recursion_children(table.at(static_cast<int>(m) + 1), v, word[m]);
    return v;
}

inline double f_recursive(const Address& a, const RecursionTable& table) {
    return recursive_cell(a.word, table, 1)[static_cast<std::size_t>(a.corner - 1)];
}

inline PartitionQuad quad_recursive(const Address& a, const RecursionTable& table) {
    const auto i = static_cast<std::size_t>(a.corner - 1);
    return {recursive_cell(a.word, table, 1)[i], recursive_cell(a.word, table, 2)[i],
            recursive_cell(a.word, table, 3)[i], recursive_cell(a.word, table, 4)[i]};
}

/// Visits every word of length <= depth (first letters restricted) in
/// lexicographic order with the corner values of `component` on its cell.
template <class Fn>
void for_each_cell(int depth, const RecursionTable& table, const std::vector<int>& first_letters, Fn&& fn,
                   int component = 1) {
    if (depth > table.max_level()) throw level_mismatch("recursion table shorter than sweep depth");
    Word w;
    std::vector<CornerValues> stack{initial_corner_values(component)};
    std::function<void()> visit = [&]() {
        fn(static_cast<const Word&>(w), static_cast<const CornerValues&>(stack.back()));
        if (static_cast<int>(w.size()) == depth) return;
        const auto& k = table.at(static_cast<int>(w.size()) + 1);
        for (int l = 1; l <= 5; ++l) {
            if (w.empty() && std::find(first_letters.begin(), first_letters.end(), l) == first_letters.end()) continue;
            stack.push_back(recursion_children(k, stack.back(), l));
            w.push_back(l);
            visit();
            w.pop_back();
            stack.pop_back();
        }
    };
    visit();
}

// ---------------------------------------------------------------------------
// Closed forms.

/// f([1]^m, 1..4) = (1, 1, 1 - 9 lambda_m / 4, 1), m >= 1.
inline CornerValues closed_form_1m(int m, const std::vector<double>& lambdas) {
    if (m < 1) throw domain_error("closed_form_1m needs m >= 1");
    const double l = lambdas.at(static_cast<std::size_t>(m));
    return {1.0, 1.0, 1.0 - 2.25 * l, 1.0};
}

/// f([2]^m, 1..4) = (0, 0, 0, 3 lambda_m / 4), m >= 1.
inline CornerValues closed_form_2m(int m, const std::vector<double>& lambdas) {
    if (m < 1) throw domain_error("closed_form_2m needs m >= 1");
    return {0.0, 0.0, 0.0, 0.75 * lambdas.at(static_cast<std::size_t>(m))};
}

/// f([5]^m, 1..4). For m >= 2 the product form; m = 1 from f(5,1) = f(1,3)
/// and f(5,j) = f(2,4) = 3 lambda_1 / 4.
inline CornerValues closed_form_5m(int m, const std::vector<double>& lambdas) {
    if (m < 1) throw domain_error("closed_form_5m needs m >= 1");
    if (m == 1) {
        const double l1 = lambdas.at(1);
        return {1.0 - 2.25 * l1, 0.75 * l1, 0.75 * l1, 0.75 * l1};
    }
    double prod = 1.0;
    for (int k = 1; k <= m; ++k) prod /= 1.0 - 2.0 * lambdas.at(static_cast<std::size_t>(k));
    const double corner1 = 0.25 + 0.25 * prod / std::pow(3.0, m - 1);
    const double rest = 0.25 - 0.25 * prod / std::pow(3.0, m);
    return {corner1, rest, rest, rest};
}

// ---------------------------------------------------------------------------
// Sweeps and checks.

inline constexpr std::size_t kMaxTieReport = 100;

/// Running extreme over addresses visited in lexicographic order.
class ExtremeTracker {
public:
    explicit ExtremeTracker(bool maximum, double tie_tol = kEqualityTol) : maximum_(maximum), tol_(tie_tol) {}

    void offer(double value, const Word& w, int corner) {
        if (!seen_ || better(value, best_ + (maximum_ ? tol_ : -tol_))) {
            seen_ = true;
            best_ = value;
            ties_.clear();
            tie_count_ = 0;
            add_tie(w, corner);
        } else if (std::abs(value - best_) <= tol_) {
            add_tie(w, corner);
        }
    }

    double value() const { return best_; }
    std::size_t tie_count() const { return tie_count_; }
    /// First witness plus every tie when there are at most kMaxTieReport of them.
    std::vector<std::string> witnesses() const {
        if (tie_count_ <= kMaxTieReport) return ties_;
        return {ties_.front()};
    }
    nlohmann::json to_json() const {
        return {{"value", best_}, {"tie_count", tie_count_}, {"witnesses", witnesses()}};
    }

private:
    bool better(double v, double ref) const { return maximum_ ? v > ref : v < ref; }
    void add_tie(const Word& w, int corner) {
        ++tie_count_;
        if (ties_.size() < kMaxTieReport + 1) ties_.push_back(Address(w, corner).str());
    }

    bool maximum_;
    double tol_;
    bool seen_ = false;
    double best_ = 0.0;
    std::vector<std::string> ties_;
    std::size_t tie_count_ = 0;
};

struct SweepOptions {
    int depth = kDefaultSweepDepth;
    double tol = kEqualityTol;
};

/// Global and per-first-letter extremes of f over all addresses with
/// |omega| <= depth, evaluated by the recursion. Per first letter i the
/// extremes over (i omega, j) must equal the extremes over (i, j).
inline SuiteReport sweep_bounds(const RecursionTable& table, const SweepOptions& opt = {}) {
    if (opt.depth < 0) throw domain_error("sweep depth must be >= 0");
    SuiteReport rep{"sweep_bounds", {{"depth", opt.depth}, {"tol", opt.tol}}, std::nullopt, {}};

    ExtremeTracker gmax(true, opt.tol), gmin(false, opt.tol);
    std::array<ExtremeTracker, 5> pmax{ExtremeTracker(true, opt.tol), ExtremeTracker(true, opt.tol),
                                       ExtremeTracker(true, opt.tol), ExtremeTracker(true, opt.tol),
                                       ExtremeTracker(true, opt.tol)};
    std::array<ExtremeTracker, 5> pmin{ExtremeTracker(false, opt.tol), ExtremeTracker(false, opt.tol),
                                       ExtremeTracker(false, opt.tol), ExtremeTracker(false, opt.tol),
                                       ExtremeTracker(false, opt.tol)};
    std::array<CornerValues, 5> depth1{};
    std::uint64_t visited = 0;

    for_each_cell(opt.depth, table, {1, 2, 3, 4, 5}, [&](const Word& w, const CornerValues& v) {
        for (int j = 1; j <= 4; ++j) {
            const double x = v[static_cast<std::size_t>(j - 1)];
            ++visited;
            gmax.offer(x, w, j);
            gmin.offer(x, w, j);
            if (!w.empty()) {
                const auto i = static_cast<std::size_t>(w.front() - 1);
                pmax[i].offer(x, w, j);
                pmin[i].offer(x, w, j);
            }
        }
        if (w.size() == 1) depth1[static_cast<std::size_t>(w.front() - 1)] = v;
    });

    rep.results.push_back({"global_max_is_1", std::abs(gmax.value() - 1.0) <= opt.tol,
                           gmax.witnesses(), {{"max", gmax.to_json()}, {"addresses", visited}}});
    rep.results.push_back({"global_min_is_0", std::abs(gmin.value()) <= opt.tol, gmin.witnesses(),
                           {{"min", gmin.to_json()}}});
    if (opt.depth >= 1) {
        for (std::size_t i = 0; i < 5; ++i) {
            const double m1max = *std::max_element(depth1[i].begin(), depth1[i].end());
            const double m1min = *std::min_element(depth1[i].begin(), depth1[i].end());
            const bool ok = pmax[i].value() <= m1max + opt.tol && pmin[i].value() >= m1min - opt.tol;
            std::vector<std::string> wit;
            if (pmax[i].value() > m1max + opt.tol) wit = pmax[i].witnesses();
            if (pmin[i].value() < m1min - opt.tol) {
                auto more = pmin[i].witnesses();
                wit.insert(wit.end(), more.begin(), more.end());
            }
            rep.results.push_back({"prefix_" + std::to_string(i + 1) + "_extremes_at_depth1", ok, wit,
                                   {{"max", pmax[i].to_json()},
                                    {"min", pmin[i].to_json()},
                                    {"depth1_max", m1max},
                                    {"depth1_min", m1min}}});
        }
    }
    return rep;
}

/// Partition of unity and [0,1] bounds of f, g, h, k at every address with
/// |omega| <= depth, evaluated from the extended eigenbasis.
inline SuiteReport partition_check(const EigenBasis& basis, int depth, double tol = kEqualityTol) {
    if (depth > basis.max_level()) throw level_mismatch("partition check deeper than the extended basis");
    SuiteReport rep{"partition", {{"depth", depth}, {"tol", tol}}, std::nullopt, {}};
    const LevelGraph& top = basis.top_graph();
    const int M = basis.max_level();
    const auto& u1 = basis.field(1, M).values;
    const auto& u2 = basis.field(2, M).values;
    const auto& u3 = basis.field(3, M).values;

    double worst_sum = 0.0;
    std::string worst_sum_at = "-";
    std::array<ExtremeTracker, 4> lo{ExtremeTracker(false), ExtremeTracker(false), ExtremeTracker(false),
                                     ExtremeTracker(false)};
    std::array<ExtremeTracker, 4> hi{ExtremeTracker(true), ExtremeTracker(true), ExtremeTracker(true),
                                     ExtremeTracker(true)};
    std::uint64_t visited = 0;
    for_each_word(depth, {1, 2, 3, 4, 5}, [&](const Word& w) {
        for (int c = 1; c <= 4; ++c) {
            const auto id = top.find(lattice_point(w, c, M));
            if (!id) throw consistency_error("address missing from top graph");
            const auto q = PartitionQuad::from_basis_values({u1[*id], u2[*id], u3[*id]});
            ++visited;
            const double err = std::abs(q.sum() - 1.0);
            if (err > worst_sum) {
                worst_sum = err;
                worst_sum_at = Address(w, c).str();
            }
            for (int i = 1; i <= 4; ++i) {
                lo[static_cast<std::size_t>(i - 1)].offer(q.component(i), w, c);
                hi[static_cast<std::size_t>(i - 1)].offer(q.component(i), w, c);
            }
        }
    });
    rep.results.push_back({"sum_is_one", worst_sum < tol, worst_sum < tol ? std::vector<std::string>{}
                                                                         : std::vector<std::string>{worst_sum_at},
                           {{"max_abs_error", worst_sum}, {"addresses", visited}}});
    const char* names[] = {"f", "g", "h", "k"};
    for (std::size_t i = 0; i < 4; ++i) {
        const bool ok = lo[i].value() >= -tol && hi[i].value() <= 1.0 + tol;
        std::vector<std::string> wit;
        if (lo[i].value() < -tol) wit = lo[i].witnesses();
        if (hi[i].value() > 1.0 + tol) {
            auto more = hi[i].witnesses();
            wit.insert(wit.end(), more.begin(), more.end());
        }
        rep.results.push_back({std::string(names[i]) + "_in_unit_interval", ok, wit,
                               {{"min", lo[i].to_json()}, {"max", hi[i].to_json()}}});
    }
    return rep;
}

/// f from the recursion against f from the extended eigenbasis at every
/// address with |omega| <= depth.
inline PropertyResult compare_evaluators(const EigenBasis& basis, const RecursionTable& table, int depth,
                                         double tol = kEqualityTol) {
    double worst = 0.0;
    std::string at = "-";
    const LevelGraph& top = basis.top_graph();
    const int M = basis.max_level();
    for_each_cell(depth, table, {1, 2, 3, 4, 5}, [&](const Word& w, const CornerValues& v) {
        for (int c = 1; c <= 4; ++c) {
            const auto id = top.find(lattice_point(w, c, M));
            const auto q = PartitionQuad::from_basis_values(
                {basis.field(1, M)[*id], basis.field(2, M)[*id], basis.field(3, M)[*id]});
            const double d = std::abs(q.f - v[static_cast<std::size_t>(c - 1)]);
            if (d > worst) {
                worst = d;
                at = Address(w, c).str();
            }
        }
    });
    return {"recursion_matches_eigenbasis", worst <= tol,
            worst <= tol ? std::vector<std::string>{} : std::vector<std::string>{at},
            {{"max_abs_difference", worst}, {"depth", depth}}};
}

/// Closed forms for [1]^m, [2]^m, [5]^m against the recursion, m = 1..max_m,
/// plus the monotone bracketing of f([5]^m, .) around 1/4.
inline SuiteReport closed_form_check(const RecursionTable& table, int max_m, double tol = kEqualityTol) {
    SuiteReport rep{"closed_forms", {{"max_m", max_m}, {"tol", tol}}, std::nullopt, {}};
    std::vector<double> lambdas;
    for (int m = 0; m <= table.max_level(); ++m) lambdas.push_back(table.lambda(m));
    struct Family {
        const char* name;
        int letter;
        CornerValues (*form)(int, const std::vector<double>&);
    };
    const Family families[] = {{"closed_form_1m", 1, closed_form_1m},
                               {"closed_form_2m", 2, closed_form_2m},
                               {"closed_form_5m", 5, closed_form_5m}};
    for (const auto& fam : families) {
        double worst = 0.0;
        std::string at = "-";
        for (int m = 1; m <= max_m; ++m) {
            const auto rec = recursive_cell(Word::repeat(fam.letter, static_cast<std::size_t>(m)), table);
            const auto cf = fam.form(m, lambdas);
            for (std::size_t j = 0; j < 4; ++j) {
                const double d = std::abs(rec[j] - cf[j]);
                if (d > worst) {
                    worst = d;
                    at = Address(Word::repeat(fam.letter, static_cast<std::size_t>(m)), static_cast<int>(j) + 1).str();
                }
            }
        }
        rep.results.push_back({fam.name, worst <= tol,
                               worst <= tol ? std::vector<std::string>{} : std::vector<std::string>{at},
                               {{"max_abs_difference", worst}}});
    }
    bool mono = true;
    std::vector<std::string> wit;
    for (int m = 1; m < max_m; ++m) {
        const auto a = closed_form_5m(m, lambdas), b = closed_form_5m(m + 1, lambdas);
        if (!(b[0] < a[0] && b[0] > 0.25 && b[1] > a[1] && b[1] < 0.25)) {
            mono = false;
            wit.push_back("m=" + std::to_string(m + 1));
        }
    }
    rep.results.push_back({"closed_form_5m_brackets_quarter", mono, wit, {}});
    return rep;
}

/// An element c1 u_1 + c2 u_2 + c3 u_3 of the lambda^(2) eigenspace.
struct EigenCombination {
    double c1 = 0, c2 = 0, c3 = 0;

    std::array<double, 4> boundary_values() const { return {c1, c2, c3, -c1 - c2 - c3}; }
    double scale() const { return std::max({std::abs(c1), std::abs(c2), std::abs(c3)}); }
};

/// Every value of u on V_level lies within the extremes of its boundary values.
inline PropertyResult hotspots_check(const EigenBasis& basis, const EigenCombination& c, int level) {
    const auto u = basis.combination({c.c1, c.c2, c.c3}, level);
    const auto bv = c.boundary_values();
    const double bmax = *std::max_element(bv.begin(), bv.end());
    const double bmin = *std::min_element(bv.begin(), bv.end());
    const double eps = kEqualityTol * std::max(c.scale(), std::numeric_limits<double>::min());
    const LevelGraph& g = basis.graph(level);

    double vmax = -std::numeric_limits<double>::infinity(), vmin = std::numeric_limits<double>::infinity();
    std::vector<std::string> wit;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const double x = u[v];
        vmax = std::max(vmax, x);
        vmin = std::min(vmin, x);
        if ((x > bmax + eps || x < bmin - eps) && wit.size() < kMaxTieReport) {
            const auto [px, py] = g.point(v).to_double();
            wit.push_back("vertex " + std::to_string(v) + " at (" + std::to_string(px) + "," + std::to_string(py) +
                          ") value " + std::to_string(x));
        }
    }
    std::vector<int> argmax, argmin;
    for (int i = 0; i < 4; ++i) {
        if (bv[static_cast<std::size_t>(i)] == bmax) argmax.push_back(i + 1);
        if (bv[static_cast<std::size_t>(i)] == bmin) argmin.push_back(i + 1);
    }
    return {"hotspots",
            wit.empty(),
            wit,
            {{"c", {c.c1, c.c2, c.c3}},
             {"level", level},
             {"boundary_max", bmax},
             {"boundary_min", bmin},
             {"boundary_argmax", argmax},
             {"boundary_argmin", argmin},
             {"field_max", vmax},
             {"field_min", vmin},
             {"eps", eps}}};
}

/// Seeded random trials of hotspots_check with c uniform in [-1,1]^3.
inline SuiteReport hotspots_trials(const EigenBasis& basis, int level, int trials, std::uint64_t seed) {
    SuiteReport rep{"hotspots", {{"level", level}, {"trials", trials}}, seed, {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        EigenCombination c;
        c.c1 = dist(rng);
        c.c2 = dist(rng);
        c.c3 = dist(rng);
        auto r = hotspots_check(basis, c, level);
        r.name = "hotspots_trial_" + std::to_string(t);
        rep.results.push_back(std::move(r));
    }
    return rep;
}

namespace detail {

inline void track(double d, const std::string& at, double& worst, std::string& where) {
    if (d > worst) {
        worst = d;
        where = at;
    }
}

inline PropertyResult max_diff_result(const std::string& name, double worst, const std::string& at, double tol) {
    return {name, worst <= tol, worst <= tol ? std::vector<std::string>{} : std::vector<std::string>{at},
            {{"max_abs_difference", worst}}};
}

}  // namespace detail

/// Rotation identities of f and the relations f-k = u_1, g-k = u_2, h-k = u_3,
/// for all addresses with |omega| <= depth. Also checks g, h, k as rotated
/// copies of f: g(R2 w, R2 i) = f(w, i) and likewise with R2^2, R2^3.
inline SuiteReport symmetry_check(const EigenBasis& basis, const RecursionTable& table, int depth,
                                  double tol = kEqualityTol) {
    SuiteReport rep{"symmetry", {{"depth", depth}, {"tol", tol}}, std::nullopt, {}};
    double w_r1 = 0, w_r2 = 0, w_rot = 0, w_fk = 0;
    std::string a_r1 = "-", a_r2 = "-", a_rot = "-", a_fk = "-";
    const int M = basis.max_level();

    for_each_word(depth, {1, 2, 3, 4, 5}, [&](const Word& w) {
        const auto f_cell = recursive_cell(w, table, 1);
        const Address rw = rotate1(Address(w, 1));
        const auto f_r1 = recursive_cell(rw.word, table, 1);
        std::array<CornerValues, 4> comp{};
        for (int c = 1; c <= 4; ++c) comp[static_cast<std::size_t>(c - 1)] = recursive_cell(w, table, c);
        for (int i = 1; i <= 4; ++i) {
            const auto ii = static_cast<std::size_t>(i - 1);
            const std::string at = Address(w, i).str();
            detail::track(std::abs(f_cell[ii] - f_r1[static_cast<std::size_t>(permute_r1(i) - 1)]), at, w_r1, a_r1);

            // f(2 w, i) = f(3 R2(w), R2(i)), for |2w| <= depth.
            if (static_cast<int>(w.size()) < depth) {
                const Address lhs(w.after(2), i);
                const Address rhs_base = rotate2(Address(w, i));
                const Address rhs(rhs_base.word.after(3), rhs_base.corner);
                detail::track(std::abs(f_recursive(lhs, table) - f_recursive(rhs, table)), lhs.str(), w_r2, a_r2);
            }

            // g, h, k as rotated f.
            Address rot(w, i);
            for (int c = 2; c <= 4; ++c) {
                rot = rotate2(rot);
                const double rotated = recursive_cell(rot.word, table, c)[static_cast<std::size_t>(rot.corner - 1)];
                detail::track(std::abs(rotated - f_cell[ii]), at, w_rot, a_rot);
            }

            // f - k = u_1 etc. with u read from the extended eigenbasis.
            if (static_cast<int>(w.size()) <= M) {
                const auto u = basis.values_at(Address(w, i));
                for (int b = 0; b < 3; ++b)
                    detail::track(std::abs(comp[static_cast<std::size_t>(b)][ii] - comp[3][ii] - u[static_cast<std::size_t>(b)]),
                                  at, w_fk, a_fk);
            }
        }
    });
    rep.results.push_back(detail::max_diff_result("r1_reflection", w_r1, a_r1, tol));
    rep.results.push_back(detail::max_diff_result("r2_cell2_to_cell3", w_r2, a_r2, tol));
    rep.results.push_back(detail::max_diff_result("ghk_are_rotated_f", w_rot, a_rot, tol));
    rep.results.push_back(detail::max_diff_result("differences_are_basis", w_fk, a_fk, tol));

    // Delta values on the empty word.
    bool deltas = true;
    for (int c = 1; c <= 4; ++c) {
        const auto v = recursive_cell(Word{}, table, c);
        for (int i = 1; i <= 4; ++i)
            if (v[static_cast<std::size_t>(i - 1)] != (i == c ? 1.0 : 0.0)) deltas = false;
    }
    rep.results.push_back({"empty_word_kronecker", deltas, {}, {}});
    return rep;
}

/// When three of f(omega, 1..4) agree, the equalities among the children
/// that follow from the recursion hold. Checked on every omega with |omega| <= depth.
inline PropertyResult three_equal_implications(const RecursionTable& table, int depth, double tol = kEqualityTol) {
    struct Case {
        std::array<int, 3> equal;           // corners of omega that agree
        std::vector<std::array<int, 2>> a;  // (letter, corner) pairs that must agree
        std::vector<std::array<int, 2>> b;
    };
    const Case cases[] = {
        {{1, 2, 3}, {{1, 2}, {1, 4}, {2, 1}, {2, 3}, {3, 2}, {3, 4}}, {{1, 3}, {2, 4}, {3, 1}}},
        {{1, 2, 4}, {{1, 2}, {1, 4}, {2, 1}, {2, 3}, {4, 1}, {4, 3}}, {{1, 3}, {2, 4}, {4, 2}}},
        {{2, 3, 4}, {{2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 1}, {4, 3}}, {{2, 4}, {3, 1}, {4, 2}}},
    };
    std::uint64_t triggered = 0;
    std::vector<std::string> wit;
    for_each_cell(std::max(depth - 1, 0), table, {1, 2, 3, 4, 5}, [&](const Word& w, const CornerValues& v) {
        const auto& k = table.at(static_cast<int>(w.size()) + 1);
        for (const auto& cs : cases) {
            const double x = v[static_cast<std::size_t>(cs.equal[0] - 1)];
            if (std::abs(v[static_cast<std::size_t>(cs.equal[1] - 1)] - x) > tol ||
                std::abs(v[static_cast<std::size_t>(cs.equal[2] - 1)] - x) > tol)
                continue;
            ++triggered;
            for (const auto* group : {&cs.a, &cs.b}) {
                const double ref = recursion_child(k, v, (*group)[0][0], (*group)[0][1]);
                for (const auto& lc : *group)
                    if (std::abs(recursion_child(k, v, lc[0], lc[1]) - ref) > tol && wit.size() < kMaxTieReport)
                        wit.push_back(Address(w.then(lc[0]), lc[1]).str());
            }
        }
    });
    return {"three_equal_implications", wit.empty(), wit, {{"triggered", triggered}, {"depth", depth}}};
}

}  // namespace vicsek
