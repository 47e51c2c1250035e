#pragma once

// Named property suites: decimation, hotspots, symmetry, identities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "csv.hpp"
#include "eigensolve.hpp"
#include "extension.hpp"
#include "hotspots.hpp"
#include "identities.hpp"
#include "report.hpp"
#include "spectral.hpp"

namespace vicsek {

inline constexpr std::uint64_t kDefaultSeed = 0x56534332;  // "VSC2"

struct VerifyConfig {
    int depth = kDefaultSweepDepth;  // address depth for partition and sweeps
    int symmetry_depth = 6;
    int evaluator_depth = 6;
    int implication_depth = 4;
    int closed_form_max_m = 12;
    int hotspot_level = 6;
    int trials = 100;
    int grid = 10000;
    int extension_levels = 5;
    int dense_levels = 3;
    int round_trip_samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    /// Relative perturbation of alpha in the recursion table; fault injection only.
    std::optional<double> corrupt_alpha;

    nlohmann::json to_json() const {
        nlohmann::json j = {{"depth", depth},
                            {"symmetry_depth", symmetry_depth},
                            {"evaluator_depth", evaluator_depth},
                            {"implication_depth", implication_depth},
                            {"closed_form_max_m", closed_form_max_m},
                            {"hotspot_level", hotspot_level},
                            {"trials", trials},
                            {"grid", grid},
                            {"extension_levels", extension_levels},
                            {"dense_levels", dense_levels}};
        if (corrupt_alpha) j["corrupt_alpha"] = *corrupt_alpha;
        return j;
    }

    RecursionTable recursion_table(int levels) const {
        RecursionTable t(levels);
        return corrupt_alpha ? t.with_corrupted_alpha(*corrupt_alpha) : t;
    }
};

// ---------------------------------------------------------------------------
// Decimation.

inline PropertyResult check_lambda1() {
    using ExactRational = boost::multiprecision::cpp_rational;
    const double l1 = branch_inverse(1, 4.0 / 3.0);
    const ExactRational x(1, 6);
    const bool r_exact = decimation_map(x) == ExactRational(4, 3);
    const double err = std::abs(l1 - 1.0 / 6.0);
    return {"lambda1_is_one_sixth", err <= 1e-14 && r_exact, {},
            {{"phi1_of_4_3", l1}, {"abs_error", err}, {"R_one_sixth_exact", r_exact}}};
}

inline PropertyResult check_branch_round_trip(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    std::vector<std::string> wit;
    for (int b = 1; b <= 3; ++b) {
        const auto [ylo, yhi] = branch_range<double>(b);
        std::uniform_real_distribution<double> dist(ylo, yhi);
        for (int i = 0; i < samples; ++i) {
            const double y = dist(rng);
            const double err = std::abs(decimation_map(branch_inverse(b, y)) - y);
            worst = std::max(worst, err);
            if (err > 1e-13 && wit.size() < kMaxTieReport)
                wit.push_back("branch " + std::to_string(b) + " y=" + format_value(y));
        }
    }
    return {"branch_round_trip", wit.empty(), wit, {{"max_abs_residual", worst}, {"samples_per_branch", samples}}};
}

inline PropertyResult check_branch_monotonicity(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::string> wit;
    double min_gap_12 = std::numeric_limits<double>::infinity(), min_gap_23 = min_gap_12;
    std::array<std::uniform_real_distribution<double>, 3> dists;
    for (int b = 1; b <= 3; ++b) {
        const auto [ylo, yhi] = branch_range<double>(b);
        dists[static_cast<std::size_t>(b - 1)] = std::uniform_real_distribution<double>(ylo, yhi);
    }
    for (int i = 0; i < samples; ++i) {
        std::array<double, 3> at{};
        for (int b = 1; b <= 3; ++b) {
            auto& d = dists[static_cast<std::size_t>(b - 1)];
            double y1 = d(rng), y2 = d(rng);
            if (y1 > y2) std::swap(y1, y2);
            if (y1 == y2) continue;
            const double x1 = branch_inverse(b, y1), x2 = branch_inverse(b, y2);
            const bool ok = b == 2 ? x1 > x2 : x1 < x2;
            if (!ok && wit.size() < kMaxTieReport)
                wit.push_back("branch " + std::to_string(b) + " at y=" + format_value(y1) + "," + format_value(y2));
            at[static_cast<std::size_t>(b - 1)] = x1;
        }
        min_gap_12 = std::min(min_gap_12, at[1] - at[0]);
        min_gap_23 = std::min(min_gap_23, at[2] - at[1]);
    }
    const bool order = min_gap_12 > 0 && min_gap_23 > 0;
    if (!order) wit.push_back("branch ordering violated");
    return {"branch_monotonicity", wit.empty(), wit,
            {{"pairs_per_branch", samples}, {"min_gap_phi2_phi1", min_gap_12}, {"min_gap_phi3_phi2", min_gap_23}}};
}

inline PropertyResult check_lambda_sequence(int levels) {
    const auto s = lambda_sequence<double>(levels);
    std::vector<std::string> wit;
    double worst = 0.0;
    for (std::size_t m = 1; m < s.lambdas.size(); ++m) {
        const double r = std::abs(decimation_map(s.lambdas[m]) - s.lambdas[m - 1]);
        worst = std::max(worst, r / std::max(1e-300, std::abs(s.lambdas[m - 1])));
        if (!(s.lambdas[m] < s.lambdas[m - 1] && s.lambdas[m] > 0)) wit.push_back("m=" + std::to_string(m));
    }
    if (worst > 1e-13) wit.push_back("relative R residual " + format_value(worst));
    return {"lambda_sequence_decreasing", wit.empty(), wit, {{"levels", levels}, {"max_rel_R_residual", worst}}};
}

/// gamma = chi, alpha + 3chi - 1 = 3R chi, beta + 3delta - 1 = -18(lambda-1)R chi/(5-6lambda) at each lambda_m.
inline PropertyResult check_coefficient_identities(int levels) {
    const auto lambdas = lambda_table(levels);
    double worst = 0.0;
    std::string at = "-";
    for (std::size_t m = 0; m < lambdas.size(); ++m) {
        const double l = lambdas[m];
        const auto k = coefficients(l);
        const double R = decimation_map(l);
        const double errs[] = {std::abs(k.gamma - k.chi), std::abs(k.alpha + 3 * k.chi - 1 - 3 * R * k.chi),
                               std::abs(k.beta + 3 * k.delta - 1 + 18 * (l - 1) * R * k.chi / (5 - 6 * l))};
        for (double e : errs)
            if (e > worst) {
                worst = e;
                at = "m=" + std::to_string(m);
            }
    }
    return {"coefficient_identities", worst <= 1e-12,
            worst <= 1e-12 ? std::vector<std::string>{} : std::vector<std::string>{at}, {{"max_abs_residual", worst}}};
}

/// Extended u_1, u_2, u_3 satisfy the eigen-equation on every level; dense
/// matrix product for levels <= dense_levels, matrix-free above.
inline PropertyResult check_eigen_equation(const EigenBasis& basis, int dense_levels) {
    std::vector<std::string> wit;
    nlohmann::json per_level = nlohmann::json::array();
    double worst = 0.0;
    for (int m = 1; m <= basis.max_level(); ++m) {
        const LevelGraph& g = basis.graph(m);
        const double lambda = basis.lambdas()[static_cast<std::size_t>(m)];
        const bool dense = m <= dense_levels && m <= dense_level_cap();
        double level_worst = 0.0;
        for (int b = 1; b <= 3; ++b) {
            const auto& u = basis.field(b, m);
            double r = 0.0;
            if (dense) {
                const Eigen::Map<const Eigen::VectorXd> x(u.values.data(), static_cast<Eigen::Index>(u.values.size()));
                r = (neumann_laplacian(g) * x - lambda * x).cwiseAbs().maxCoeff();
            } else {
                r = eigen_residual(g, u, lambda);
            }
            level_worst = std::max(level_worst, r);
            if (r >= 1e-10) wit.push_back("u" + std::to_string(b) + " level " + std::to_string(m));
        }
        worst = std::max(worst, level_worst);
        per_level.push_back({{"level", m}, {"residual", level_worst}, {"method", dense ? "dense" : "matrix-free"}});
    }
    return {"eigen_equation_preserved", wit.empty(), wit, {{"max_residual", worst}, {"levels", per_level}}};
}

inline PropertyResult check_extension_linearity(const EigenBasis& basis, int level) {
    const double c = -1.75;
    ExtensionOptions opt;
    opt.verify_residual = false;
    EigenfunctionField u = c * basis.field(1, 0) + basis.field(2, 0);
    for (int m = 1; m <= level; ++m)
        u = extend_eigenfunction(basis.graph(m - 1), basis.graph(m), u, basis.lambdas()[static_cast<std::size_t>(m)], opt);
    const auto expect = c * basis.field(1, level) + basis.field(2, level);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) worst = std::max(worst, std::abs(u.values[i] - expect.values[i]));
    return {"extension_linear", worst <= 1e-13, {}, {{"max_abs_difference", worst}, {"level", level}}};
}

/// A constant field extended with lambda_next = 0 stays constant.
inline PropertyResult check_constant_extension(const EigenBasis& basis, int level) {
    EigenfunctionField u{0, std::vector<double>(4, 2.5)};
    for (int m = 1; m <= level; ++m) u = extend_eigenfunction(basis.graph(m - 1), basis.graph(m), u, 0.0);
    double worst = 0.0;
    for (double v : u.values) worst = std::max(worst, std::abs(v - 2.5));
    return {"constant_extension", worst <= 1e-13, {}, {{"max_abs_difference", worst}, {"level", level}}};
}

/// Dense spectrum of -Delta_m against the decimation prediction, m = 0..levels.
inline PropertyResult check_dense_spectrum(int levels) {
    std::vector<std::string> wit;
    nlohmann::json summary = nlohmann::json::array();
    for (int m = 0; m <= levels; ++m) {
        const auto g = build_graph(m);
        const auto dense = dense_eigensolve(g);
        std::vector<EigenGroup> predicted;
        for (const auto& e : level_spectrum(m)) {
            if (!predicted.empty() && std::abs(predicted.back().value - e.eigenvalue) <= 1e-9)
                predicted.back().multiplicity += e.multiplicity;
            else
                predicted.push_back({e.eigenvalue, e.multiplicity});
        }
        bool ok = predicted.size() == dense.groups.size();
        for (std::size_t i = 0; ok && i < predicted.size(); ++i)
            ok = std::abs(predicted[i].value - dense.groups[i].value) <= 1e-8 &&
                 predicted[i].multiplicity == dense.groups[i].multiplicity;
        if (!ok) wit.push_back("level " + std::to_string(m));
        summary.push_back({{"level", m}, {"distinct", dense.groups.size()}, {"dimension", g.vertex_count()}, {"match", ok}});
    }
    return {"dense_spectrum_matches_decimation", wit.empty(), wit, {{"levels", summary}}};
}

inline SuiteReport verify_decimation(const VerifyConfig& cfg) {
    SuiteReport rep{"decimation", cfg.to_json(), cfg.seed, {}};
    rep.add(check_lambda1());
    rep.add(check_branch_round_trip(cfg.round_trip_samples, cfg.seed));
    rep.add(check_branch_monotonicity(cfg.round_trip_samples, cfg.seed));
    rep.add(check_lambda_sequence(20));
    rep.add(check_coefficient_identities(20));
    ExtensionOptions opt;
    opt.verify_residual = false;
    const EigenBasis basis(cfg.extension_levels, kDefaultGraphLevelCap, opt);
    rep.add(check_eigen_equation(basis, cfg.dense_levels));
    rep.add(check_extension_linearity(basis, std::min(3, basis.max_level())));
    rep.add(check_constant_extension(basis, std::min(3, basis.max_level())));
    rep.add(check_dense_spectrum(std::min(cfg.dense_levels, dense_level_cap())));
    return rep;
}

// ---------------------------------------------------------------------------
// Hot spots, symmetry, identities.

inline SuiteReport verify_hotspots(const VerifyConfig& cfg) {
    SuiteReport rep{"hotspots", cfg.to_json(), cfg.seed, {}};
    const int basis_level = std::max({cfg.depth, cfg.hotspot_level, cfg.evaluator_depth});
    const EigenBasis basis(basis_level);
    const RecursionTable table = cfg.recursion_table(std::max({basis_level, cfg.closed_form_max_m, 1}));

    rep.append(partition_check(basis, cfg.depth));
    SweepOptions sw;
    sw.depth = cfg.depth;
    rep.append(sweep_bounds(table, sw));
    rep.add(compare_evaluators(basis, table, cfg.evaluator_depth));
    rep.append(closed_form_check(table, cfg.closed_form_max_m));
    rep.add(three_equal_implications(table, cfg.implication_depth));
    rep.append(hotspots_trials(basis, cfg.hotspot_level, cfg.trials, cfg.seed));
    return rep;
}

inline SuiteReport verify_symmetry(const VerifyConfig& cfg) {
    SuiteReport rep{"symmetry", cfg.to_json(), std::nullopt, {}};
    const EigenBasis basis(cfg.symmetry_depth);
    const RecursionTable table = cfg.recursion_table(std::max(cfg.symmetry_depth, 1));
    rep.append(symmetry_check(basis, table, cfg.symmetry_depth));
    return rep;
}

inline SuiteReport verify_identities(const VerifyConfig& cfg) {
    SuiteReport rep{"identities", cfg.to_json(), std::nullopt, {}};
    rep.append(check_identities(cfg.grid));
    rep.append(check_inequalities(cfg.grid));
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"hotspots", "identities", "symmetry", "decimation", "all"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "decimation") return verify_decimation(cfg);
    if (name == "hotspots") return verify_hotspots(cfg);
    if (name == "symmetry") return verify_symmetry(cfg);
    if (name == "identities") return verify_identities(cfg);
    if (name == "all") {
        SuiteReport rep{"all", cfg.to_json(), cfg.seed, {}};
        for (const char* s : {"decimation", "identities", "symmetry", "hotspots"}) rep.append(run_suite(s, cfg));
        return rep;
    }
    throw domain_error("unknown suite '" + name + "'");
}

}  // namespace vicsek
