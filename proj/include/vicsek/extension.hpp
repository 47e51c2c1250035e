#pragma once

// Level-to-level extension of eigenfunctions through the local extension
// matrix, applied independently to every graph m-cell.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "spectral.hpp"

namespace vicsek {

enum class Entry : std::uint8_t { A, B, C, D };

/// One column of the 4 x 12 extension matrix (as printed, transposed) and
/// the new vertex F_cell(q_corner) it fills.
struct ExtensionColumn {
    int cell;
    int corner;
    std::array<Entry, 4> entries;
};

// clang-format off
inline constexpr std::array<ExtensionColumn, 12> kExtensionColumns{{
    {1, 2, {Entry::A, Entry::C, Entry::C, Entry::C}},
    {1, 3, {Entry::B, Entry::D, Entry::D, Entry::D}},
    {1, 4, {Entry::A, Entry::C, Entry::C, Entry::C}},
    {2, 1, {Entry::C, Entry::A, Entry::C, Entry::C}},
    {2, 3, {Entry::C, Entry::A, Entry::C, Entry::C}},
    {2, 4, {Entry::D, Entry::B, Entry::D, Entry::D}},
    {3, 1, {Entry::D, Entry::D, Entry::B, Entry::D}},
    {3, 2, {Entry::C, Entry::C, Entry::A, Entry::C}},
    {3, 4, {Entry::C, Entry::C, Entry::A, Entry::C}},
    {4, 1, {Entry::C, Entry::C, Entry::C, Entry::A}},
    {4, 2, {Entry::D, Entry::D, Entry::D, Entry::B}},
    {4, 3, {Entry::C, Entry::C, Entry::C, Entry::A}},
}};
// clang-format on

/// Column feeding F_5(q_j); the center cell's corners coincide with
/// F_j(q_{opposite j}), so these are columns 2, 6, 7 and 11 again.
inline constexpr std::array<int, 4> kCenterCornerColumn{1, 5, 6, 10};

inline double column_weight(const ExtensionCoefficients<double>& k, Entry e) {
    switch (e) {
        case Entry::A: return k.gamma * k.a;
        case Entry::B: return k.gamma * k.b;
        case Entry::C: return k.gamma * k.c;
        case Entry::D: return k.gamma * k.d;
    }
    return 0.0;
}

inline double apply_column(const ExtensionCoefficients<double>& k, const ExtensionColumn& col,
                           const std::array<double, 4>& corner_values) {
    double s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) s += column_weight(k, col.entries[j]) * corner_values[j];
    return s;
}

struct ExtensionOptions {
    /// Maximum disagreement between the two computations of a center-cell corner.
    double agreement_tol = 1e-12;
    /// Verify -Delta_{m+1} u = lambda_next u afterwards.
    bool verify_residual = true;
    double residual_tol = 1e-10;
};

/// Extends a lambda_m-eigenfunction on V_m to a lambda_next-eigenfunction on
/// V_{m+1}, where R(lambda_next) = lambda_m. Values on V_m are kept.
inline EigenfunctionField extend_eigenfunction(const LevelGraph& coarse, const LevelGraph& fine,
                                               const EigenfunctionField& u, double lambda_next,
                                               const ExtensionOptions& opt = {}) {
    check_level(coarse, u);
    if (fine.level() != coarse.level() + 1) throw level_mismatch("fine graph must be one level above coarse");
    const auto k = coefficients(lambda_next);

    EigenfunctionField out{fine.level(), std::vector<double>(fine.vertex_count(), 0.0)};
    std::vector<std::uint8_t> assigned(fine.vertex_count(), 0);
    double scale = 1.0;
    for (double v : u.values) scale = std::max(scale, std::abs(v));

    auto put = [&](VertexId id, double value, const char* what) {
        if (assigned[id]) {
            if (std::abs(out[id] - value) > opt.agreement_tol * scale)
                throw consistency_error(std::string("extension disagreement at shared vertex (") + what +
                                        "): " + std::to_string(out[id]) + " vs " + std::to_string(value));
            return;
        }
        out[id] = value;
        assigned[id] = 1;
    };

    for (std::uint64_t rank = 0; rank < coarse.cell_count(); ++rank) {
        const auto& corners = coarse.cell(rank);
        std::array<double, 4> cv{};
        for (std::size_t j = 0; j < 4; ++j) cv[j] = u[corners[j]];
        auto child = [&](int letter) -> const std::array<VertexId, 4>& {
            return fine.cell(rank * kAlphabetSize + static_cast<std::uint64_t>(letter - 1));
        };
        // Corners of the m-cell are fixed points of F_i: unchanged.
        for (int i = 1; i <= 4; ++i) put(child(i)[static_cast<std::size_t>(i - 1)], cv[static_cast<std::size_t>(i - 1)], "corner");
        for (const auto& col : kExtensionColumns)
            put(child(col.cell)[static_cast<std::size_t>(col.corner - 1)], apply_column(k, col, cv), "column");
        for (int j = 1; j <= 4; ++j) {
            const auto& col = kExtensionColumns[static_cast<std::size_t>(kCenterCornerColumn[static_cast<std::size_t>(j - 1)])];
            put(child(5)[static_cast<std::size_t>(j - 1)], apply_column(k, col, cv), "center cell");
        }
    }
    for (std::size_t v = 0; v < assigned.size(); ++v)
        if (!assigned[v]) throw consistency_error("extension left vertex " + std::to_string(v) + " unassigned");

    if (opt.verify_residual) {
        const double r = eigen_residual(fine, out, lambda_next);
        if (r > opt.residual_tol * scale)
            throw consistency_error("eigen-equation residual " + std::to_string(r) + " after extension to level " +
                                    std::to_string(fine.level()));
    }
    return out;
}

/// Boundary values of the 4/3-eigenbasis u_1, u_2, u_3 on (q_1, q_2, q_3, q_4).
inline constexpr std::array<std::array<double, 4>, 3> kBasisBoundaryValues{{
    {1.0, 0.0, 0.0, -1.0}, {0.0, 1.0, 0.0, -1.0}, {0.0, 0.0, 1.0, -1.0}}};

/// Graphs Gamma_0..Gamma_M with u_1, u_2, u_3 extended along lambda_m = phi_1(lambda_{m-1}).
class EigenBasis {
public:
    EigenBasis(int max_level, int level_cap = kDefaultGraphLevelCap, const ExtensionOptions& opt = {})
        : lambdas_(lambda_table(max_level)) {
        if (max_level < 0) throw domain_error("basis level must be >= 0");
        graphs_.reserve(static_cast<std::size_t>(max_level) + 1);
        graphs_.push_back(build_graph(0, level_cap));
        fields_.emplace_back();
        for (std::size_t b = 0; b < 3; ++b) fields_[0][b] = boundary_field(graphs_[0], kBasisBoundaryValues[b]);
        for (int m = 1; m <= max_level; ++m) {
            graphs_.push_back(build_graph(m, level_cap));
            std::array<EigenfunctionField, 3> next;
            for (std::size_t b = 0; b < 3; ++b)
                next[b] = extend_eigenfunction(graphs_[static_cast<std::size_t>(m - 1)], graphs_.back(),
                                               fields_.back()[b], lambdas_[static_cast<std::size_t>(m)], opt);
            fields_.push_back(std::move(next));
        }
    }

    int max_level() const { return static_cast<int>(graphs_.size()) - 1; }
    const LevelGraph& graph(int m) const { return graphs_.at(static_cast<std::size_t>(m)); }
    const LevelGraph& top_graph() const { return graphs_.back(); }
    /// u_{basis} (basis = 1, 2, 3) on level m.
    const EigenfunctionField& field(int basis, int m) const {
        return fields_.at(static_cast<std::size_t>(m)).at(static_cast<std::size_t>(basis - 1));
    }
    const std::vector<double>& lambdas() const { return lambdas_; }

    /// (u_1, u_2, u_3) at q_{omega,i}, read from the top level.
    std::array<double, 3> values_at(const Address& a) const {
        const VertexId id = top_graph().id_of(a);
        const int m = max_level();
        return {field(1, m)[id], field(2, m)[id], field(3, m)[id]};
    }

    /// c1 u_1 + c2 u_2 + c3 u_3 on level m.
    EigenfunctionField combination(const std::array<double, 3>& c, int m) const {
        EigenfunctionField u{m, std::vector<double>(graph(m).vertex_count(), 0.0)};
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t v = 0; v < u.values.size(); ++v) u.values[v] += c[b] * field(static_cast<int>(b) + 1, m).values[v];
        return u;
    }

private:
    std::vector<double> lambdas_;
    std::vector<LevelGraph> graphs_;
    std::vector<std::array<EigenfunctionField, 3>> fields_;
};

}  // namespace vicsek
