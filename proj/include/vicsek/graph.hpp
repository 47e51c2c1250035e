#pragma once

// Level-m graph approximations of the Vicsek set and their Neumann Laplacians.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "words.hpp"

namespace vicsek {

using VertexId = std::uint32_t;

inline constexpr int kDefaultGraphLevelCap = 8;

/// Level-m graph Gamma_m. Vertex ids follow first appearance while visiting
/// the 5^m cells in lexicographic word order, corners 1..4 within a cell.
class LevelGraph {
public:
    int level() const noexcept { return level_; }
    std::size_t vertex_count() const noexcept { return lattice_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Coordinates in units of 1/(2*3^level).
    const std::array<std::int64_t, 2>& lattice(VertexId v) const { return lattice_[v]; }
    std::int64_t lattice_denominator() const noexcept { return 2 * pow3(level_); }

    ExactPoint point(VertexId v) const {
        const auto& X = lattice_[v];
        return {Rational(X[0], lattice_denominator()), Rational(X[1], lattice_denominator())};
    }

    int degree(VertexId v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }

    const std::vector<std::pair<VertexId, VertexId>>& edges() const noexcept { return edges_; }

    /// Ids of q_1..q_4.
    const std::array<VertexId, 4>& boundary_ids() const noexcept { return boundary_; }
    bool is_boundary(VertexId v) const {
        for (VertexId b : boundary_)
            if (b == v) return true;
        return false;
    }

    /// Corner ids of the level-m cell with the given word rank.
    const std::array<VertexId, 4>& cell(std::uint64_t rank) const { return cells_[rank]; }
    std::size_t cell_count() const noexcept { return cells_.size(); }

    /// Vertex at exact lattice coordinates (units of 1/(2*3^level)), if present.
    std::optional<VertexId> find(const std::array<std::int64_t, 2>& X) const {
        auto it = index_.find(key(X));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<VertexId> find(const ExactPoint& p) const {
        const std::int64_t den = lattice_denominator();
        const Rational sx = p.x * den, sy = p.y * den;
        if (sx.denominator() != 1 || sy.denominator() != 1) return std::nullopt;
        return find(std::array<std::int64_t, 2>{sx.numerator(), sy.numerator()});
    }

    /// Vertex id of q_{omega,i}; requires |omega| <= level.
    VertexId id_of(const Address& a) const {
        if (static_cast<int>(a.word.size()) > level_)
            throw level_mismatch("address " + a.str() + " is deeper than graph level " + std::to_string(level_));
        auto id = find(lattice_point(a.word, a.corner, level_));
        if (!id) throw consistency_error("address " + a.str() + " not found in graph");
        return *id;
    }

    friend LevelGraph build_graph(int level, int level_cap);

private:
    std::uint64_t key(const std::array<std::int64_t, 2>& X) const {
        return static_cast<std::uint64_t>(X[0]) * static_cast<std::uint64_t>(lattice_denominator() + 1) +
               static_cast<std::uint64_t>(X[1]);
    }

    int level_ = 0;
    std::vector<std::array<std::int64_t, 2>> lattice_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> neighbors_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::array<VertexId, 4> boundary_{};
    std::vector<std::array<VertexId, 4>> cells_;
    std::unordered_map<std::uint64_t, VertexId> index_;
};

/// Builds Gamma_m as the union of the images of K4 under all F_omega, |omega| = m.
inline LevelGraph build_graph(int level, int level_cap = kDefaultGraphLevelCap) {
    if (level < 0) throw domain_error("graph level must be >= 0");
    if (level > level_cap)
        throw resource_limit("graph level " + std::to_string(level) + " exceeds cap " + std::to_string(level_cap));

    LevelGraph g;
    g.level_ = level;
    std::uint64_t n_cells = 1;
    for (int k = 0; k < level; ++k) n_cells *= kAlphabetSize;
    g.cells_.resize(n_cells);
    g.lattice_.reserve(3 * n_cells + 1);
    g.index_.reserve(3 * n_cells + 1);
    g.edges_.reserve(6 * n_cells);

    std::vector<int> letters(static_cast<std::size_t>(level), 1);
    for (std::uint64_t rank = 0; rank < n_cells; ++rank) {
        Word w(std::vector<Letter>(letters.begin(), letters.end()));
        auto& ids = g.cells_[rank];
        for (int c = 1; c <= kCorners; ++c) {
            const auto X = lattice_point(w, c, level);
            auto [it, inserted] = g.index_.try_emplace(g.key(X), static_cast<VertexId>(g.lattice_.size()));
            if (inserted) g.lattice_.push_back(X);
            ids[static_cast<std::size_t>(c - 1)] = it->second;
        }
        for (int i = 0; i < kCorners; ++i)
            for (int j = i + 1; j < kCorners; ++j) g.edges_.emplace_back(ids[i], ids[j]);
        // Next word in lexicographic order.
        for (int pos = level - 1; pos >= 0; --pos) {
            if (++letters[static_cast<std::size_t>(pos)] <= kAlphabetSize) break;
            letters[static_cast<std::size_t>(pos)] = 1;
        }
    }

    const std::size_t n = g.lattice_.size();
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [u, v] : g.edges_) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : g.edges_) {
        g.neighbors_[fill[u]++] = v;
        g.neighbors_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v)
        std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));

    for (int c = 1; c <= kCorners; ++c) g.boundary_[static_cast<std::size_t>(c - 1)] = *g.find(lattice_point(Word{}, c, level));
    return g;
}

/// Real-valued function on the vertices of a LevelGraph, indexed by vertex id.
struct EigenfunctionField {
    int level = 0;
    std::vector<double> values;

    double operator[](VertexId v) const { return values[v]; }
    double& operator[](VertexId v) { return values[v]; }

    friend EigenfunctionField operator+(const EigenfunctionField& a, const EigenfunctionField& b) {
        if (a.level != b.level) throw level_mismatch("adding fields of different levels");
        EigenfunctionField r = a;
        for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
        return r;
    }

    friend EigenfunctionField operator*(double s, const EigenfunctionField& a) {
        EigenfunctionField r = a;
        for (double& v : r.values) v *= s;
        return r;
    }
};

inline void check_level(const LevelGraph& g, const EigenfunctionField& u) {
    if (u.level != g.level() || u.values.size() != g.vertex_count())
        throw level_mismatch("field of level " + std::to_string(u.level) + " used with graph of level " +
                             std::to_string(g.level()));
}

/// Field from values on q_1..q_4; requires a level-0 graph.
inline EigenfunctionField boundary_field(const LevelGraph& g0, const std::array<double, 4>& corner_values) {
    if (g0.level() != 0) throw level_mismatch("boundary_field needs the level-0 graph");
    EigenfunctionField u{0, std::vector<double>(4, 0.0)};
    for (std::size_t i = 0; i < 4; ++i) u[g0.boundary_ids()[i]] = corner_values[i];
    return u;
}

/// (-Delta_m u)(x) = u(x) - (1/deg x) sum_{y~x} u(y) at every vertex, boundary included.
inline std::vector<double> apply_neumann_laplacian(const LevelGraph& g, std::span<const double> u) {
    if (u.size() != g.vertex_count()) throw level_mismatch("field size does not match graph");
    std::vector<double> out(u.size());
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        double s = 0.0;
        for (VertexId y : g.neighbors(x)) s += u[y];
        out[x] = u[x] - s / g.degree(x);
    }
    return out;
}

/// max_x |(-Delta_m u)(x) - lambda u(x)|
inline double eigen_residual(const LevelGraph& g, const EigenfunctionField& u, double lambda) {
    check_level(g, u);
    const auto Lu = apply_neumann_laplacian(g, u.values);
    double r = 0.0;
    for (std::size_t i = 0; i < Lu.size(); ++i) r = std::max(r, std::abs(Lu[i] - lambda * u.values[i]));
    return r;
}

/// Level cap for dense matrices; VICSEK_LEVEL_CAP overrides it within [0, 6].
inline int dense_level_cap() {
    constexpr int kDefault = 4, kHardMax = 6;
    if (const char* env = std::getenv("VICSEK_LEVEL_CAP")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0 && v <= kHardMax) return static_cast<int>(v);
    }
    return kDefault;
}

inline void check_dense_cap(const LevelGraph& g) {
    if (g.level() > dense_level_cap())
        throw resource_limit("dense matrix for level " + std::to_string(g.level()) + " exceeds dense cap " +
                             std::to_string(dense_level_cap()));
}

/// Matrix of -Delta_m: 1 on the diagonal, -1/deg(x) at (x,y) for y ~ x.
inline Eigen::MatrixXd neumann_laplacian(const LevelGraph& g) {
    check_dense_cap(g);
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        for (VertexId y : g.neighbors(x)) L(x, y) -= 1.0 / g.degree(x);
    return L;
}

/// E_m(u) = sum over edges |u(x)-u(y)|^2; renormalized: 3^{-m} E_m(u).
inline double graph_energy(const LevelGraph& g, const EigenfunctionField& u, bool renormalized) {
    check_level(g, u);
    double e = 0.0;
    for (const auto& [x, y] : g.edges()) {
        const double d = u[x] - u[y];
        e += d * d;
    }
    return renormalized ? e / static_cast<double>(pow3(g.level())) : e;
}

}  // namespace vicsek
