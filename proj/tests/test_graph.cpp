#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include <vicsek/csv.hpp>
#include <vicsek/eigensolve.hpp>
#include <vicsek/graph.hpp>

using namespace vicsek;

namespace {

std::uint64_t pow5(int m) {
    std::uint64_t r = 1;
    for (int k = 0; k < m; ++k) r *= 5;
    return r;
}

}  // namespace

TEST(Graph, VertexCountsFollowFormula) {
    for (int m = 0; m <= 6; ++m) {
        const auto g = build_graph(m);
        EXPECT_EQ(g.vertex_count(), 3 * pow5(m) + 1) << "m=" << m;
        EXPECT_EQ(g.edge_count(), 6 * pow5(m)) << "m=" << m;
    }
}

TEST(Graph, VertexSetMatchesProjectedAddresses) {
    // Oracle: distinct exact points among all level-m addresses.
    for (int m = 0; m <= 3; ++m) {
        std::set<std::pair<Rational, Rational>> pts;
        for (const auto& w : enumerate_words(m))
            if (static_cast<int>(w.size()) == m)
                for (int c = 1; c <= 4; ++c) {
                    const auto p = project({w, c});
                    pts.insert({p.x, p.y});
                }
        const auto g = build_graph(m);
        ASSERT_EQ(pts.size(), g.vertex_count());
        for (VertexId v = 0; v < g.vertex_count(); ++v) EXPECT_TRUE(pts.count({g.point(v).x, g.point(v).y}));
    }
}

TEST(Graph, DegreesAndHandshake) {
    for (int m = 0; m <= 6; ++m) {
        const auto g = build_graph(m);
        std::map<int, std::size_t> hist;
        std::uint64_t sum = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            ++hist[g.degree(v)];
            sum += static_cast<std::uint64_t>(g.degree(v));
        }
        EXPECT_EQ(sum, 12 * pow5(m));
        for (const auto& [d, n] : hist) EXPECT_TRUE(d == 3 || d == 6) << "degree " << d;
        // Every boundary point has degree 3.
        for (VertexId b : g.boundary_ids()) EXPECT_EQ(g.degree(b), 3);
    }
}

TEST(Graph, LevelOneExample) {
    const auto g = build_graph(1);
    EXPECT_EQ(g.vertex_count(), 16u);
    int six = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) six += g.degree(v) == 6;
    EXPECT_EQ(six, 4);
    EXPECT_EQ(build_graph(2).vertex_count(), 76u);
}

TEST(Graph, LevelZeroIsCompleteGraph) {
    const auto g = build_graph(0);
    ASSERT_EQ(g.vertex_count(), 4u);
    for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(g.degree(v), 3);
    const auto L = neumann_laplacian(g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(L(i, j), i == j ? 1.0 : -1.0 / 3.0);
}

TEST(Graph, BoundaryIdsAreCorners) {
    const auto g = build_graph(2);
    const std::array<ExactPoint, 4> q{{{Rational(0), Rational(1)},
                                       {Rational(1), Rational(1)},
                                       {Rational(1), Rational(0)},
                                       {Rational(0), Rational(0)}}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(g.point(g.boundary_ids()[i]), q[i]);
        EXPECT_TRUE(g.is_boundary(g.boundary_ids()[i]));
    }
}

TEST(Graph, NestedVertexSets) {
    for (int m = 0; m < 4; ++m) {
        const auto a = build_graph(m), b = build_graph(m + 1);
        for (VertexId v = 0; v < a.vertex_count(); ++v) EXPECT_TRUE(b.find(a.point(v)).has_value());
    }
}

TEST(Graph, LaplacianRowsSumToZero) {
    const auto g = build_graph(3);
    const auto L = neumann_laplacian(g);
    EXPECT_LT(L.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
    std::vector<double> ones(g.vertex_count(), 1.0);
    for (double x : apply_neumann_laplacian(g, ones)) EXPECT_NEAR(x, 0.0, 1e-15);
}

TEST(Graph, MatrixFreeMatchesDense) {
    const auto g = build_graph(2);
    const auto L = neumann_laplacian(g);
    Eigen::VectorXd u(static_cast<Eigen::Index>(g.vertex_count()));
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = std::sin(0.7 * static_cast<double>(i) + 0.1);
    const Eigen::VectorXd dense = L * u;
    const auto mf = apply_neumann_laplacian(g, std::span<const double>(u.data(), static_cast<std::size_t>(u.size())));
    for (Eigen::Index i = 0; i < u.size(); ++i) EXPECT_NEAR(dense(i), mf[static_cast<std::size_t>(i)], 1e-14);
}

TEST(Graph, SymmetrizedSpectrumInUnitInterval) {
    const auto s = dense_eigensolve(build_graph(2));
    EXPECT_GE(s.eigenvalues.minCoeff(), -1e-12);
    EXPECT_LE(s.eigenvalues.maxCoeff(), 2.0 + 1e-12);
}

TEST(Graph, EnergyOfFirstBasisFunction) {
    const auto g = build_graph(0);
    const auto u = boundary_field(g, {1, 0, 0, -1});
    EXPECT_DOUBLE_EQ(graph_energy(g, u, false), 8.0);
    EXPECT_DOUBLE_EQ(graph_energy(g, u, true), 8.0);
}

TEST(Graph, CapsAndErrors) {
    EXPECT_THROW(build_graph(-1), domain_error);
    EXPECT_THROW(build_graph(3, 2), resource_limit);
    EXPECT_THROW(neumann_laplacian(build_graph(5)), resource_limit);
    const auto g1 = build_graph(1);
    const auto g0 = build_graph(0);
    const auto u = boundary_field(g0, {1, 0, 0, -1});
    EXPECT_THROW(eigen_residual(g1, u, 0.5), level_mismatch);
    EXPECT_THROW(boundary_field(g1, {1, 0, 0, 0}), level_mismatch);
}

TEST(Graph, IdOfAddress) {
    const auto g = build_graph(2);
    EXPECT_EQ(g.id_of({Word{1}, 3}), g.id_of({Word{5}, 1}));
    EXPECT_EQ(g.point(g.id_of({Word{1, 5}, 2})), project({Word{1, 5}, 2}));
}

TEST(Csv, VertexAndEdgeTables) {
    const auto g = build_graph(0);
    std::ostringstream v, e;
    write_vertex_csv(v, g);
    write_edge_csv(e, g);
    std::istringstream vs(v.str()), es(e.str());
    std::string line;
    std::getline(vs, line);
    EXPECT_EQ(line, "id,x_num,x_den,y_num,y_den,degree,is_boundary");
    int rows = 0;
    while (std::getline(vs, line)) ++rows;
    EXPECT_EQ(rows, 4);
    std::getline(es, line);
    EXPECT_EQ(line, "source,target");
    rows = 0;
    while (std::getline(es, line)) ++rows;
    EXPECT_EQ(rows, 6);
}

TEST(Csv, ShortestRoundTripFormatting) {
    EXPECT_EQ(format_value(0.5), "0.5");
    EXPECT_EQ(format_value(-1.0), "-1");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_value(x)), x);
}
