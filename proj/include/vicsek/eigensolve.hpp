#pragma once

// Dense eigensolver for -Delta_m. The operator I - D^{-1}A is similar to the
// symmetric I - D^{-1/2} A D^{-1/2}; we diagonalize the latter.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "graph.hpp"

namespace vicsek {

inline constexpr double kMultiplicityGap = 1e-8;

struct EigenGroup {
    double value;
    int multiplicity;
};

struct DenseSpectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal, symmetrized basis (columns)
    std::vector<EigenGroup> groups;

    /// Multiplicity of the group nearest `value` within tol, 0 if none.
    int multiplicity_of(double value, double tol) const {
        for (const auto& g : groups)
            if (std::abs(g.value - value) <= tol) return g.multiplicity;
        return 0;
    }
};

/// Groups ascending eigenvalues; a new group starts when the gap exceeds
/// kMultiplicityGap * max(1, |value|).
inline std::vector<EigenGroup> group_eigenvalues(const Eigen::VectorXd& sorted) {
    std::vector<EigenGroup> groups;
    for (Eigen::Index i = 0; i < sorted.size(); ++i) {
        const double v = sorted[i];
        if (!groups.empty() && v - sorted[i - 1] <= kMultiplicityGap * std::max(1.0, std::abs(v))) {
            auto& g = groups.back();
            g.value = (g.value * g.multiplicity + v) / (g.multiplicity + 1);
            ++g.multiplicity;
        } else {
            groups.push_back({v, 1});
        }
    }
    return groups;
}

inline DenseSpectrum dense_eigensolve_symmetric(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw convergence_failure("dense eigensolve failed");
    DenseSpectrum s;
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors();
    s.groups = group_eigenvalues(s.eigenvalues);
    return s;
}

/// D^{1/2} (-Delta_m) D^{-1/2} = I - D^{-1/2} A D^{-1/2}.
inline Eigen::MatrixXd symmetrized_laplacian(const LevelGraph& g) {
    check_dense_cap(g);
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n);
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        for (VertexId y : g.neighbors(x)) S(x, y) -= 1.0 / std::sqrt(double(g.degree(x)) * g.degree(y));
    return S;
}

inline DenseSpectrum dense_eigensolve(const LevelGraph& g) { return dense_eigensolve_symmetric(symmetrized_laplacian(g)); }

}  // namespace vicsek
