#include "qcdist/parameterize.hpp"

#include "qcdist/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <numbers>
#include <string>

namespace qcdist {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

double cot_at(const Vec3& apex, const Vec3& p, const Vec3& q) {
    const Vec3 u = p - apex, v = q - apex;
    return u.dot(v) / u.cross(v).norm();
}

/// Symmetric edge weights as triplets (i, j, w) with i ≠ j, duplicates summed.
std::vector<Triplet> edge_weights(const TriMesh& mesh, TutteWeights kind) {
    std::vector<Triplet> w;
    w.reserve(6 * mesh.num_faces());
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const Face& t = mesh.face(f);
        for (int k = 0; k < 3; ++k) {
            const Index i = t[(k + 1) % 3], j = t[(k + 2) % 3];
            double weight;
            if (kind == TutteWeights::Uniform) {
                // Each interior edge is seen from two faces.
                weight = 0.5;
            } else {
                weight = 0.5 * cot_at(mesh.vertex(t[k]), mesh.vertex(i), mesh.vertex(j));
            }
            w.emplace_back(i, j, weight);
            w.emplace_back(j, i, weight);
        }
    }
    return w;
}

}  // namespace

TutteResult tutte_disk(const TriMesh& mesh, const ParamConfig& config) {
    if (!(config.solverTolerance > 0.0)) throw DomainError("solverTolerance must be positive");

    const auto loops = boundary_loops(mesh);
    if (loops.size() != 1)
        throw TopologyError("disk parameterization needs exactly one boundary loop, found " +
                            std::to_string(loops.size()));
    const long long euler = static_cast<long long>(mesh.num_vertices()) -
                            static_cast<long long>(edge_count(mesh)) + static_cast<long long>(mesh.num_faces());
    if (euler != 1)
        throw TopologyError("disk parameterization needs Euler characteristic 1, found " + std::to_string(euler));

    const auto& boundary = loops.front();
    const std::size_t n = mesh.num_vertices();

    // Boundary positions, arc-length proportional, counter-clockwise.
    std::vector<double> cumulative(boundary.size() + 1, 0.0);
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        const auto& a = mesh.vertex(boundary[k]);
        const auto& b = mesh.vertex(boundary[(k + 1) % boundary.size()]);
        cumulative[k + 1] = cumulative[k] + (b - a).norm();
    }
    constexpr std::ptrdiff_t kBoundary = -1;
    std::vector<std::ptrdiff_t> unknown(n, 0);
    std::vector<Vec3> uv(n, Vec3::Zero());
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        const double t = 2.0 * std::numbers::pi * cumulative[k] / cumulative.back();
        uv[boundary[k]] = Vec3(std::cos(t), std::sin(t), 0.0);
        unknown[boundary[k]] = kBoundary;
    }
    std::ptrdiff_t interior = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (unknown[v] != kBoundary) unknown[v] = interior++;

    TutteResult result{MeshMap(mesh, mesh)};
    result.boundaryVertices = boundary.size();
    result.interiorVertices = static_cast<std::size_t>(interior);

    if (interior > 0) {
        // Σ_j w_ij (x_i − x_j) = 0 for interior i, boundary x_j moved to the rhs.
        std::vector<Triplet> entries;
        Eigen::MatrixX2d rhs = Eigen::MatrixX2d::Zero(interior, 2);
        for (const auto& w : edge_weights(mesh, config.weights)) {
            const auto i = unknown[w.row()], j = unknown[w.col()];
            if (i == kBoundary) continue;
            entries.emplace_back(i, i, w.value());
            if (j == kBoundary) {
                rhs.row(i) += w.value() * uv[w.col()].head<2>().transpose();
            } else {
                entries.emplace_back(i, j, -w.value());
            }
        }
        SpMat L(interior, interior);
        L.setFromTriplets(entries.begin(), entries.end());
        L.makeCompressed();

        Eigen::MatrixX2d x;
        bool solved = false;
        if (config.solver == LinearSolver::Direct) {
            Eigen::SimplicialLDLT<SpMat> ldlt(L);
            if (ldlt.info() == Eigen::Success) {
                x = ldlt.solve(rhs);
                if (ldlt.info() == Eigen::Success) {
                    // One refinement step keeps the residual at round-off level.
                    x += ldlt.solve(rhs - L * x);
                    solved = true;
                    result.solverUsed = LinearSolver::Direct;
                }
            }
        }
        if (!solved) {
            Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg(L);
            cg.setMaxIterations(static_cast<Eigen::Index>(config.maxIterations));
            const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
            cg.setTolerance(1e-3 * config.solverTolerance / scale);
            x.resize(interior, 2);
            for (int c = 0; c < 2; ++c) {
                x.col(c) = cg.solve(rhs.col(c));
                result.iterations += static_cast<std::size_t>(cg.iterations());
            }
            result.solverUsed = LinearSolver::Iterative;
        }
        result.residual = (L * x - rhs).cwiseAbs().maxCoeff();
        if (!std::isfinite(result.residual) || result.residual > config.solverTolerance)
            throw SolverError("Tutte system residual " + std::to_string(result.residual) + " exceeds tolerance " +
                              std::to_string(config.solverTolerance));
        for (std::size_t v = 0; v < n; ++v)
            if (unknown[v] != kBoundary) uv[v] = Vec3(x(unknown[v], 0), x(unknown[v], 1), 0.0);
    }

    result.map = MeshMap(mesh, TriMesh(std::move(uv), mesh.faces(), 2));
    return result;
}

}  // namespace qcdist
