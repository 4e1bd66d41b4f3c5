#pragma once

#include "qcdist/beltrami.hpp"

#include <cstddef>

namespace qcdist {

enum class TutteWeights { Uniform, Cotangent };
enum class BoundaryShape { UnitCircle };
enum class LinearSolver { Direct, Iterative };

struct ParamConfig {
    TutteWeights weights = TutteWeights::Uniform;
    BoundaryShape boundaryShape = BoundaryShape::UnitCircle;
    double solverTolerance = 1e-10;
    std::size_t maxIterations = 10000;
    /// Direct is tried first; Iterative skips straight to conjugate gradients.
    LinearSolver solver = LinearSolver::Direct;
};

struct TutteResult {
    MeshMap map;
    /// ‖L_II x − b‖∞ over both coordinate solves.
    double residual = 0.0;
    LinearSolver solverUsed = LinearSolver::Direct;
    /// Conjugate-gradient iterations (0 for the direct path).
    std::size_t iterations = 0;
    std::size_t interiorVertices = 0;
    std::size_t boundaryVertices = 0;
};

/// Maps a disk-topology mesh to the unit disk. Boundary vertices go to the
/// unit circle counter-clockwise, spaced by boundary edge length; interior
/// vertices solve the weighted Laplace system. Uniform weights give a fold-free
/// embedding; raw cotangent weights may fold, which is reported downstream.
///
/// Throws TopologyError (not exactly one boundary loop, or V − E + F ≠ 1),
/// SolverError (residual above config.solverTolerance), DomainError (bad config).
TutteResult tutte_disk(const TriMesh& mesh, const ParamConfig& config = {});

}  // namespace qcdist
