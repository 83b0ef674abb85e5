#ifndef DIRACFEM_SOLVER_HPP
#define DIRACFEM_SOLVER_HPP

#include <vector>

#include "diracfem/grid2d.hpp"
#include "diracfem/sparse.hpp"

namespace diracfem::solver {

struct CgResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Conjugate gradient for an SPD system; relative residual stopping rule.
/// Non-convergence within maxit is reported, not silent; NaN aborts.
CgResult cg_solve(const SparseMatrixCSR& A, const std::vector<double>& b, double tol = 1e-12,
                  std::size_t maxit = 100000);

/// Point-evaluation constraint matrix: one row per point, columns over the
/// interior (Dirichlet-reduced) index set. Each row holds the at most 4
/// bilinear basis values of the point's cell.
SparseMatrixCSR build_constraints(const grid::CartesianGrid& grid,
                                  const grid::SparseSystem& system,
                                  const std::vector<Point2>& points);

struct SaddleDiagnostics {
    std::size_t outer_iterations = 0;
    std::size_t inner_iterations_total = 0;
    double schur_relative_residual = 0.0;
    double constraint_residual_inf = 0.0;  // ||B u||_inf of the returned solution
    bool converged = false;
};

struct SaddleResult {
    std::vector<double> u;       // interior coefficients
    std::vector<double> lambda;  // one multiplier per constraint point
    SaddleDiagnostics diagnostics;
};

/// Solve A u + B^T lambda = f, B u = 0 by CG on the Schur complement
/// S = B A^{-1} B^T; every S-application uses an inner cg_solve on A.
SaddleResult saddle_solve(const SparseMatrixCSR& A, const SparseMatrixCSR& B,
                          const std::vector<double>& f, double tol_outer = 1e-10,
                          double tol_inner = 1e-12, std::size_t maxit = 10000);

}  // namespace diracfem::solver

#endif
