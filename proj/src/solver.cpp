#include "diracfem/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace diracfem::solver {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

CgResult cg_solve(const SparseMatrixCSR& A, const std::vector<double>& b, double tol,
                  std::size_t maxit) {
    const std::size_t n = b.size();
    CgResult res;
    res.x.assign(n, 0.0);

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }

    std::vector<double> r = b;  // r = b - A*0
    std::vector<double> p = r;
    std::vector<double> Ap(n);
    double rr = dot(r, r);

    for (std::size_t it = 0; it < maxit; ++it) {
        A.apply(p, Ap);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0))
            throw std::runtime_error("cg_solve: matrix is not positive definite on the Krylov space");
        const double alpha = rr / pAp;
        axpy(alpha, p, res.x);
        axpy(-alpha, Ap, r);
        const double rr_new = dot(r, r);
        if (std::isnan(rr_new)) throw std::runtime_error("cg_solve: NaN encountered");
        res.iterations = it + 1;
        if (std::sqrt(rr_new) <= tol * bnorm) {
            res.converged = true;
            res.relative_residual = std::sqrt(rr_new) / bnorm;
            return res;
        }
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    res.relative_residual = std::sqrt(rr) / bnorm;
    res.converged = false;
    return res;
}

SparseMatrixCSR build_constraints(const grid::CartesianGrid& grid,
                                  const grid::SparseSystem& system,
                                  const std::vector<Point2>& points) {
    if (!system.reduced)
        throw std::invalid_argument("build_constraints: Dirichlet-reduced system required");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("build_constraints: duplicate constraint points");

    std::vector<Triplet> trip;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i][0] <= 0.0 || points[i][0] >= 1.0 || points[i][1] <= 0.0 ||
            points[i][1] >= 1.0)
            throw std::invalid_argument("build_constraints: points must be strictly interior");
        const grid::Q1Eval e = grid::q1_eval(grid, points[i]);
        for (int k = 0; k < 4; ++k) {
            const std::size_t col = system.node_to_interior[e.nodes[k]];
            if (col == SparseMatrixCSR::npos) continue;  // boundary node, eliminated
            if (e.values[k] != 0.0) trip.push_back({i, col, e.values[k]});
        }
    }
    return SparseMatrixCSR::from_triplets(points.size(), system.interior_to_node.size(),
                                          std::move(trip));
}

SaddleResult saddle_solve(const SparseMatrixCSR& A, const SparseMatrixCSR& B,
                          const std::vector<double>& f, double tol_outer, double tol_inner,
                          std::size_t maxit) {
    SaddleResult res;
    std::size_t inner_total = 0;

    const auto solve_A = [&](const std::vector<double>& rhs) {
        CgResult r = cg_solve(A, rhs, tol_inner);
        if (!r.converged) throw std::runtime_error("saddle_solve: inner CG did not converge");
        inner_total += r.iterations;
        return std::move(r.x);
    };

    const std::size_t m = B.rows();
    if (m == 0) {
        res.u = solve_A(f);
        res.diagnostics.converged = true;
        res.diagnostics.inner_iterations_total = inner_total;
        return res;
    }

    // Schur right-hand side g = B A^{-1} f.
    const std::vector<double> u0 = solve_A(f);
    const std::vector<double> g = B.apply(u0);

    const auto apply_S = [&](const std::vector<double>& mu) {
        return B.apply(solve_A(B.apply_transpose(mu)));
    };

    // CG on S lambda = g.
    std::vector<double> lambda(m, 0.0);
    std::vector<double> r = g;
    std::vector<double> p = r;
    double rr = dot(r, r);
    const double gnorm = norm2(g);
    std::size_t outer = 0;
    bool converged = gnorm == 0.0;
    while (!converged && outer < maxit) {
        const std::vector<double> Sp = apply_S(p);
        const double pSp = dot(p, Sp);
        if (!(pSp > 0.0))
            throw std::runtime_error(
                "saddle_solve: Schur complement not positive definite; constraints may be "
                "rank deficient (htilde < h crowds constraints per cell)");
        const double alpha = rr / pSp;
        axpy(alpha, p, lambda);
        axpy(-alpha, Sp, r);
        const double rr_new = dot(r, r);
        if (std::isnan(rr_new)) throw std::runtime_error("saddle_solve: NaN encountered");
        ++outer;
        if (std::sqrt(rr_new) <= tol_outer * gnorm) {
            converged = true;
            rr = rr_new;
            break;
        }
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < m; ++i) p[i] = r[i] + beta * p[i];
    }

    // Back-substitution: u = A^{-1} (f - B^T lambda).
    std::vector<double> rhs = B.apply_transpose(lambda);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = f[i] - rhs[i];
    res.u = solve_A(rhs);
    res.lambda = std::move(lambda);

    const std::vector<double> Bu = B.apply(res.u);
    double binf = 0.0;
    for (double v : Bu) binf = std::max(binf, std::abs(v));

    res.diagnostics.outer_iterations = outer;
    res.diagnostics.inner_iterations_total = inner_total;
    res.diagnostics.schur_relative_residual = gnorm == 0.0 ? 0.0 : std::sqrt(rr) / gnorm;
    res.diagnostics.constraint_residual_inf = binf;
    res.diagnostics.converged = converged;
    return res;
}

}  // namespace diracfem::solver
