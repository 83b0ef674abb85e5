#ifndef DIRACFEM_GRID2D_HPP
#define DIRACFEM_GRID2D_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "diracfem/circle.hpp"
#include "diracfem/quadrature.hpp"
#include "diracfem/sparse.hpp"

namespace diracfem::grid {

/// Uniform n x n cartesian grid on the unit square, nodes at (i/n, j/n) with
/// lexicographic indexing: node(i, j) = j * (n + 1) + i.
struct CartesianGrid {
    std::size_t n;  // cells per side
    double h;       // 1 / n

    std::size_t node_count() const { return (n + 1) * (n + 1); }
    std::size_t cell_count() const { return n * n; }

    std::size_t node_index(std::size_t i, std::size_t j) const { return j * (n + 1) + i; }
    Point2 node_coord(std::size_t idx) const {
        const std::size_t i = idx % (n + 1), j = idx / (n + 1);
        return {static_cast<double>(i) * h, static_cast<double>(j) * h};
    }
    bool is_boundary(std::size_t idx) const {
        const std::size_t i = idx % (n + 1), j = idx / (n + 1);
        return i == 0 || j == 0 || i == n || j == n;
    }
    std::size_t interior_count() const { return (n - 1) * (n - 1); }
};

CartesianGrid build_grid(std::size_t n);

/// Result of locating a point and evaluating the 4 bilinear nodal basis
/// functions of its cell. Local node order is counterclockwise:
/// (ix, iy), (ix+1, iy), (ix+1, iy+1), (ix, iy+1).
struct Q1Eval {
    std::size_t cell_ix, cell_iy;
    std::array<std::size_t, 4> nodes;
    std::array<double, 4> values;
    std::array<Point2, 4> gradients;
};

/// Half-open cell ownership: a cell owns its bottom and left edges; the
/// top-right closure of the square belongs to the last cells.
Q1Eval q1_eval(const CartesianGrid& grid, const Point2& p);

/// Nodal coefficient field on a grid.
struct FeField {
    const CartesianGrid* grid;
    std::vector<double> coeffs;  // one per node
};

double fe_eval(const FeField& field, const Point2& p);
Point2 fe_grad(const FeField& field, const Point2& p);

/// Symmetric sparse stiffness (or reduced) system.
struct SparseSystem {
    SparseMatrixCSR matrix;
    std::vector<double> rhs;
    bool reduced = false;
    // Populated after Dirichlet elimination.
    std::vector<std::size_t> interior_to_node;
    std::vector<std::size_t> node_to_interior;  // npos for boundary nodes
};

/// Full-node stiffness of a(u, v) = int grad u . grad v, exact per-cell
/// integration of the bilinear gradients.
SparseMatrixCSR assemble_stiffness(const CartesianGrid& grid);

/// The h-independent 4x4 cell stiffness in counterclockwise node order.
std::array<std::array<double, 4>, 4> local_stiffness();

/// Visit tensor-Gauss quadrature points cell by cell in lexicographic order;
/// cells meeting `cut` are quadrisected quad.cut_cell_depth times first, with
/// quad.cut_cell_order Gauss points per leaf. fn(point, weight).
void for_each_quadrature_point(const CartesianGrid& grid, const QuadRule& quad,
                               const std::optional<Circle>& cut,
                               const std::function<void(const Point2&, double)>& fn);

/// Load vector entry_j = int f N_j with per-cell tensor Gauss quadrature.
/// Cells meeting `cut` are quadrisected quad.cut_cell_depth times first.
std::vector<double> assemble_volume_load(const CartesianGrid& grid,
                                         const std::function<double(Point2)>& f,
                                         const QuadRule& quad = {},
                                         const std::optional<Circle>& cut = std::nullopt);

/// Symmetric elimination of boundary rows/columns (homogeneous Dirichlet).
SparseSystem apply_dirichlet(const CartesianGrid& grid, const SparseMatrixCSR& matrix,
                             const std::vector<double>& rhs);

/// Expand an interior-only solution vector back to a full nodal field
/// (boundary coefficients exactly zero).
FeField expand_interior(const CartesianGrid& grid, const SparseSystem& system,
                        const std::vector<double>& interior_values);

/// True if the closed cell [ix, ix+1] x [iy, iy+1] (in units of h) meets the
/// circle.
bool cell_intersects_circle(const CartesianGrid& grid, std::size_t ix, std::size_t iy,
                            const Circle& circle);

/// H1 seminorm squared of a field, via the stiffness quadratic form.
double h1_seminorm_sq(const FeField& field, const SparseMatrixCSR& stiffness);

}  // namespace diracfem::grid

#endif
