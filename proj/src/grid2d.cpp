#include "diracfem/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diracfem::grid {

CartesianGrid build_grid(std::size_t n) {
    if (n < 2) throw std::invalid_argument("build_grid: need at least 2 cells per side");
    return {n, 1.0 / static_cast<double>(n)};
}

Q1Eval q1_eval(const CartesianGrid& grid, const Point2& p) {
    if (p[0] < 0.0 || p[0] > 1.0 || p[1] < 0.0 || p[1] > 1.0)
        throw std::out_of_range("q1_eval: point outside the unit square");

    const auto locate = [&](double x) {
        auto ix = static_cast<std::size_t>(std::floor(x / grid.h));
        return std::min(ix, grid.n - 1);
    };
    const std::size_t ix = locate(p[0]);
    const std::size_t iy = locate(p[1]);
    const double u = p[0] / grid.h - static_cast<double>(ix);
    const double v = p[1] / grid.h - static_cast<double>(iy);

    Q1Eval e;
    e.cell_ix = ix;
    e.cell_iy = iy;
    e.nodes = {grid.node_index(ix, iy), grid.node_index(ix + 1, iy),
               grid.node_index(ix + 1, iy + 1), grid.node_index(ix, iy + 1)};
    e.values = {(1.0 - u) * (1.0 - v), u * (1.0 - v), u * v, (1.0 - u) * v};
    const double ih = 1.0 / grid.h;
    e.gradients = {Point2{-(1.0 - v) * ih, -(1.0 - u) * ih},
                   Point2{(1.0 - v) * ih, -u * ih},
                   Point2{v * ih, u * ih},
                   Point2{-v * ih, (1.0 - u) * ih}};
    return e;
}

double fe_eval(const FeField& field, const Point2& p) {
    const Q1Eval e = q1_eval(*field.grid, p);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += field.coeffs[e.nodes[k]] * e.values[k];
    return s;
}

Point2 fe_grad(const FeField& field, const Point2& p) {
    const Q1Eval e = q1_eval(*field.grid, p);
    Point2 g{0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        g[0] += field.coeffs[e.nodes[k]] * e.gradients[k][0];
        g[1] += field.coeffs[e.nodes[k]] * e.gradients[k][1];
    }
    return g;
}

std::array<std::array<double, 4>, 4> local_stiffness() {
    // Exact integral of grad N_a . grad N_b over a square cell; independent
    // of h in two dimensions.
    constexpr double s = 1.0 / 6.0;
    return {{{4 * s, -1 * s, -2 * s, -1 * s},
             {-1 * s, 4 * s, -1 * s, -2 * s},
             {-2 * s, -1 * s, 4 * s, -1 * s},
             {-1 * s, -2 * s, -1 * s, 4 * s}}};
}

SparseMatrixCSR assemble_stiffness(const CartesianGrid& grid) {
    const auto local = local_stiffness();
    std::vector<Triplet> trip;
    trip.reserve(grid.cell_count() * 16);
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        for (std::size_t ix = 0; ix < grid.n; ++ix) {
            const std::array<std::size_t, 4> nodes = {
                grid.node_index(ix, iy), grid.node_index(ix + 1, iy),
                grid.node_index(ix + 1, iy + 1), grid.node_index(ix, iy + 1)};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    trip.push_back({nodes[a], nodes[b], local[a][b]});
        }
    }
    return SparseMatrixCSR::from_triplets(grid.node_count(), grid.node_count(), std::move(trip));
}

bool cell_intersects_circle(const CartesianGrid& grid, std::size_t ix, std::size_t iy,
                            const Circle& circle) {
    const double x0 = static_cast<double>(ix) * grid.h, x1 = x0 + grid.h;
    const double y0 = static_cast<double>(iy) * grid.h, y1 = y0 + grid.h;
    const double cx = circle.center[0], cy = circle.center[1];
    // Nearest and farthest points of the closed cell from the center.
    const double dx_near = std::max({x0 - cx, 0.0, cx - x1});
    const double dy_near = std::max({y0 - cy, 0.0, cy - y1});
    const double dmin = std::hypot(dx_near, dy_near);
    const double dx_far = std::max(cx - x0, x1 - cx);
    const double dy_far = std::max(cy - y0, y1 - cy);
    const double dmax = std::hypot(dx_far, dy_far);
    return dmin <= circle.radius && circle.radius <= dmax;
}

namespace {

struct Rect {
    double x0, y0, x1, y1;
};

bool rect_intersects_circle(const Rect& r, const Circle& c) {
    const double dx_near = std::max({r.x0 - c.center[0], 0.0, c.center[0] - r.x1});
    const double dy_near = std::max({r.y0 - c.center[1], 0.0, c.center[1] - r.y1});
    const double dmin = std::hypot(dx_near, dy_near);
    const double dx_far = std::max(c.center[0] - r.x0, r.x1 - c.center[0]);
    const double dy_far = std::max(c.center[1] - r.y0, r.y1 - c.center[1]);
    const double dmax = std::hypot(dx_far, dy_far);
    return dmin <= c.radius && c.radius <= dmax;
}

// Tensor Gauss on a rectangle, accumulating f(x) N_j(x) into the load.
template <typename Accum>
void quad_on_rect(const Rect& r, std::size_t order, Accum&& acc) {
    const GaussRule1D& g = gauss_rule(order);
    for (std::size_t kx = 0; kx < g.points.size(); ++kx) {
        const double x = r.x0 + (r.x1 - r.x0) * g.points[kx];
        for (std::size_t ky = 0; ky < g.points.size(); ++ky) {
            const double y = r.y0 + (r.y1 - r.y0) * g.points[ky];
            const double w = (r.x1 - r.x0) * (r.y1 - r.y0) * g.weights[kx] * g.weights[ky];
            acc(Point2{x, y}, w);
        }
    }
}

template <typename Accum>
void quad_on_cut_rect(const Rect& r, const Circle& c, std::size_t depth, std::size_t order,
                      Accum&& acc) {
    if (depth == 0 || !rect_intersects_circle(r, c)) {
        quad_on_rect(r, order, acc);
        return;
    }
    const double xm = 0.5 * (r.x0 + r.x1), ym = 0.5 * (r.y0 + r.y1);
    quad_on_cut_rect({r.x0, r.y0, xm, ym}, c, depth - 1, order, acc);
    quad_on_cut_rect({xm, r.y0, r.x1, ym}, c, depth - 1, order, acc);
    quad_on_cut_rect({r.x0, ym, xm, r.y1}, c, depth - 1, order, acc);
    quad_on_cut_rect({xm, ym, r.x1, r.y1}, c, depth - 1, order, acc);
}

}  // namespace

void for_each_quadrature_point(const CartesianGrid& grid, const QuadRule& quad,
                               const std::optional<Circle>& cut,
                               const std::function<void(const Point2&, double)>& fn) {
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        for (std::size_t ix = 0; ix < grid.n; ++ix) {
            const Rect cell{static_cast<double>(ix) * grid.h, static_cast<double>(iy) * grid.h,
                            static_cast<double>(ix + 1) * grid.h,
                            static_cast<double>(iy + 1) * grid.h};
            if (cut && cell_intersects_circle(grid, ix, iy, *cut))
                quad_on_cut_rect(cell, *cut, quad.cut_cell_depth, quad.cut_cell_order, fn);
            else
                quad_on_rect(cell, quad.order, fn);
        }
    }
}

std::vector<double> assemble_volume_load(const CartesianGrid& grid,
                                         const std::function<double(Point2)>& f,
                                         const QuadRule& quad,
                                         const std::optional<Circle>& cut) {
    std::vector<double> load(grid.node_count(), 0.0);
    for_each_quadrature_point(grid, quad, cut, [&](const Point2& p, double w) {
        const double fv = f(p);
        if (fv == 0.0) return;
        const Q1Eval e = q1_eval(grid, p);
        for (int k = 0; k < 4; ++k) load[e.nodes[k]] += w * fv * e.values[k];
    });
    return load;
}

SparseSystem apply_dirichlet(const CartesianGrid& grid, const SparseMatrixCSR& matrix,
                             const std::vector<double>& rhs) {
    SparseSystem sys;
    sys.reduced = true;
    sys.node_to_interior.assign(grid.node_count(), SparseMatrixCSR::npos);
    sys.interior_to_node.reserve(grid.interior_count());
    for (std::size_t idx = 0; idx < grid.node_count(); ++idx) {
        if (grid.is_boundary(idx)) continue;
        sys.node_to_interior[idx] = sys.interior_to_node.size();
        sys.interior_to_node.push_back(idx);
    }
    sys.matrix = matrix.restrict_symmetric(sys.node_to_interior, sys.interior_to_node.size());
    sys.rhs.resize(sys.interior_to_node.size());
    for (std::size_t k = 0; k < sys.interior_to_node.size(); ++k)
        sys.rhs[k] = rhs[sys.interior_to_node[k]];
    return sys;
}

FeField expand_interior(const CartesianGrid& grid, const SparseSystem& system,
                        const std::vector<double>& interior_values) {
    FeField f{&grid, std::vector<double>(grid.node_count(), 0.0)};
    for (std::size_t k = 0; k < system.interior_to_node.size(); ++k)
        f.coeffs[system.interior_to_node[k]] = interior_values[k];
    return f;
}

double h1_seminorm_sq(const FeField& field, const SparseMatrixCSR& stiffness) {
    const std::vector<double> Ax = stiffness.apply(field.coeffs);
    double s = 0.0;
    for (std::size_t i = 0; i < Ax.size(); ++i) s += field.coeffs[i] * Ax[i];
    return s;
}

}  // namespace diracfem::grid
