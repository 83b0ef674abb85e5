#ifndef DIRACFEM_QUADRATURE_HPP
#define DIRACFEM_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace diracfem {

/// One-dimensional Gauss-Legendre rule on a reference interval [0, 1].
struct GaussRule1D {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
/// Computed by Newton iteration on the Legendre polynomial; cached per order.
const GaussRule1D& gauss_rule(std::size_t n);

/// Integrate f over [a, b] with the n-point Gauss rule.
template <typename F>
double gauss_integrate(F&& f, double a, double b, std::size_t n) {
    const GaussRule1D& rule = gauss_rule(n);
    const double len = b - a;
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.points.size(); ++k)
        sum += rule.weights[k] * f(a + len * rule.points[k]);
    return len * sum;
}

/// Tensor-product quadrature rule on the reference cell [0,1]^2.
///
/// `order` is the number of Gauss points per axis. `cut_cell_depth` controls
/// how many times a cell is quadrisected when it meets a cut curve before the
/// rule is applied on the leaf sub-cells.
struct QuadRule {
    std::size_t order = 5;
    std::size_t cut_cell_depth = 3;
    std::size_t cut_cell_order = 3;
};

}  // namespace diracfem

#endif
