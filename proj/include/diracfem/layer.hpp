#ifndef DIRACFEM_LAYER_HPP
#define DIRACFEM_LAYER_HPP

#include <variant>
#include <vector>

#include "diracfem/circle.hpp"
#include "diracfem/grid2d.hpp"
#include "diracfem/oned_layer.hpp"

namespace diracfem::layer {

using oned::CollocationRule;

/// Equal-arc partition of a circle with one collocation point per arc.
struct CurvePartition {
    Circle circle;
    std::size_t arc_count;               // N
    double htilde;                       // actual arc length 2 pi R / N
    std::vector<double> arc_angles;      // theta_0 .. theta_N (theta_N = theta_0 + 2 pi)
    std::vector<double> collocation;     // angle of x_i, one per arc

    double arc_length(std::size_t) const { return htilde; }
    Point2 collocation_point(std::size_t i) const { return circle.at_angle(collocation[i]); }
};

/// N = ceil(2 pi R / target_htilde) equal arcs; collocation per rule
/// (default: arc midpoint).
CurvePartition partition_circle(const Circle& circle, double target_htilde,
                                CollocationRule rule = CollocationRule::midpoint());

/// Density on the layer: a constant, the 1D power x^{s-1}, or a finite sine
/// series sum_n c_n sin(n theta) in the circle's polar angle.
struct ConstantDensity {
    double value;
};
struct PowerDensity1D {
    double s;  // > 0
};
struct SineSeriesDensity {
    std::vector<double> coefficients;  // c_1 .. c_N

    double eval(double theta) const;
};
using LayerDensity = std::variant<ConstantDensity, PowerDensity1D, SineSeriesDensity>;

/// Combination of Dirac masses sum_i lambda_i delta_{x_i} on the curve.
struct DiracLayer {
    std::vector<Point2> points;
    std::vector<double> weights;
};

/// Weights lambda_i = int_{gamma_i} phi ds, in closed form (constant: c
/// |gamma_i|; sine series: R sum_n c_n (cos n theta_i - cos n theta_{i+1}) / n).
/// The 1D power density is rejected here.
DiracLayer layer_weights(const LayerDensity& density, const CurvePartition& partition);

/// Load vector entry_j = sum_i lambda_i N_j(x_i) over the full node set.
/// Points on or outside the boundary of the unit square are an error.
std::vector<double> assemble_dirac_load(const grid::CartesianGrid& grid,
                                        const DiracLayer& dirac);

/// Angles in [0, 2 pi) where the circle crosses a grid line x = k h or
/// y = k h, solved analytically; sorted, deduplicated.
std::vector<double> grid_crossing_angles(const Circle& circle, double h);

/// sqrt( int_gamma |grad v_h|^2 ds ), split at cell-boundary crossings,
/// fixed Gauss rule per smooth piece.
double discrete_trace_seminorm(const grid::FeField& field, const Circle& circle,
                               std::size_t gauss_order = 4);

/// int_gamma phi v_h ds by arc quadrature split at cell crossings; reference
/// value for Dirac-approximation error measurements.
double pairing_exact(const LayerDensity& density, const grid::FeField& field,
                     const Circle& circle, std::size_t gauss_order = 6);

/// sum_i lambda_i v_h(x_i), the Dirac side of the pairing.
double pairing_dirac(const DiracLayer& dirac, const grid::FeField& field);

}  // namespace diracfem::layer

#endif
