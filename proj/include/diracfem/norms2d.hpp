#ifndef DIRACFEM_NORMS2D_HPP
#define DIRACFEM_NORMS2D_HPP

#include <functional>
#include <optional>

#include "diracfem/circle.hpp"
#include "diracfem/grid2d.hpp"
#include "diracfem/quadrature.hpp"

namespace diracfem::norms {

/// sqrt( int_Omega |grad u_exact - grad u_h|^2 ), per-cell tensor Gauss with
/// recursive quadrisection of cells crossing the cut curve so the exact
/// gradient's jump is resolved below the measured discretization error.
double h1_error(const grid::FeField& field, const std::function<Point2(Point2)>& exact_grad,
                const std::optional<Circle>& cut = std::nullopt, const QuadRule& quad = {});

/// sqrt( int_Omega |u_exact - u_h|^2 ), same quadrature layout.
double l2_error(const grid::FeField& field, const std::function<double(Point2)>& exact,
                const std::optional<Circle>& cut = std::nullopt, const QuadRule& quad = {});

struct ErrorPair {
    double h1;
    double l2;
};

/// Both errors in one sweep; the exact callback supplies value and gradient
/// together (cheaper when both come from one series evaluation).
ErrorPair h1_l2_error(const grid::FeField& field,
                      const std::function<std::pair<double, Point2>(Point2)>& exact_value_grad,
                      const std::optional<Circle>& cut = std::nullopt, const QuadRule& quad = {});

}  // namespace diracfem::norms

#endif
