#include "diracfem/norms2d.hpp"

#include <cmath>

namespace diracfem::norms {

double h1_error(const grid::FeField& field, const std::function<Point2(Point2)>& exact_grad,
                const std::optional<Circle>& cut, const QuadRule& quad) {
    double sum = 0.0;
    grid::for_each_quadrature_point(*field.grid, quad, cut, [&](const Point2& p, double w) {
        const Point2 ge = exact_grad(p);
        const Point2 gh = grid::fe_grad(field, p);
        const double dx = ge[0] - gh[0], dy = ge[1] - gh[1];
        sum += w * (dx * dx + dy * dy);
    });
    return std::sqrt(sum);
}

double l2_error(const grid::FeField& field, const std::function<double(Point2)>& exact,
                const std::optional<Circle>& cut, const QuadRule& quad) {
    double sum = 0.0;
    grid::for_each_quadrature_point(*field.grid, quad, cut, [&](const Point2& p, double w) {
        const double d = exact(p) - grid::fe_eval(field, p);
        sum += w * d * d;
    });
    return std::sqrt(sum);
}

ErrorPair h1_l2_error(const grid::FeField& field,
                      const std::function<std::pair<double, Point2>(Point2)>& exact_value_grad,
                      const std::optional<Circle>& cut, const QuadRule& quad) {
    double sum_h1 = 0.0, sum_l2 = 0.0;
    grid::for_each_quadrature_point(*field.grid, quad, cut, [&](const Point2& p, double w) {
        const auto [ve, ge] = exact_value_grad(p);
        const double dv = ve - grid::fe_eval(field, p);
        const Point2 gh = grid::fe_grad(field, p);
        const double dx = ge[0] - gh[0], dy = ge[1] - gh[1];
        sum_l2 += w * dv * dv;
        sum_h1 += w * (dx * dx + dy * dy);
    });
    return {std::sqrt(sum_h1), std::sqrt(sum_l2)};
}

}  // namespace diracfem::norms
