#ifndef DIRACFEM_CIRCLE_HPP
#define DIRACFEM_CIRCLE_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace diracfem {

using Point2 = std::array<double, 2>;

/// Circle strictly inside the unit square, arc-length parametrized by
/// X(t) = center + R (cos 2 pi t, sin 2 pi t), t in [0, 1].
struct Circle {
    Point2 center;
    double radius;

    Circle(Point2 c, double r) : center(c), radius(r) {
        if (r <= 0.0) throw std::invalid_argument("Circle: radius must be positive");
        if (margin() <= 0.0)
            throw std::invalid_argument("Circle: curve must lie strictly inside the unit square");
    }

    /// Distance between the circle and the boundary of the unit square.
    double margin() const {
        const double box = std::min(std::min(center[0], 1.0 - center[0]),
                                    std::min(center[1], 1.0 - center[1]));
        return box - radius;
    }

    double circumference() const { return 2.0 * std::acos(-1.0) * radius; }

    Point2 at_angle(double theta) const {
        return {center[0] + radius * std::cos(theta), center[1] + radius * std::sin(theta)};
    }

    /// Signed distance-like radius of a point about the center.
    double polar_radius(const Point2& p) const {
        return std::hypot(p[0] - center[0], p[1] - center[1]);
    }

    double polar_angle(const Point2& p) const {
        return std::atan2(p[1] - center[1], p[0] - center[0]);
    }
};

}  // namespace diracfem

#endif
