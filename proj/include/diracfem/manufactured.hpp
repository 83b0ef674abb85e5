#ifndef DIRACFEM_MANUFACTURED_HPP
#define DIRACFEM_MANUFACTURED_HPP

#include <vector>

#include "diracfem/circle.hpp"
#include "diracfem/layer.hpp"

namespace diracfem::manufactured {

/// C^2 quintic cut-off: 1 for x <= 0, 0 for x >= epsilon, with vanishing
/// first and second derivatives at both joins.
struct CutFunction {
    double epsilon;
    explicit CutFunction(double eps);

    struct Jet {
        double value, first, second;
    };
    Jet eval(double x) const;
};

enum class Side { Auto, Inside, Outside };

/// Exact Poisson solution with a prescribed jump of the normal derivative
/// across a circle: a truncated harmonic sine series, chopped to zero before
/// the outer boundary by the cut function, reflected inward through the
/// mapped radius l(r) = r (1 - R_max / R) + R_max.
///
/// Solves -Laplace(u) = phi delta_gamma + f with u = 0 on the boundary of
/// the unit square; phi and f come from density_phi and rhs_f.
class ManufacturedPoisson {
  public:
    ManufacturedPoisson(Circle circle, double s, std::size_t n_series);

    const Circle& circle() const { return circle_; }
    double rho() const { return rho_; }
    double r_max() const { return r_max_; }
    double smoothness() const { return s_; }
    std::size_t series_order() const { return n_series_; }

    double exact_u(const Point2& p) const;
    Point2 exact_grad_u(const Point2& p, Side side = Side::Auto) const;
    double rhs_f(const Point2& p, Side side = Side::Auto) const;

    struct ValueGrad {
        double value;
        Point2 grad;
    };
    /// Value and gradient from a single pass over the series.
    ValueGrad u_and_grad(const Point2& p, Side side = Side::Auto) const;

    /// The jump density phi = (R_max / R^2) sum n^{-s} sin(n theta).
    layer::SineSeriesDensity density_phi() const;

  private:
    struct SeriesJet {
        double s0;   // sum (q/R)^{-n} n^{-s-1} sin(n theta)
        double sq;   // d/dq
        double sqq;  // d2/dq2
        double st;   // d/dtheta
        double stt;  // d2/dtheta2
    };
    SeriesJet series_jet(double q, double theta) const;

    Circle circle_;
    double rho_, r_max_, s_;
    std::size_t n_series_;
    CutFunction cut_;
    double mapped_slope_;            // l'(r) = 1 - R_max / R
    std::vector<double> n_pow_;      // n^{-s-1}
};

/// Radial test case for the constrained (fictitious-domain) solve: exact
/// solution (r - R) chi_{rho/3}(r - (R + rho/3)) outside the circle and 0
/// inside, so u vanishes on the circle and on the outer boundary.
class RadialSaddleCase {
  public:
    explicit RadialSaddleCase(Circle circle);

    const Circle& circle() const { return circle_; }
    double rho() const { return rho_; }

    double exact_u(const Point2& p) const;
    Point2 exact_grad_u(const Point2& p, Side side = Side::Auto) const;
    double rhs_f(const Point2& p) const;  // 0 inside the circle (f extended by 0)

    /// |g'(R)| of the radial profile, the magnitude of the exact multiplier
    /// density on the circle.
    double multiplier_density_magnitude() const { return 1.0; }

    /// Radial profile and derivatives for r >= R.
    double profile(double r) const;
    double profile_d1(double r) const;
    double profile_d2(double r) const;

  private:
    Circle circle_;
    double rho_;
    CutFunction cut_;
};

}  // namespace diracfem::manufactured

#endif
