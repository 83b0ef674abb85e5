#include "diracfem/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace diracfem::manufactured {

CutFunction::CutFunction(double eps) : epsilon(eps) {
    if (eps <= 0.0) throw std::invalid_argument("CutFunction: epsilon must be positive");
}

CutFunction::Jet CutFunction::eval(double x) const {
    if (x <= 0.0) return {1.0, 0.0, 0.0};
    if (x >= epsilon) return {0.0, 0.0, 0.0};
    const double e = epsilon;
    const double a5 = -6.0 / (e * e * e * e * e);
    const double a4 = 15.0 / (e * e * e * e);
    const double a3 = -10.0 / (e * e * e);
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
    return {a5 * x5 + a4 * x4 + a3 * x3 + 1.0,
            5.0 * a5 * x4 + 4.0 * a4 * x3 + 3.0 * a3 * x2,
            20.0 * a5 * x3 + 12.0 * a4 * x2 + 6.0 * a3 * x};
}

ManufacturedPoisson::ManufacturedPoisson(Circle circle, double s, std::size_t n_series)
    : circle_(circle),
      rho_(circle.margin()),
      r_max_(circle.radius + circle.margin()),
      s_(s),
      n_series_(n_series),
      cut_(circle.margin() / 3.0),
      mapped_slope_(1.0 - (circle.radius + circle.margin()) / circle.radius) {
    if (s <= 0.0) throw std::invalid_argument("ManufacturedPoisson: s must be positive");
    if (n_series == 0) throw std::invalid_argument("ManufacturedPoisson: empty series");
    n_pow_.resize(n_series);
    for (std::size_t n = 1; n <= n_series; ++n)
        n_pow_[n - 1] = std::pow(static_cast<double>(n), -s - 1.0);
}

ManufacturedPoisson::SeriesJet ManufacturedPoisson::series_jet(double q, double theta) const {
    const double R = circle_.radius;
    const double ratio = R / q;  // (q/R)^{-n} accumulated by repeated multiplication
    const double c = std::cos(theta), twoc = 2.0 * c;
    double s_prev = 0.0, s_cur = std::sin(theta);
    double c_prev = 1.0, c_cur = c;
    double geo = ratio;
    SeriesJet jet{0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t n = 1; n <= n_series_; ++n) {
        const double nn = static_cast<double>(n);
        const double b = n_pow_[n - 1] * geo;
        jet.s0 += b * s_cur;
        jet.sq += -nn / q * b * s_cur;
        jet.sqq += nn * (nn + 1.0) / (q * q) * b * s_cur;
        jet.st += nn * b * c_cur;
        jet.stt += -nn * nn * b * s_cur;
        geo *= ratio;
        const double s_next = twoc * s_cur - s_prev;
        const double c_next = twoc * c_cur - c_prev;
        s_prev = s_cur;
        s_cur = s_next;
        c_prev = c_cur;
        c_cur = c_next;
    }
    return jet;
}

double ManufacturedPoisson::exact_u(const Point2& p) const {
    const double r = circle_.polar_radius(p);
    const double R = circle_.radius;
    const double q = (r >= R) ? r : r * mapped_slope_ + r_max_;
    const CutFunction::Jet chi = cut_.eval(q - (R + rho_ / 3.0));
    if (chi.value == 0.0) return 0.0;
    const double theta = circle_.polar_angle(p);
    return chi.value * series_jet(q, theta).s0;
}

Point2 ManufacturedPoisson::exact_grad_u(const Point2& p, Side side) const {
    const double r = circle_.polar_radius(p);
    const double R = circle_.radius;
    const bool inside = (side == Side::Auto) ? (r < R) : (side == Side::Inside);

    const double q = inside ? r * mapped_slope_ + r_max_ : r;
    const CutFunction::Jet chi = cut_.eval(q - (R + rho_ / 3.0));
    if (chi.value == 0.0 && chi.first == 0.0) return {0.0, 0.0};
    const double theta = circle_.polar_angle(p);
    const SeriesJet jet = series_jet(q, theta);

    double ur = chi.first * jet.s0 + chi.value * jet.sq;
    if (inside) ur *= mapped_slope_;
    const double ut = chi.value * jet.st;

    const double ct = std::cos(theta), st = std::sin(theta);
    return {ur * ct - ut / r * st, ur * st + ut / r * ct};
}

ManufacturedPoisson::ValueGrad ManufacturedPoisson::u_and_grad(const Point2& p,
                                                               Side side) const {
    const double r = circle_.polar_radius(p);
    const double R = circle_.radius;
    const bool inside = (side == Side::Auto) ? (r < R) : (side == Side::Inside);

    const double q = inside ? r * mapped_slope_ + r_max_ : r;
    const CutFunction::Jet chi = cut_.eval(q - (R + rho_ / 3.0));
    if (chi.value == 0.0 && chi.first == 0.0) return {0.0, {0.0, 0.0}};
    const double theta = circle_.polar_angle(p);
    const SeriesJet jet = series_jet(q, theta);

    double ur = chi.first * jet.s0 + chi.value * jet.sq;
    if (inside) ur *= mapped_slope_;
    const double ut = chi.value * jet.st;
    const double ct = std::cos(theta), st = std::sin(theta);
    return {chi.value * jet.s0, {ur * ct - ut / r * st, ur * st + ut / r * ct}};
}

double ManufacturedPoisson::rhs_f(const Point2& p, Side side) const {
    const double r = circle_.polar_radius(p);
    const double R = circle_.radius;
    const bool inside = (side == Side::Auto) ? (r < R) : (side == Side::Inside);

    if (!inside) {
        // Each series term is harmonic, so only the cut-off contributes.
        const CutFunction::Jet chi = cut_.eval(r - (R + rho_ / 3.0));
        if (chi.first == 0.0 && chi.second == 0.0) return 0.0;
        const double theta = circle_.polar_angle(p);
        const SeriesJet jet = series_jet(r, theta);
        const double lap = chi.second * jet.s0 + chi.first * (2.0 * jet.sq + jet.s0 / r);
        return -lap;
    }

    // Polar chain rule through the mapped radius l(r) = r l' + R_max.
    const double lp = mapped_slope_;
    const double q = r * lp + r_max_;
    const CutFunction::Jet chi = cut_.eval(q - (R + rho_ / 3.0));
    if (chi.value == 0.0 && chi.first == 0.0 && chi.second == 0.0) return 0.0;
    const double theta = circle_.polar_angle(p);
    const SeriesJet jet = series_jet(q, theta);
    const double uq = chi.first * jet.s0 + chi.value * jet.sq;
    const double uqq = chi.second * jet.s0 + 2.0 * chi.first * jet.sq + chi.value * jet.sqq;
    const double utt = chi.value * jet.stt;
    const double lap = lp * lp * uqq + lp / r * uq + utt / (r * r);
    return -lap;
}

layer::SineSeriesDensity ManufacturedPoisson::density_phi() const {
    layer::SineSeriesDensity d;
    d.coefficients.resize(n_series_);
    const double amp = r_max_ / (circle_.radius * circle_.radius);
    for (std::size_t n = 1; n <= n_series_; ++n)
        d.coefficients[n - 1] = amp * std::pow(static_cast<double>(n), -s_);
    return d;
}

RadialSaddleCase::RadialSaddleCase(Circle circle)
    : circle_(circle), rho_(circle.margin()), cut_(circle.margin() / 3.0) {}

double RadialSaddleCase::profile(double r) const {
    const double R = circle_.radius;
    return (r - R) * cut_.eval(r - (R + rho_ / 3.0)).value;
}

double RadialSaddleCase::profile_d1(double r) const {
    const double R = circle_.radius;
    const CutFunction::Jet chi = cut_.eval(r - (R + rho_ / 3.0));
    return chi.value + (r - R) * chi.first;
}

double RadialSaddleCase::profile_d2(double r) const {
    const double R = circle_.radius;
    const CutFunction::Jet chi = cut_.eval(r - (R + rho_ / 3.0));
    return 2.0 * chi.first + (r - R) * chi.second;
}

double RadialSaddleCase::exact_u(const Point2& p) const {
    const double r = circle_.polar_radius(p);
    if (r < circle_.radius) return 0.0;
    return profile(r);
}

Point2 RadialSaddleCase::exact_grad_u(const Point2& p, Side side) const {
    const double r = circle_.polar_radius(p);
    const bool inside = (side == Side::Auto) ? (r < circle_.radius) : (side == Side::Inside);
    if (inside || r == 0.0) return {0.0, 0.0};
    const double g1 = profile_d1(r);
    return {g1 * (p[0] - circle_.center[0]) / r, g1 * (p[1] - circle_.center[1]) / r};
}

double RadialSaddleCase::rhs_f(const Point2& p) const {
    const double r = circle_.polar_radius(p);
    if (r <= circle_.radius) return 0.0;  // f extended by 0 in the hole
    if (r >= circle_.radius + 2.0 * rho_ / 3.0) return 0.0;
    return -(profile_d2(r) + profile_d1(r) / r);
}

}  // namespace diracfem::manufactured
