// Test-only reference integrators, independent of the library's quadrature
// path. Used to cross-check closed forms before they are trusted.
#ifndef DIRACFEM_TESTS_ORACLES_HPP
#define DIRACFEM_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

namespace detail {

template <typename F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
template <typename F>
double adaptive_quad(F&& f, double a, double b, double tol = 1e-13, int max_depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// int_0^b x^{s-1} g(x) dx with 0 < s <= 1 via the substitution x = t^{1/s},
/// which removes the endpoint singularity before adaptive quadrature.
inline double power_weighted_integral(const std::function<double(double)>& g, double s,
                                      double b, double tol = 1e-13) {
    if (s <= 0.0 || s > 1.0) throw std::invalid_argument("power_weighted_integral: s in (0,1]");
    const double upper = std::pow(b, s);
    return adaptive_quad([&](double t) { return g(std::pow(t, 1.0 / s)); }, 0.0, upper, tol) / s;
}

}  // namespace oracles

#endif
