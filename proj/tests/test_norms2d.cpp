#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diracfem/harness.hpp"
#include "diracfem/manufactured.hpp"
#include "diracfem/norms2d.hpp"
#include "support/oracles.hpp"

using namespace diracfem;
using namespace diracfem::norms;

namespace {

const double kPi = std::acos(-1.0);

grid::FeField interpolate(const grid::CartesianGrid& g,
                          const std::function<double(Point2)>& u) {
    grid::FeField f{&g, std::vector<double>(g.node_count())};
    for (std::size_t i = 0; i < g.node_count(); ++i) f.coeffs[i] = u(g.node_coord(i));
    return f;
}

}  // namespace

TEST_CASE("errors vanish when the field equals the exact function") {
    const auto g = grid::build_grid(8);
    const auto f = interpolate(g, [](Point2 p) { return 2.0 * p[0] - p[1] + 0.5; });
    CHECK(l2_error(f, [](Point2 p) { return 2.0 * p[0] - p[1] + 0.5; }) ==
          doctest::Approx(0.0).epsilon(1e-13));
    CHECK(h1_error(f, [](Point2) -> Point2 { return {2.0, -1.0}; }) ==
          doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("errors of the zero field against simple functions") {
    const auto g = grid::build_grid(8);
    const grid::FeField zero{&g, std::vector<double>(g.node_count(), 0.0)};
    CHECK(l2_error(zero, [](Point2) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-13));
    // |grad(x + y)| = sqrt(2) so the H1 error of zero is sqrt(2).
    CHECK(h1_error(zero, [](Point2) -> Point2 { return {1.0, 1.0}; }) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("Q1 interpolation of a smooth function converges at the usual rates") {
    const auto u = [](Point2 p) { return std::sin(kPi * p[0]) * std::sin(kPi * p[1]); };
    const auto gu = [](Point2 p) -> Point2 {
        return {kPi * std::cos(kPi * p[0]) * std::sin(kPi * p[1]),
                kPi * std::sin(kPi * p[0]) * std::cos(kPi * p[1])};
    };
    std::vector<std::pair<double, double>> l2_rows, h1_rows;
    for (std::size_t n : {8, 16, 32, 64}) {
        const auto g = grid::build_grid(n);
        const auto f = interpolate(g, u);
        l2_rows.push_back({g.h, l2_error(f, u)});
        h1_rows.push_back({g.h, h1_error(f, gu)});
    }
    CHECK(harness::fit_order(l2_rows).slope == doctest::Approx(2.0).epsilon(0.03));
    CHECK(harness::fit_order(h1_rows).slope == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("cut-aware H1 error of the zero field matches a polar-quadrature oracle") {
    const Circle circle({0.5, 0.5}, 0.3);
    const manufactured::ManufacturedPoisson mp(circle, 0.5, 32);
    const auto g = grid::build_grid(32);
    const grid::FeField zero{&g, std::vector<double>(g.node_count(), 0.0)};

    QuadRule quad;
    quad.order = 6;
    quad.cut_cell_depth = 4;
    const double err = h1_error(
        zero, [&](Point2 p) { return mp.exact_grad_u(p); }, circle, quad);

    // Independent oracle: int |grad u|^2 = int_0^{2pi} int_0^{r_off}
    // |grad u|^2 r dr dtheta, adaptive in r; the periodic trapezoid rule in
    // theta is spectrally accurate for the truncated series.
    const double r_off = circle.radius + 2.0 * mp.rho() / 3.0;
    const std::size_t n_theta = 256;
    double total = 0.0;
    for (std::size_t k = 0; k < n_theta; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / n_theta;
        const auto radial = [&](double r) {
            const Point2 p = {circle.center[0] + r * std::cos(theta),
                              circle.center[1] + r * std::sin(theta)};
            const auto gr = mp.exact_grad_u(p);
            return (gr[0] * gr[0] + gr[1] * gr[1]) * r;
        };
        // Split at the interface where the gradient jumps.
        const double inner = oracles::adaptive_quad(radial, 0.0, circle.radius, 1e-11);
        const double outer = oracles::adaptive_quad(radial, circle.radius, r_off, 1e-11);
        total += (2.0 * kPi / n_theta) * (inner + outer);
    }
    CHECK(err == doctest::Approx(std::sqrt(total)).epsilon(1e-3));
}

TEST_CASE("doubling the quadrature order barely moves the measured error") {
    const Circle circle({0.5, 0.5}, 0.3);
    const manufactured::ManufacturedPoisson mp(circle, 0.5, 32);
    const auto g = grid::build_grid(32);
    const auto f = interpolate(g, [&](Point2 p) { return mp.exact_u(p); });

    QuadRule base;
    base.order = 4;
    base.cut_cell_depth = 3;
    QuadRule fine;
    fine.order = 8;
    fine.cut_cell_depth = 4;

    const auto exact = [&](Point2 p) {
        const auto vg = mp.u_and_grad(p);
        return std::make_pair(vg.value, vg.grad);
    };
    const auto e0 = h1_l2_error(f, exact, circle, base);
    const auto e1 = h1_l2_error(f, exact, circle, fine);
    CHECK(std::abs(e0.h1 - e1.h1) / e1.h1 < 1e-3);
    CHECK(std::abs(e0.l2 - e1.l2) / e1.l2 < 1e-3);
}

TEST_CASE("h1_l2_error agrees with the individual norms") {
    const auto g = grid::build_grid(16);
    const auto f = interpolate(g, [](Point2 p) { return p[0] * p[1]; });
    const auto u = [](Point2 p) { return std::sin(p[0]) + p[1]; };
    const auto gu = [](Point2 p) -> Point2 { return {std::cos(p[0]), 1.0}; };
    const auto pair = h1_l2_error(
        f, [&](Point2 p) { return std::make_pair(u(p), gu(p)); });
    CHECK(pair.l2 == doctest::Approx(l2_error(f, u)).epsilon(1e-13));
    CHECK(pair.h1 == doctest::Approx(h1_error(f, gu)).epsilon(1e-13));
}

TEST_CASE("results are deterministic across repeated evaluation") {
    const Circle circle({0.5, 0.5}, 0.3);
    const manufactured::ManufacturedPoisson mp(circle, 0.25, 16);
    const auto g = grid::build_grid(16);
    const auto f = interpolate(g, [&](Point2 p) { return mp.exact_u(p); });
    const auto exact = [&](Point2 p) {
        const auto vg = mp.u_and_grad(p);
        return std::make_pair(vg.value, vg.grad);
    };
    const auto a = h1_l2_error(f, exact, circle);
    const auto b = h1_l2_error(f, exact, circle);
    CHECK(a.h1 == b.h1);
    CHECK(a.l2 == b.l2);
}
