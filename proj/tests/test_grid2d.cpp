#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diracfem/grid2d.hpp"
#include "diracfem/harness.hpp"
#include "diracfem/solver.hpp"

using namespace diracfem;
using namespace diracfem::grid;

TEST_CASE("build_grid counts and spacing") {
    const auto g4 = build_grid(4);
    CHECK(g4.node_count() == 25);
    CHECK(g4.cell_count() == 16);
    CHECK(g4.h == 0.25);

    const auto g2 = build_grid(2);
    std::size_t interior = 0, interior_idx = 0;
    for (std::size_t i = 0; i < g2.node_count(); ++i)
        if (!g2.is_boundary(i)) {
            ++interior;
            interior_idx = i;
        }
    CHECK(interior == 1);
    CHECK(g2.node_coord(interior_idx) == Point2{0.5, 0.5});

    CHECK(build_grid(256).h == std::ldexp(1.0, -8));
    CHECK_THROWS_AS(build_grid(1), std::invalid_argument);
}

TEST_CASE("q1_eval basis values") {
    const auto g = build_grid(4);

    SUBCASE("one-hot at a node") {
        const auto e = q1_eval(g, {0.5, 0.25});
        double sum = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (g.node_coord(e.nodes[k]) == Point2{0.5, 0.25})
                CHECK(e.values[k] == 1.0);
            else
                CHECK(e.values[k] == 0.0);
            sum += e.values[k];
        }
        CHECK(sum == 1.0);
    }

    SUBCASE("quarter weights at a cell center") {
        const auto e = q1_eval(g, {0.125, 0.625});
        for (int k = 0; k < 4; ++k) CHECK(e.values[k] == doctest::Approx(0.25).epsilon(1e-15));
    }

    SUBCASE("partition of unity and gradient kernel at random points") {
        harness::Rng rng(7);
        for (int t = 0; t < 10000; ++t) {
            const Point2 p = {0.5 * (rng.next_symmetric() + 1.0),
                              0.5 * (rng.next_symmetric() + 1.0)};
            const auto e = q1_eval(g, p);
            double sv = 0.0, gx = 0.0, gy = 0.0;
            for (int k = 0; k < 4; ++k) {
                sv += e.values[k];
                gx += e.gradients[k][0];
                gy += e.gradients[k][1];
            }
            CHECK(std::abs(sv - 1.0) <= 1e-14);
            CHECK(std::abs(gx) <= 1e-11);
            CHECK(std::abs(gy) <= 1e-11);
        }
    }

    CHECK_THROWS_AS(q1_eval(g, {1.5, 0.0}), std::out_of_range);
}

TEST_CASE("local stiffness matches a 2x2 Gauss oracle") {
    // Bilinear gradient products are biquadratic, so 2x2 Gauss is exact.
    const auto local = local_stiffness();
    const GaussRule1D& rule = gauss_rule(2);
    const double h = 0.37;  // arbitrary: the local matrix is h-independent
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            double integral = 0.0;
            for (std::size_t kx = 0; kx < 2; ++kx)
                for (std::size_t ky = 0; ky < 2; ++ky) {
                    const double u = rule.points[kx], v = rule.points[ky];
                    const double gx[4] = {-(1 - v) / h, (1 - v) / h, v / h, -v / h};
                    const double gy[4] = {-(1 - u) / h, -u / h, u / h, (1 - u) / h};
                    integral += rule.weights[kx] * rule.weights[ky] * h * h *
                                (gx[a] * gx[b] + gy[a] * gy[b]);
                }
            CHECK(local[a][b] == doctest::Approx(integral).epsilon(1e-14));
        }
    }
}

TEST_CASE("assembled stiffness is symmetric with zero row sums") {
    const auto g = build_grid(8);
    const auto K = assemble_stiffness(g);
    CHECK(K.is_structurally_symmetric(0.0));
    for (std::size_t i = 0; i < K.rows(); ++i) CHECK(std::abs(K.row_sum(i)) <= 1e-13);
}

TEST_CASE("volume load integrates simple densities") {
    const auto g = build_grid(8);
    const auto zero = assemble_volume_load(g, [](Point2) { return 0.0; });
    for (double v : zero) CHECK(v == 0.0);

    const auto one = assemble_volume_load(g, [](Point2) { return 1.0; });
    double sum = 0.0;
    for (double v : one) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    const auto linear = assemble_volume_load(g, [](Point2 p) { return p[0]; });
    sum = 0.0;
    for (double v : linear) sum += v;
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cut cells are recognized around a circle") {
    const auto g = build_grid(8);
    const Circle circle({0.5, 0.5}, 0.3);
    std::size_t cut_cells = 0;
    for (std::size_t iy = 0; iy < g.n; ++iy)
        for (std::size_t ix = 0; ix < g.n; ++ix)
            if (cell_intersects_circle(g, ix, iy, circle)) ++cut_cells;
    CHECK(cut_cells > 8);
    CHECK(cut_cells < g.cell_count() / 2);
    // A cut-aware load of a smooth f still integrates correctly.
    const auto load = assemble_volume_load(g, [](Point2) { return 1.0; }, QuadRule{}, circle);
    double sum = 0.0;
    for (double v : load) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_dirichlet reduces to the interior block") {
    const auto g = build_grid(2);
    const auto K = assemble_stiffness(g);
    std::vector<double> rhs(g.node_count(), 1.0);
    const auto sys = apply_dirichlet(g, K, rhs);
    REQUIRE(sys.matrix.rows() == 1);
    const std::size_t center = g.node_index(1, 1);
    CHECK(sys.matrix.entry(0, 0) == K.entry(center, center));
    CHECK(sys.rhs[0] == 1.0);

    const auto field = expand_interior(g, sys, {42.0});
    for (std::size_t i = 0; i < g.node_count(); ++i)
        if (g.is_boundary(i)) CHECK(field.coeffs[i] == 0.0);
}

TEST_CASE("reduced stiffness is SPD: CG converges on a random rhs") {
    const auto g = build_grid(16);
    const auto sys = apply_dirichlet(g, assemble_stiffness(g),
                                     std::vector<double>(g.node_count(), 0.0));
    harness::Rng rng(11);
    std::vector<double> b(sys.matrix.rows());
    for (double& v : b) v = rng.next_symmetric();
    const auto res = solver::cg_solve(sys.matrix, b, 1e-12);
    CHECK(res.converged);
}

TEST_CASE("fe_eval reproduces bilinear fields exactly") {
    const auto g = build_grid(8);
    const auto interpolate = [&](auto&& fn) {
        FeField f{&g, std::vector<double>(g.node_count())};
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            const Point2 p = g.node_coord(i);
            f.coeffs[i] = fn(p[0], p[1]);
        }
        return f;
    };

    const auto affine = interpolate([](double x, double y) { return x + y; });
    const auto bilinear = interpolate([](double x, double y) { return x * y; });
    const auto constant = interpolate([](double, double) { return 3.0; });

    harness::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const Point2 p = {0.5 * (rng.next_symmetric() + 1.0),
                          0.5 * (rng.next_symmetric() + 1.0)};
        CHECK(fe_eval(affine, p) == doctest::Approx(p[0] + p[1]).epsilon(1e-14));
        CHECK(fe_eval(bilinear, p) == doctest::Approx(p[0] * p[1]).epsilon(1e-14));
        const Point2 gc = fe_grad(constant, p);
        CHECK(gc[0] == 0.0);
        CHECK(gc[1] == 0.0);
    }
}

TEST_CASE("Galerkin orthogonality of a solved Poisson system") {
    const auto g = build_grid(16);
    const auto K = assemble_stiffness(g);
    const auto load = assemble_volume_load(g, [](Point2 p) { return p[0] * p[1]; });
    const auto sys = apply_dirichlet(g, K, load);
    const auto res = solver::cg_solve(sys.matrix, sys.rhs, 1e-13);
    REQUIRE(res.converged);

    const auto Au = sys.matrix.apply(res.x);
    harness::Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> v(sys.matrix.rows());
        for (double& c : v) c = rng.next_symmetric();
        double residual = 0.0, vnorm = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            residual += (Au[i] - sys.rhs[i]) * v[i];
            vnorm += v[i] * v[i];
        }
        CHECK(std::abs(residual) / std::sqrt(vnorm) <= 1e-10);
    }
}
