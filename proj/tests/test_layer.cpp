#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diracfem/harness.hpp"
#include "diracfem/layer.hpp"
#include "support/oracles.hpp"

using namespace diracfem;
using namespace diracfem::layer;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("partition_circle produces equal arcs") {
    const Circle circle({0.5, 0.5}, 0.3);
    const auto p = partition_circle(circle, 0.1);
    CHECK(p.arc_count == 19);
    CHECK(p.htilde == doctest::Approx(2.0 * kPi * 0.3 / 19).epsilon(1e-15));

    double total = 0.0;
    for (std::size_t i = 0; i < p.arc_count; ++i) total += p.arc_length(i);
    CHECK(total == doctest::Approx(circle.circumference()).epsilon(1e-12));

    const auto pl = partition_circle(circle, 0.1, CollocationRule::left());
    for (std::size_t i = 0; i < pl.arc_count; ++i)
        CHECK(pl.collocation[i] == pl.arc_angles[i]);

    CHECK_THROWS_AS(partition_circle(circle, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(partition_circle(circle, 10.0), std::invalid_argument);
}

TEST_CASE("circle must sit strictly inside the unit square") {
    CHECK_THROWS_AS(Circle({0.5, 0.5}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Circle({0.9, 0.5}, 0.2), std::invalid_argument);
}

TEST_CASE("layer_weights closed forms") {
    const Circle circle({0.5, 0.5}, 0.3);
    const auto p = partition_circle(circle, 0.05);

    SUBCASE("constant density spreads evenly") {
        const auto d = layer_weights(ConstantDensity{1.0}, p);
        for (double w : d.weights)
            CHECK(w == doctest::Approx(circle.circumference() /
                                       static_cast<double>(p.arc_count))
                           .epsilon(1e-14));
    }

    SUBCASE("sin(theta) integrates to zero over the full circle") {
        const auto d = layer_weights(SineSeriesDensity{{1.0}}, p);
        double sum = 0.0;
        for (double w : d.weights) sum += w;
        CHECK(std::abs(sum) <= 1e-12);
    }

    SUBCASE("quarter arc of sin(theta) carries weight R") {
        const auto quarters = partition_circle(circle, circle.circumference() / 4.0,
                                               CollocationRule::left());
        REQUIRE(quarters.arc_count == 4);
        const auto d = layer_weights(SineSeriesDensity{{1.0}}, quarters);
        // int_0^{pi/2} sin = 1, times R.
        CHECK(d.weights[0] == doctest::Approx(circle.radius).epsilon(1e-14));
        const double ref = oracles::adaptive_quad(
            [&](double t) { return circle.radius * std::sin(t); }, 0.0, 0.5 * kPi);
        CHECK(d.weights[0] == doctest::Approx(ref).epsilon(1e-12));
    }

    SUBCASE("the 1D power density is rejected") {
        CHECK_THROWS_AS(layer_weights(PowerDensity1D{0.5}, p), std::invalid_argument);
    }
}

TEST_CASE("sine-series weights agree with adaptive quadrature for random series") {
    const Circle circle({0.5, 0.5}, 0.3);
    const auto p = partition_circle(circle, 0.23);
    harness::Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        SineSeriesDensity series;
        const std::size_t terms = 1 + (rng.next_u64() % 12);
        for (std::size_t n = 0; n < terms; ++n)
            series.coefficients.push_back(rng.next_symmetric());
        const auto d = layer_weights(series, p);
        for (std::size_t i = 0; i < p.arc_count; ++i) {
            const double ref = oracles::adaptive_quad(
                [&](double t) { return circle.radius * series.eval(t); },
                p.arc_angles[i], p.arc_angles[i + 1]);
            CHECK(d.weights[i] == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("assemble_dirac_load distributes weights by basis values") {
    const auto g = grid::build_grid(4);

    SUBCASE("point at a node is one-hot") {
        const auto load = assemble_dirac_load(g, {{{0.5, 0.25}}, {2.0}});
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            if (g.node_coord(i) == Point2{0.5, 0.25})
                CHECK(load[i] == 2.0);
            else
                CHECK(load[i] == 0.0);
        }
    }

    SUBCASE("point at a cell center splits in four") {
        const auto load = assemble_dirac_load(g, {{{0.125, 0.125}}, {1.0}});
        std::size_t quarters = 0;
        for (double v : load)
            if (v != 0.0) {
                CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
                ++quarters;
            }
        CHECK(quarters == 4);
    }

    SUBCASE("column sums preserve total weight") {
        const Circle circle({0.5, 0.5}, 0.3);
        const auto p = partition_circle(circle, 0.07);
        const auto d = layer_weights(SineSeriesDensity{{0.3, -1.2, 0.8}}, p);
        const auto load = assemble_dirac_load(g, d);
        double load_sum = 0.0, weight_sum = 0.0;
        for (double v : load) load_sum += v;
        for (double w : d.weights) weight_sum += w;
        CHECK(load_sum == doctest::Approx(weight_sum).epsilon(1e-13));
    }

    SUBCASE("linearity in the weights is exact") {
        const DiracLayer a{{{0.31, 0.47}, {0.66, 0.2}}, {1.5, -0.25}};
        const DiracLayer b{{{0.31, 0.47}, {0.66, 0.2}}, {0.75, 2.0}};
        DiracLayer ab = a;
        for (std::size_t i = 0; i < ab.weights.size(); ++i) ab.weights[i] += b.weights[i];
        const auto la = assemble_dirac_load(g, a);
        const auto lb = assemble_dirac_load(g, b);
        const auto lab = assemble_dirac_load(g, ab);
        for (std::size_t i = 0; i < lab.size(); ++i)
            CHECK(lab[i] == doctest::Approx(la[i] + lb[i]).epsilon(1e-15));
    }

    SUBCASE("boundary points are an error") {
        CHECK_THROWS_AS(assemble_dirac_load(g, {{{0.0, 0.5}}, {1.0}}), std::invalid_argument);
        CHECK_THROWS_AS(assemble_dirac_load(g, {{{0.5, 1.0}}, {1.0}}), std::invalid_argument);
    }
}

TEST_CASE("discrete_trace_seminorm") {
    const auto g = grid::build_grid(16);
    const Circle circle({0.5, 0.5}, 0.3);

    SUBCASE("constant field has zero trace seminorm") {
        const grid::FeField f{&g, std::vector<double>(g.node_count(), 5.0)};
        CHECK(discrete_trace_seminorm(f, circle) == doctest::Approx(0.0).epsilon(1e-13));
    }

    SUBCASE("interpolant of x has gradient (1,0): value^2 = 2 pi R") {
        grid::FeField f{&g, std::vector<double>(g.node_count())};
        for (std::size_t i = 0; i < g.node_count(); ++i) f.coeffs[i] = g.node_coord(i)[0];
        const double v = discrete_trace_seminorm(f, circle);
        CHECK(v * v == doctest::Approx(circle.circumference()).epsilon(1e-10));
    }

    SUBCASE("trace constant is stable under h-halving (random near-curve fields)") {
        harness::Rng rng(9);
        double prev_max = -1.0;
        for (std::size_t n : {16, 32, 64}) {
            const auto gn = grid::build_grid(n);
            const auto K = grid::assemble_stiffness(gn);
            std::vector<std::size_t> band;
            for (std::size_t i = 0; i < gn.node_count(); ++i)
                if (std::abs(circle.polar_radius(gn.node_coord(i)) - circle.radius) <=
                    2.0 * gn.h)
                    band.push_back(i);
            double max_ratio = 0.0;
            for (int t = 0; t < 25; ++t) {
                grid::FeField f{&gn, std::vector<double>(gn.node_count(), 0.0)};
                for (std::size_t i : band) f.coeffs[i] = rng.next_symmetric();
                const double tr = discrete_trace_seminorm(f, circle);
                const double h1 = std::sqrt(grid::h1_seminorm_sq(f, K));
                max_ratio = std::max(max_ratio, tr * std::sqrt(gn.h) / h1);
            }
            if (prev_max > 0.0) {
                CHECK(max_ratio / prev_max < 2.0);
                CHECK(prev_max / max_ratio < 2.0);
            }
            prev_max = max_ratio;
        }
    }
}

TEST_CASE("pairing_exact against simple densities") {
    const auto g = grid::build_grid(16);
    const Circle circle({0.5, 0.5}, 0.3);

    SUBCASE("unit density against the unit field") {
        const grid::FeField one{&g, std::vector<double>(g.node_count(), 1.0)};
        CHECK(pairing_exact(ConstantDensity{1.0}, one, circle) ==
              doctest::Approx(circle.circumference()).epsilon(1e-12));
    }

    SUBCASE("sin(theta) against a constant field vanishes") {
        const grid::FeField c{&g, std::vector<double>(g.node_count(), 2.5)};
        CHECK(pairing_exact(SineSeriesDensity{{1.0}}, c, circle) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("Dirac pairing error shrinks with htilde") {
    const Circle circle({0.5, 0.5}, 0.3);
    const SineSeriesDensity phi{{1.0, 0.5, 0.25}};

    // Fixed smooth field, htilde = h ladder: error should drop about like
    // sqrt(h/h) h^s with phi smooth, so clearly monotonically.
    double prev = -1.0;
    for (std::size_t n : {16, 32, 64}) {
        const auto g = grid::build_grid(n);
        grid::FeField f{&g, std::vector<double>(g.node_count())};
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            const Point2 p = g.node_coord(i);
            f.coeffs[i] = std::sin(2.0 * p[0]) * p[1];
        }
        const auto part = partition_circle(circle, g.h);
        const auto d = layer_weights(phi, part);
        const double err = std::abs(pairing_exact(phi, f, circle) - pairing_dirac(d, f));
        if (prev > 0.0) CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("pairing error to H1-seminorm ratio stays bounded over random fields") {
    const Circle circle({0.5, 0.5}, 0.3);
    const SineSeriesDensity phi{{1.0, 0.7, 0.4, 0.2}};
    harness::Rng rng(23);

    double worst = 0.0;
    for (std::size_t n : {16, 32, 64, 128}) {
        const auto g = grid::build_grid(n);
        const auto K = grid::assemble_stiffness(g);
        const auto part = partition_circle(circle, g.h);
        const auto d = layer_weights(phi, part);
        double max_ratio = 0.0;
        for (int t = 0; t < 50; ++t) {
            grid::FeField f{&g, std::vector<double>(g.node_count())};
            for (double& c : f.coeffs) c = rng.next_symmetric();
            const double err = std::abs(pairing_exact(phi, f, circle) - pairing_dirac(d, f));
            const double h1 = std::sqrt(grid::h1_seminorm_sq(f, K));
            max_ratio = std::max(max_ratio, err / (std::sqrt(g.h) * h1));
        }
        worst = std::max(worst, max_ratio);
        // Bounded constant: no h level may blow past a fixed multiple of
        // what other levels show.
        CHECK(max_ratio <= 10.0 * (worst > 0.0 ? worst : 1.0));
    }
    CHECK(worst > 0.0);
}

TEST_CASE("grid crossing angles are on grid lines") {
    const Circle circle({0.5, 0.5}, 0.3);
    const double h = 1.0 / 16.0;
    const auto angles = grid_crossing_angles(circle, h);
    CHECK(angles.size() > 16);
    for (double t : angles) {
        const Point2 p = circle.at_angle(t);
        const double fx = std::abs(p[0] / h - std::round(p[0] / h));
        const double fy = std::abs(p[1] / h - std::round(p[1] / h));
        CHECK(std::min(fx, fy) <= 1e-10);
    }
}
