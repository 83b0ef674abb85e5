#include "diracfem/layer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diracfem::layer {

namespace {
const double kPi = std::acos(-1.0);
}

CurvePartition partition_circle(const Circle& circle, double target_htilde,
                                CollocationRule rule) {
    const double circ = circle.circumference();
    if (target_htilde <= 0.0 || target_htilde >= circ)
        throw std::invalid_argument("partition_circle: target_htilde out of (0, 2 pi R)");

    const auto N = static_cast<std::size_t>(std::ceil(circ / target_htilde));
    CurvePartition p{circle, N, circ / static_cast<double>(N), {}, {}};
    const double dtheta = 2.0 * kPi / static_cast<double>(N);

    double alpha = rule.alpha;
    switch (rule.kind) {
        case CollocationRule::Kind::Midpoint: alpha = 0.5; break;
        case CollocationRule::Kind::Left: alpha = 0.0; break;
        case CollocationRule::Kind::Right: alpha = 1.0; break;
        case CollocationRule::Kind::Fraction: break;
    }

    p.arc_angles.resize(N + 1);
    p.collocation.resize(N);
    for (std::size_t i = 0; i <= N; ++i) p.arc_angles[i] = dtheta * static_cast<double>(i);
    for (std::size_t i = 0; i < N; ++i) p.collocation[i] = p.arc_angles[i] + alpha * dtheta;
    return p;
}

double SineSeriesDensity::eval(double theta) const {
    // sin(n theta) by recurrence: sin((n+1)t) = 2 cos t sin(nt) - sin((n-1)t).
    const double c = std::cos(theta), twoc = 2.0 * c;
    double s_prev = 0.0, s_cur = std::sin(theta);
    double sum = 0.0;
    for (double cn : coefficients) {
        sum += cn * s_cur;
        const double s_next = twoc * s_cur - s_prev;
        s_prev = s_cur;
        s_cur = s_next;
    }
    return sum;
}

DiracLayer layer_weights(const LayerDensity& density, const CurvePartition& partition) {
    if (std::holds_alternative<PowerDensity1D>(density))
        throw std::invalid_argument("layer_weights: the power density is 1D-only");

    const std::size_t N = partition.arc_count;
    DiracLayer d;
    d.points.resize(N);
    d.weights.resize(N);
    for (std::size_t i = 0; i < N; ++i) d.points[i] = partition.collocation_point(i);

    if (const auto* c = std::get_if<ConstantDensity>(&density)) {
        for (std::size_t i = 0; i < N; ++i) d.weights[i] = c->value * partition.htilde;
        return d;
    }

    const auto& series = std::get<SineSeriesDensity>(density);
    const double R = partition.circle.radius;
    for (std::size_t i = 0; i < N; ++i) {
        const double t0 = partition.arc_angles[i];
        const double t1 = partition.arc_angles[i + 1];
        // int_{t0}^{t1} sin(n t) R dt = R (cos(n t0) - cos(n t1)) / n.
        double sum = 0.0;
        const double c0 = std::cos(t0), c1 = std::cos(t1);
        const double tc0 = 2.0 * c0, tc1 = 2.0 * c1;
        double c0_prev = 1.0, c0_cur = c0;  // cos(n t0)
        double c1_prev = 1.0, c1_cur = c1;  // cos(n t1)
        for (std::size_t n = 1; n <= series.coefficients.size(); ++n) {
            sum += series.coefficients[n - 1] * (c0_cur - c1_cur) / static_cast<double>(n);
            const double c0_next = tc0 * c0_cur - c0_prev;
            const double c1_next = tc1 * c1_cur - c1_prev;
            c0_prev = c0_cur;
            c0_cur = c0_next;
            c1_prev = c1_cur;
            c1_cur = c1_next;
        }
        d.weights[i] = R * sum;
    }
    return d;
}

std::vector<double> assemble_dirac_load(const grid::CartesianGrid& grid,
                                        const DiracLayer& dirac) {
    std::vector<double> load(grid.node_count(), 0.0);
    for (std::size_t i = 0; i < dirac.points.size(); ++i) {
        const Point2& p = dirac.points[i];
        if (p[0] <= 0.0 || p[0] >= 1.0 || p[1] <= 0.0 || p[1] >= 1.0)
            throw std::invalid_argument(
                "assemble_dirac_load: Dirac point must lie strictly inside the unit square");
        const grid::Q1Eval e = grid::q1_eval(grid, p);
        for (int k = 0; k < 4; ++k) load[e.nodes[k]] += dirac.weights[i] * e.values[k];
    }
    return load;
}

std::vector<double> grid_crossing_angles(const Circle& circle, double h) {
    std::vector<double> angles;
    const double R = circle.radius;
    const auto push = [&](double theta) {
        theta = std::fmod(theta, 2.0 * kPi);
        if (theta < 0.0) theta += 2.0 * kPi;
        angles.push_back(theta);
    };
    const auto lines_in = [&](double c) {
        // grid lines k h intersecting [c - R, c + R]
        const auto klo = static_cast<long>(std::ceil((c - R) / h));
        const auto khi = static_cast<long>(std::floor((c + R) / h));
        std::vector<double> vs;
        for (long k = klo; k <= khi; ++k) vs.push_back(static_cast<double>(k) * h);
        return vs;
    };
    for (double xline : lines_in(circle.center[0])) {
        const double t = (xline - circle.center[0]) / R;
        if (t < -1.0 || t > 1.0) continue;
        const double a = std::acos(std::clamp(t, -1.0, 1.0));
        push(a);
        push(-a);
    }
    for (double yline : lines_in(circle.center[1])) {
        const double t = (yline - circle.center[1]) / R;
        if (t < -1.0 || t > 1.0) continue;
        const double a = std::asin(std::clamp(t, -1.0, 1.0));
        push(a);
        push(kPi - a);
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 angles.end());
    return angles;
}

namespace {

// Integrate g(theta) R dtheta over the circle, splitting at cell crossings.
template <typename G>
double integrate_over_circle(const Circle& circle, double h, std::size_t gauss_order, G&& g) {
    std::vector<double> cuts = grid_crossing_angles(circle, h);
    if (cuts.empty()) cuts.push_back(0.0);
    cuts.push_back(cuts.front() + 2.0 * kPi);

    const GaussRule1D& rule = gauss_rule(gauss_order);
    double sum = 0.0;
    for (std::size_t a = 0; a + 1 < cuts.size(); ++a) {
        const double t0 = cuts[a], t1 = cuts[a + 1];
        double piece = 0.0;
        for (std::size_t k = 0; k < rule.points.size(); ++k)
            piece += rule.weights[k] * g(t0 + (t1 - t0) * rule.points[k]);
        sum += (t1 - t0) * piece;
    }
    return circle.radius * sum;
}

}  // namespace

double discrete_trace_seminorm(const grid::FeField& field, const Circle& circle,
                               std::size_t gauss_order) {
    const double h = field.grid->h;
    const double val = integrate_over_circle(circle, h, gauss_order, [&](double theta) {
        const Point2 gr = grid::fe_grad(field, circle.at_angle(theta));
        return gr[0] * gr[0] + gr[1] * gr[1];
    });
    return std::sqrt(val);
}

double pairing_exact(const LayerDensity& density, const grid::FeField& field,
                     const Circle& circle, std::size_t gauss_order) {
    if (std::holds_alternative<PowerDensity1D>(density))
        throw std::invalid_argument("pairing_exact: the power density is 1D-only");
    const double h = field.grid->h;
    return integrate_over_circle(circle, h, gauss_order, [&](double theta) {
        double phi;
        if (const auto* c = std::get_if<ConstantDensity>(&density))
            phi = c->value;
        else
            phi = std::get<SineSeriesDensity>(density).eval(theta);
        return phi * grid::fe_eval(field, circle.at_angle(theta));
    });
}

double pairing_dirac(const DiracLayer& dirac, const grid::FeField& field) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dirac.points.size(); ++i)
        sum += dirac.weights[i] * grid::fe_eval(field, dirac.points[i]);
    return sum;
}

}  // namespace diracfem::layer
