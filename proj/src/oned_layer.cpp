#include "diracfem/oned_layer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diracfem/quadrature.hpp"

namespace diracfem::oned {

CollocationRule CollocationRule::fraction(double a) {
    if (a < 0.0 || a > 1.0)
        throw std::invalid_argument("CollocationRule::fraction: alpha must lie in [0, 1]");
    return {Kind::Fraction, a};
}

double IntervalPartition::mesh_size() const {
    double h = 0.0;
    for (std::size_t i = 0; i < size(); ++i) h = std::max(h, length(i));
    return h;
}

double IntervalPartition::quasi_uniformity_ratio() const {
    double lo = breakpoints.back(), hi = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        lo = std::min(lo, length(i));
        hi = std::max(hi, length(i));
    }
    return hi / lo;
}

IntervalPartition uniform_partition(std::size_t n, CollocationRule rule) {
    if (n == 0) throw std::invalid_argument("uniform_partition: n must be positive");
    IntervalPartition p;
    p.breakpoints.resize(n + 1);
    p.collocation.resize(n);
    for (std::size_t i = 0; i <= n; ++i)
        p.breakpoints[i] = static_cast<double>(i) / static_cast<double>(n);
    p.breakpoints[n] = 1.0;
    double alpha = rule.alpha;
    switch (rule.kind) {
        case CollocationRule::Kind::Midpoint: alpha = 0.5; break;
        case CollocationRule::Kind::Left: alpha = 0.0; break;
        case CollocationRule::Kind::Right: alpha = 1.0; break;
        case CollocationRule::Kind::Fraction: break;
    }
    for (std::size_t i = 0; i < n; ++i)
        p.collocation[i] = p.breakpoints[i] + alpha * (p.breakpoints[i + 1] - p.breakpoints[i]);
    return p;
}

namespace {

IntervalPartition trivial_partition() {
    IntervalPartition p;
    p.breakpoints = {0.0, 1.0};
    p.collocation = {0.5};
    return p;
}

// Index of the piece containing x, honoring the requested side at breakpoints.
std::size_t locate_piece(const IntervalPartition& p, double x,
                         PiecewiseFunction1D::Side side) {
    const auto& b = p.breakpoints;
    if (x < b.front() || x > b.back())
        throw std::out_of_range("PiecewiseFunction1D: point outside [0, 1]");
    auto it = std::upper_bound(b.begin(), b.end(), x);
    std::size_t i = (it == b.end()) ? p.size() - 1
                                    : static_cast<std::size_t>(it - b.begin()) - 1;
    if (side == PiecewiseFunction1D::Side::Left && i > 0 && x == b[i]) --i;
    return std::min(i, p.size() - 1);
}

}  // namespace

PiecewiseFunction1D PiecewiseFunction1D::piecewise_constant(IntervalPartition partition,
                                                            std::vector<double> values) {
    if (values.size() != partition.size())
        throw std::invalid_argument("piecewise_constant: one value per subinterval required");
    PiecewiseFunction1D f;
    f.kind_ = Kind::PiecewiseConstant;
    f.partition_ = std::move(partition);
    f.values_ = std::move(values);
    return f;
}

PiecewiseFunction1D PiecewiseFunction1D::callable(std::function<double(double)> fn) {
    return callable_on(trivial_partition(), std::move(fn));
}

PiecewiseFunction1D PiecewiseFunction1D::callable_on(IntervalPartition partition,
                                                     std::function<double(double)> fn) {
    PiecewiseFunction1D f;
    f.kind_ = Kind::Callable;
    f.partition_ = std::move(partition);
    f.fn_ = std::move(fn);
    return f;
}

double PiecewiseFunction1D::eval(double x, Side side) const {
    const std::size_t i = locate_piece(partition_, x, side);
    if (kind_ == Kind::PiecewiseConstant) return values_[i];
    return fn_(x);
}

PiecewiseFunction1D operator-(const PiecewiseFunction1D& a, const PiecewiseFunction1D& b) {
    // Merge breakpoint sets so every jump of either operand is tracked.
    std::vector<double> merged;
    merged.reserve(a.partition_.breakpoints.size() + b.partition_.breakpoints.size());
    std::merge(a.partition_.breakpoints.begin(), a.partition_.breakpoints.end(),
               b.partition_.breakpoints.begin(), b.partition_.breakpoints.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    IntervalPartition p;
    p.breakpoints = std::move(merged);
    p.collocation.resize(p.breakpoints.size() - 1);
    for (std::size_t i = 0; i < p.collocation.size(); ++i)
        p.collocation[i] = 0.5 * (p.breakpoints[i] + p.breakpoints[i + 1]);

    auto lhs = a;
    auto rhs = b;
    PiecewiseFunction1D f;
    f.kind_ = PiecewiseFunction1D::Kind::Callable;
    f.partition_ = std::move(p);
    // Interior quadrature nodes never sit on a breakpoint, so the side
    // choice below only matters for explicit one-sided queries.
    f.fn_ = [lhs, rhs](double x) {
        return lhs.eval(x) - rhs.eval(x);
    };
    return f;
}

FractionalOrder::FractionalOrder(double order) : r(order) {
    if (order < 0.0 || order >= 0.5)
        throw std::invalid_argument("FractionalOrder: r must lie in [0, 1/2)");
}

PiecewiseFunction1D p0_interpolate(const std::function<double(double)>& v,
                                   const IntervalPartition& partition) {
    std::vector<double> vals(partition.size());
    for (std::size_t i = 0; i < partition.size(); ++i) vals[i] = v(partition.collocation[i]);
    return PiecewiseFunction1D::piecewise_constant(partition, std::move(vals));
}

PiecewiseFunction1D p0_interpolate(const PiecewiseFunction1D& v,
                                   const IntervalPartition& partition) {
    std::vector<double> vals(partition.size());
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const double x = partition.collocation[i];
        // Evaluate within piece i when the collocation point hits its right end.
        const auto side = (x == partition.breakpoints[i + 1])
                              ? PiecewiseFunction1D::Side::Left
                              : PiecewiseFunction1D::Side::Right;
        vals[i] = v.eval(x, side);
    }
    return PiecewiseFunction1D::piecewise_constant(partition, std::move(vals));
}

namespace {

using Side = PiecewiseFunction1D::Side;

// Kernel |w(y) - w(x)|^2 / |y - x|^{1+2r} for quadrature nodes strictly off
// the breakpoints.
struct SeminormKernel {
    const PiecewiseFunction1D& w;
    double exponent;  // 1 + 2r
    double operator()(double x, double y) const {
        const double d = w.eval(y) - w.eval(x);
        return d * d / std::pow(std::abs(y - x), exponent);
    }
};

// Geometric panels of [0, L] graded toward 0: [0, L 2^-depth], then doubling.
std::vector<std::pair<double, double>> graded_panels(double L, std::size_t depth) {
    std::vector<std::pair<double, double>> panels;
    panels.reserve(depth + 1);
    double hi = L;
    for (std::size_t k = 0; k < depth; ++k) {
        const double lo = 0.5 * hi;
        panels.emplace_back(lo, hi);
        hi = lo;
    }
    panels.emplace_back(0.0, hi);
    return panels;
}

// Diagonal block: int over [a,b]^2. By symmetry, 2x the region y > x,
// parametrized by d = y - x with d graded toward the singular line.
double diagonal_block(const SeminormKernel& K, double a, double b,
                      const SeminormQuadPolicy& q) {
    const double L = b - a;
    const GaussRule1D& g = gauss_rule(q.gauss_order);
    double sum = 0.0;
    for (const auto& [dlo, dhi] : graded_panels(L, q.grading_depth)) {
        for (std::size_t kd = 0; kd < g.points.size(); ++kd) {
            const double d = dlo + (dhi - dlo) * g.points[kd];
            const double wd = (dhi - dlo) * g.weights[kd];
            // x ranges over [a, b - d].
            double inner = 0.0;
            for (std::size_t kx = 0; kx < g.points.size(); ++kx) {
                const double x = a + (L - d) * g.points[kx];
                inner += g.weights[kx] * K(x, x + d);
            }
            sum += wd * (L - d) * inner;
        }
    }
    return 2.0 * sum;
}

// Adjacent block: x in [a, c], y in [c, b], singular at the shared corner.
// Both axes are graded toward c.
double adjacent_block(const SeminormKernel& K, double a, double c, double b,
                      const SeminormQuadPolicy& q) {
    const GaussRule1D& g = gauss_rule(q.gauss_order);
    const auto xpan = graded_panels(c - a, q.grading_depth);
    const auto ypan = graded_panels(b - c, q.grading_depth);
    double sum = 0.0;
    for (const auto& [xlo, xhi] : xpan) {
        for (const auto& [ylo, yhi] : ypan) {
            double panel = 0.0;
            for (std::size_t kx = 0; kx < g.points.size(); ++kx) {
                const double x = c - (xlo + (xhi - xlo) * g.points[kx]);
                double inner = 0.0;
                for (std::size_t ky = 0; ky < g.points.size(); ++ky) {
                    const double y = c + (ylo + (yhi - ylo) * g.points[ky]);
                    inner += g.weights[ky] * K(x, y);
                }
                panel += g.weights[kx] * inner;
            }
            sum += (xhi - xlo) * (yhi - ylo) * panel;
        }
    }
    return sum;
}

// Far block: tensor Gauss, integrand smooth.
double far_block(const SeminormKernel& K, double a1, double b1, double a2, double b2,
                 const SeminormQuadPolicy& q) {
    const GaussRule1D& g = gauss_rule(q.gauss_order);
    double sum = 0.0;
    for (std::size_t kx = 0; kx < g.points.size(); ++kx) {
        const double x = a1 + (b1 - a1) * g.points[kx];
        double inner = 0.0;
        for (std::size_t ky = 0; ky < g.points.size(); ++ky) {
            const double y = a2 + (b2 - a2) * g.points[ky];
            inner += g.weights[ky] * K(x, y);
        }
        sum += g.weights[kx] * inner;
    }
    return (b1 - a1) * (b2 - a2) * sum;
}

}  // namespace

FractionalNormResult fractional_norm(const PiecewiseFunction1D& w, FractionalOrder order,
                                     const SeminormQuadPolicy& quad) {
    const auto& bp = w.partition().breakpoints;
    const std::size_t n = w.partition().size();

    double l2sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        l2sq += gauss_integrate([&](double x) { const double v = w.eval(x); return v * v; },
                                bp[i], bp[i + 1], quad.gauss_order);
    const double l2 = std::sqrt(l2sq);

    if (order.r == 0.0) return {l2, 0.0, l2};

    SeminormKernel K{w, 1.0 + 2.0 * order.r};
    double semisq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        semisq += diagonal_block(K, bp[i], bp[i + 1], quad);
        // Off-diagonal pairs counted once and doubled (kernel is symmetric).
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1)
                semisq += 2.0 * adjacent_block(K, bp[i], bp[i + 1], bp[j + 1], quad);
            else
                semisq += 2.0 * far_block(K, bp[i], bp[i + 1], bp[j], bp[j + 1], quad);
        }
    }
    const double semi = std::sqrt(semisq);
    return {l2, semi, l2 + semi};
}

double pairing_error_constant(double s) {
    return 1.0 / (s * (s + 1.0)) - 1.0 / (s * (s + 1.0) * std::pow(2.0, s)) - 1.0 / (2.0 * s);
}

PairingResult pairing_power_density(double s, double htilde, double h, double xi) {
    if (s <= 0.0) throw std::invalid_argument("pairing_power_density: s must be positive");
    if (htilde <= 0.0) throw std::invalid_argument("pairing_power_density: htilde must be positive");
    if (h <= 0.0) throw std::invalid_argument("pairing_power_density: h must be positive");
    if (xi < 0.0 || xi > htilde)
        throw std::invalid_argument("pairing_power_density: xi must lie in [0, htilde]");

    const double arc_weight = std::pow(htilde, s) / s;  // int_0^htilde x^{s-1}
    const double exact = arc_weight + pairing_error_constant(s) * std::pow(htilde, s + 1.0) / h;
    const double vh_xi = 1.0 - std::abs(xi - 0.5 * htilde) / h;
    const double dirac = arc_weight * vh_xi;
    return {exact, dirac, std::abs(exact - dirac)};
}

std::vector<OrderStudyRow> lemma1_order_study(const std::function<double(double)>& v,
                                              FractionalOrder order,
                                              const std::vector<std::size_t>& n_sequence,
                                              CollocationRule rule,
                                              const SeminormQuadPolicy& quad) {
    std::vector<OrderStudyRow> rows;
    rows.reserve(n_sequence.size());
    for (std::size_t n : n_sequence) {
        const IntervalPartition p = uniform_partition(n, rule);
        const PiecewiseFunction1D vh = p0_interpolate(v, p);
        const PiecewiseFunction1D w = PiecewiseFunction1D::callable_on(p, v) - vh;
        const FractionalNormResult norm = fractional_norm(w, order, quad);
        rows.push_back({n, p.mesh_size(), norm.total});
    }
    return rows;
}

}  // namespace diracfem::oned
