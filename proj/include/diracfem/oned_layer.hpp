#ifndef DIRACFEM_ONED_LAYER_HPP
#define DIRACFEM_ONED_LAYER_HPP

#include <functional>
#include <string>
#include <vector>

namespace diracfem::oned {

/// Where the collocation point sits inside each subinterval.
struct CollocationRule {
    enum class Kind { Midpoint, Left, Right, Fraction };
    Kind kind = Kind::Midpoint;
    double alpha = 0.5;  // only used for Kind::Fraction, in [0, 1]

    static CollocationRule midpoint() { return {Kind::Midpoint, 0.5}; }
    static CollocationRule left() { return {Kind::Left, 0.0}; }
    static CollocationRule right() { return {Kind::Right, 1.0}; }
    static CollocationRule fraction(double a);
};

/// Partition of [0, 1] into subintervals, one collocation point per piece.
struct IntervalPartition {
    std::vector<double> breakpoints;  // strictly increasing, 0 .. 1
    std::vector<double> collocation;  // one per subinterval

    std::size_t size() const { return collocation.size(); }
    double length(std::size_t i) const { return breakpoints[i + 1] - breakpoints[i]; }
    double mesh_size() const;               // max subinterval length
    double quasi_uniformity_ratio() const;  // max length / min length
};

/// n equal subintervals of [0, 1] with collocation points per rule.
IntervalPartition uniform_partition(std::size_t n, CollocationRule rule = CollocationRule::midpoint());

/// Function on [0, 1] with at most finitely many jumps (at partition breakpoints).
/// One-sided values are well defined at the breakpoints.
class PiecewiseFunction1D {
  public:
    enum class Kind { PiecewiseConstant, Callable };
    enum class Side { Left, Right };

    static PiecewiseFunction1D piecewise_constant(IntervalPartition partition,
                                                  std::vector<double> values);
    /// Smooth callable, tracked with the trivial single-piece partition.
    static PiecewiseFunction1D callable(std::function<double(double)> fn);
    /// Callable with known jump locations taken from `partition`.
    static PiecewiseFunction1D callable_on(IntervalPartition partition,
                                           std::function<double(double)> fn);

    double eval(double x, Side side = Side::Right) const;
    const IntervalPartition& partition() const { return partition_; }
    Kind kind() const { return kind_; }
    const std::vector<double>& values() const { return values_; }

    /// Pointwise difference. Jump set is the union of both partitions'
    /// breakpoints; the finer breakpoint set is kept.
    friend PiecewiseFunction1D operator-(const PiecewiseFunction1D& a,
                                         const PiecewiseFunction1D& b);

  private:
    PiecewiseFunction1D() = default;
    Kind kind_ = Kind::Callable;
    IntervalPartition partition_;
    std::vector<double> values_;
    std::function<double(double)> fn_;
};

/// Fractional Sobolev order r in [0, 1/2).
struct FractionalOrder {
    double r;
    explicit FractionalOrder(double order);
};

/// Quadrature policy for the double-integral seminorm: panels near the
/// singular line y = x are graded geometrically before a fixed Gauss rule
/// is applied.
struct SeminormQuadPolicy {
    std::size_t gauss_order = 6;
    std::size_t grading_depth = 16;
};

struct FractionalNormResult {
    double l2_part;
    double seminorm_part;
    double total;  // l2_part + seminorm_part
};

/// ||w||_{H^r} = (int |w|^2)^{1/2} + (int int |w(y)-w(x)|^2 / |y-x|^{1+2r})^{1/2}.
/// For r = 0 the seminorm part is skipped and total = l2_part.
FractionalNormResult fractional_norm(const PiecewiseFunction1D& w, FractionalOrder order,
                                     const SeminormQuadPolicy& quad = {});

/// P0 interpolant sum_i v(x_i) 1_{gamma_i} on the given partition.
PiecewiseFunction1D p0_interpolate(const std::function<double(double)>& v,
                                   const IntervalPartition& partition);
PiecewiseFunction1D p0_interpolate(const PiecewiseFunction1D& v,
                                   const IntervalPartition& partition);

/// Closed-form pairing of the power density x^{s-1} on (0, htilde) against the
/// hat function v_h(x) = 1 - |x - htilde/2| / h, with a single Dirac placed
/// at xi carrying the full arc weight htilde^s / s.
struct PairingResult {
    double exact_pairing;
    double dirac_pairing;
    double error;
};
PairingResult pairing_power_density(double s, double htilde, double h, double xi);

/// The s-dependent constant of the closed-form pairing error,
/// 1/(s(s+1)) - 1/(s(s+1) 2^s) - 1/(2s).
double pairing_error_constant(double s);

/// One row of an interpolation-order study.
struct OrderStudyRow {
    std::size_t n;
    double h;
    double error;  // ||v - v_h||_{H^r}
};

/// H^r interpolation errors of the P0 interpolant of v over a partition ladder.
std::vector<OrderStudyRow> lemma1_order_study(const std::function<double(double)>& v,
                                              FractionalOrder order,
                                              const std::vector<std::size_t>& n_sequence,
                                              CollocationRule rule = CollocationRule::midpoint(),
                                              const SeminormQuadPolicy& quad = {});

}  // namespace diracfem::oned

#endif
