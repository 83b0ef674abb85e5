#ifndef DIRACFEM_HARNESS_HPP
#define DIRACFEM_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diracfem/circle.hpp"

namespace diracfem::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Experiment parameters shared by all study drivers. Mesh sizes are dyadic:
/// h = 2^-k for k in [h_min_exp, h_max_exp].
struct ExperimentConfig {
    enum class HtildeRule { EqualH, Fixed, Ratio };

    int h_min_exp = 4;  // coarsest h = 2^-h_min_exp
    int h_max_exp = 7;  // finest   h = 2^-h_max_exp
    HtildeRule htilde_rule = HtildeRule::EqualH;
    double htilde_value = 0.0;  // for Fixed
    double htilde_ratio = 1.0;  // for Ratio: htilde = ratio * h

    std::vector<double> s_list = {0.25, 0.5, 0.75, 1.0};
    std::vector<double> r_list = {0.0, 0.25, 0.4};  // lemma1 study

    double radius = 0.3;
    Point2 center = {0.5, 0.5};
    std::size_t n_series = 2048;

    std::size_t quad_order = 5;
    std::size_t cut_cell_depth = 3;
    std::size_t cut_cell_order = 3;

    double tol_inner = 1e-12;
    double tol_outer = 1e-10;

    std::uint64_t seed = 1;
    std::size_t n_random_fields = 100;

    std::string out_path;  // empty: stdout
    bool timing = false;   // wall_ms stays 0 unless enabled, keeping CSV runs byte-identical
    bool check = false;

    std::vector<double> h_values() const;
    double htilde_for(double h) const;
};

/// Parse a flat key = value config file. Unknown keys are errors.
ExperimentConfig load_config(const std::string& path);
/// Apply a single key = value override (same keys as the config file).
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct ReportRow {
    std::string study;
    double s = 0.0;
    double h = 0.0;
    double htilde = 0.0;
    std::size_t dofs = 0;
    std::size_t n_constraints = 0;
    double error_h1 = 0.0;
    double error_l2 = 0.0;
    std::size_t solver_iters = 0;
    std::int64_t wall_ms = 0;
    bool failed = false;

    // Extra diagnostics, not part of the CSV schema.
    double constraint_residual_inf = 0.0;
    double interior_energy = 0.0;
    double multiplier_density_min = 0.0;
    double multiplier_density_max = 0.0;
};

struct ConvergenceReport {
    std::string study;
    double s = 0.0;  // s (or r) the ladder was run at
    std::vector<ReportRow> rows;
    double fitted_order = 0.0;
    std::vector<double> pairwise_orders;
};

struct FitResult {
    double slope;
    std::vector<double> pairwise;
};

/// Least-squares slope of log(error) vs log(h) plus pairwise slopes.
/// Needs at least 2 rows; zero or negative errors are rejected.
FitResult fit_order(const std::vector<std::pair<double, double>>& rows);

std::vector<ConvergenceReport> run_poisson_convergence(const ExperimentConfig& cfg);
std::vector<ConvergenceReport> run_saddle_convergence(const ExperimentConfig& cfg);
std::vector<ConvergenceReport> run_oned_suite(const ExperimentConfig& cfg);
std::vector<ConvergenceReport> run_lemma1_study(const ExperimentConfig& cfg);
std::vector<ConvergenceReport> run_trace_study(const ExperimentConfig& cfg);

/// Exact CSV schema; fitted orders appended as comment lines prefixed
/// "#order,".
void write_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports);
void write_csv_file(const std::string& path, const std::vector<ConvergenceReport>& reports);

/// Acceptance-band checks per study; returns a human-readable failure list
/// (empty when all bands hold).
std::vector<std::string> check_reports(const std::string& study,
                                       const std::vector<ConvergenceReport>& reports);

/// Deterministic xorshift-based generator for the random-field studies.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next_u64();
    /// Uniform in [-1, 1].
    double next_symmetric();

  private:
    std::uint64_t state_;
};

}  // namespace diracfem::harness

#endif
