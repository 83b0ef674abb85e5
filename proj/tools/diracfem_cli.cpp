// Command-line driver for the convergence studies. Emits CSV to stdout or a
// file; with --check the study's acceptance bands are verified and a
// violation exits with code 4.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "diracfem/harness.hpp"

namespace {

using diracfem::harness::ConvergenceReport;
using diracfem::harness::ExperimentConfig;

struct CommonOpts {
    std::string config_path;
    std::string h_min, h_max, s, r;
    double htilde_ratio = -1.0;
    std::string out;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool timing = false;
    bool check = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "flat key = value config file");
    sub->add_option("--h-min", o.h_min, "coarsest mesh size (2^-k or an exact power of two)");
    sub->add_option("--h-max", o.h_max, "finest mesh size");
    sub->add_option("--s", o.s, "comma-separated s values");
    sub->add_option("--r", o.r, "comma-separated fractional orders (lemma1)");
    sub->add_option("--htilde-ratio", o.htilde_ratio, "htilde = ratio * h");
    sub->add_option("--out", o.out, "output CSV path (default: stdout)");
    sub->add_option("--seed", o.seed, "seed for random-field studies")
        ->each([&](const std::string&) { o.has_seed = true; });
    sub->add_flag("--timing", o.timing, "record wall-clock times in the CSV");
    sub->add_flag("--check", o.check, "verify the study's acceptance bands");
}

ExperimentConfig build_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = diracfem::harness::load_config(o.config_path);
    if (!o.h_min.empty()) diracfem::harness::apply_config_entry(cfg, "h_min", o.h_min);
    if (!o.h_max.empty()) diracfem::harness::apply_config_entry(cfg, "h_max", o.h_max);
    if (!o.s.empty()) diracfem::harness::apply_config_entry(cfg, "s", o.s);
    if (!o.r.empty()) diracfem::harness::apply_config_entry(cfg, "r", o.r);
    if (o.htilde_ratio > 0.0) {
        cfg.htilde_rule = ExperimentConfig::HtildeRule::Ratio;
        cfg.htilde_ratio = o.htilde_ratio;
    }
    if (!o.out.empty()) cfg.out_path = o.out;
    if (o.has_seed) cfg.seed = o.seed;
    if (o.timing) cfg.timing = true;
    cfg.check = o.check;
    return cfg;
}

int run_study(const std::string& study, const CommonOpts& opts,
              const std::function<std::vector<ConvergenceReport>(const ExperimentConfig&)>& run) {
    try {
        const ExperimentConfig cfg = build_config(opts);
        const std::vector<ConvergenceReport> reports = run(cfg);
        if (cfg.out_path.empty())
            diracfem::harness::write_csv(std::cout, reports);
        else
            diracfem::harness::write_csv_file(cfg.out_path, reports);
        for (const auto& report : reports)
            for (const auto& row : report.rows)
                if (row.failed) {
                    std::cerr << "solver failure in study " << study << " at h=" << row.h
                              << "\n";
                    return 3;
                }
        if (cfg.check) {
            const auto failures = diracfem::harness::check_reports(study, reports);
            for (const auto& msg : failures) std::cerr << "check failed: " << msg << "\n";
            if (!failures.empty()) return 4;
        }
        return 0;
    } catch (const diracfem::harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Finite element studies for single-layer right-hand sides approximated by Dirac "
        "masses"};
    app.require_subcommand(1);

    struct Study {
        std::string name;
        std::string desc;
        std::vector<ConvergenceReport> (*run)(const ExperimentConfig&);
    };
    const std::vector<Study> studies = {
        {"poisson", "2D Poisson convergence with a single-layer right-hand side",
         diracfem::harness::run_poisson_convergence},
        {"saddle", "fictitious-domain saddle-point convergence",
         diracfem::harness::run_saddle_convergence},
        {"oned", "1D closed-form pairing errors for the power density",
         diracfem::harness::run_oned_suite},
        {"lemma1", "P0 interpolation orders in fractional Sobolev norms",
         diracfem::harness::run_lemma1_study},
        {"trace", "discrete trace-constant stability over random fields",
         diracfem::harness::run_trace_study},
    };

    std::vector<CommonOpts> opts(studies.size());
    for (std::size_t i = 0; i < studies.size(); ++i)
        add_common(app.add_subcommand(studies[i].name, studies[i].desc), opts[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < studies.size(); ++i)
        if (app.get_subcommand(studies[i].name)->parsed())
            return run_study(studies[i].name, opts[i], studies[i].run);
    return 2;
}
