#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smmc/config.hpp"
#include "smmc/distribution.hpp"
#include "smmc/problems.hpp"
#include "smmc/smmc.hpp"
#include "smmc/subset_simulation.hpp"

namespace smmc {

// one fully resolved experiment: problem + method + parameters + seed
struct RunConfig {
    std::string problem;
    std::string method; // mc | ss | mmc | smmc
    std::uint64_t seed = 0;
    int reps = 20;
    std::string out_dir; // empty = nothing persisted
    bool parallel = true;

    std::optional<double> y_star;  // override of the problem default
    std::optional<double> ref_pf;  // override of the oracle value
    std::optional<BinGrid> grid;   // override of the problem default

    // method parameter blocks
    double ss_gamma = 0.1;
    int ss_n_per_level = 1000;
    int ss_max_levels = 50;
    int ss_levels_hint = 10; // budget allocation for sweeps

    int mmc_k_iters = 10;
    long long mmc_n_per_iter = 10000;

    double smmc_alpha = 0.2;
    int smmc_k_iters = 5;
    long long smmc_n_per_iter = 10000;
    int smmc_max_subsets = 64;
    int smmc_subsets_hint = 3; // budget allocation for sweeps

    long long mc_n = 100000;

    double w_prop = 1.0;
    int burn_in = 0;
    int steps_per_chain = 0;
};

RunConfig run_config_from(const Config& cfg);

// distributes a total evaluation budget onto the method's sample knob
void apply_budget(RunConfig& rc, long long budget);

struct ExperimentReport {
    std::string method;
    std::string problem;
    int L = 0;
    double mean_evals = 0.0;
    std::vector<double> estimates;
    std::vector<long long> evals;
    std::optional<double> rmse;
    std::optional<double> ref_pf;
    std::uint64_t seed = 0;
    double wallclock_s = 0.0;
};

// L independent repetitions with per-repetition substreams; repetitions may
// run in parallel, aggregation is in repetition order either way
ExperimentReport run_experiment(const RunConfig& rc);

// relative mean square error (1/L) sum |P_l - P|^2 / P^2
double relative_rmse(const std::vector<double>& estimates, double ref);

std::string report_to_json(const ExperimentReport& report);
void write_report_json(const ExperimentReport& report, const std::string& path);
void write_runs_csv(const ExperimentReport& report, const std::string& path);

// single estimation run producing a full distribution (method mc, mmc or smmc);
// for smmc the subset trace is exported through `trace_out` when given
DistributionEstimate estimate_distribution(const RunConfig& rc,
                                           std::vector<SubsetState>* trace_out = nullptr);

// per subset: {j, m_j, rho_j, theta, bin_probs, evals}
std::string trace_to_json(const std::vector<SubsetState>& trace);

} // namespace smmc
