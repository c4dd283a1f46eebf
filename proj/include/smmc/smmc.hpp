#pragma once

#include <span>
#include <string>
#include <vector>

#include "smmc/distribution.hpp"
#include "smmc/errors.hpp"
#include "smmc/mmc.hpp"

namespace smmc {

struct SMMCConfig {
    double alpha = 0.2;        // tail fraction selecting the next cutoff
    long long n_per_iter = 10000;
    int k_iters = 5;           // MMC iterations per subset
    int max_subsets = 64;
    ProposalSpec proposal;
    bool parallel = true;
    int seed_pool = 64;
};

// one row of the subset trace
struct SubsetState {
    int j = 0;
    int m_j = 1;                // first active bin of subset j
    double rho_j = 1.0;         // estimated probability of B^j
    std::vector<double> theta;  // post-MMC table over bins m_j..m
    std::vector<double> probs;  // P_i for i >= m_j
    long long evals = 0;
};

struct SMMCResult {
    DistributionEstimate estimate; // all bins, stitched across subsets
    double p_f = 0.0;              // rho_J
    std::vector<SubsetState> trace;
    long long total_evals = 0;
};

struct SMMCNonConvergenceError : Error {
    SMMCNonConvergenceError(const std::string& msg, std::vector<SubsetState> trace_)
        : Error(msg), trace(std::move(trace_)) {}
    std::vector<SubsetState> trace;
};

// next subset start: bin of the (1-alpha)-quantile of the final samples,
// clipped to m_star, forced at least one bin past m_j
int select_next_cutoff(std::span<const double> final_ys, double alpha,
                       const BinGrid& grid, int m_j, int m_star);

// nested-interval multicanonical estimation: MMC per subset, alpha-quantile
// cutoffs, theta remapping, rho recursion; returns the failure probability
// rho_J together with the stitched full-range distribution estimate
SMMCResult run_smmc(const ProblemDefinition& problem, const BinGrid& grid, int m_star,
                    const SMMCConfig& config, RngStream& rng, EvalCounter& counter);

struct MsePhi {
    double phi_opt = 1.0;
    double mse_min_factor = 0.0; // MSE_min = factor * P_j^2
};

// optimal rho-scaling factor from the perfectly-flat estimator analysis
MsePhi mse_optimal_phi(long long N, int m, int m_star);

} // namespace smmc
