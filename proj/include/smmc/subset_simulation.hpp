#pragma once

#include <string>
#include <vector>

#include "smmc/errors.hpp"
#include "smmc/kernel.hpp"
#include "smmc/problem.hpp"

namespace smmc {

struct SSConfig {
    double gamma = 0.1;     // level probability target
    int n_per_level = 1000; // samples per level
    int max_levels = 50;    // safety cap
    ProposalSpec proposal;
    bool parallel = true;
};

struct SSResult {
    std::vector<double> thresholds; // y_1..y_K, final entry equals y*
    std::vector<double> cond_probs; // P(F_k | F_{k-1})
    double p_f = 0.0;               // product of cond_probs
    long long total_evals = 0;

    int levels() const { return static_cast<int>(thresholds.size()); }
};

// thrown when max_levels is hit before the threshold reaches y*
struct SSNonConvergenceError : Error {
    SSNonConvergenceError(const std::string& msg, SSResult partial_)
        : Error(msg), partial(std::move(partial_)) {}
    SSResult partial;
};

// Au-Beck subset simulation: percentile-selected nested levels, conditional
// sampling via the modified Metropolis kernel with Theta == 1
SSResult run_ss(const ProblemDefinition& problem, const SSConfig& config,
                RngStream& rng, EvalCounter& counter);

} // namespace smmc
