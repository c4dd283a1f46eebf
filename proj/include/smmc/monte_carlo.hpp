#pragma once

#include <optional>

#include "smmc/distribution.hpp"
#include "smmc/kernel.hpp"
#include "smmc/problem.hpp"

namespace smmc {

struct MCResult {
    double p_f = 0.0;     // fraction of samples with f(x) > y*
    long long hits = 0;
    long long n = 0;
    std::optional<DistributionEstimate> estimate; // when a grid was supplied
};

// plain Monte Carlo estimator of P(f(x) > y*); per-block substreams keep the
// result independent of the thread schedule
MCResult run_mc(const ProblemDefinition& problem, long long n, RngStream& rng,
                EvalCounter& counter, const BinGrid* grid = nullptr,
                bool parallel = true);

} // namespace smmc
