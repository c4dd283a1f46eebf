#pragma once

#include <span>
#include <vector>

#include "smmc/kernel.hpp"
#include "smmc/problem.hpp"
#include "smmc/theta.hpp"

namespace smmc {

struct MMCOptions {
    ProposalSpec proposal;
    bool parallel = true;
    int seed_pool = 64;                   // in-domain prior points for iteration 0
    long long max_init_attempts = 100000; // rejection cap for the initial search
    int burn_in = 0;                      // discarded steps per chain
    int steps_per_chain = 0;              // 0 = derive from n and the seed count
};

struct MMCIterationRecord {
    int iteration = 0;
    std::vector<long long> counts; // per active bin
    long long samples = 0;
};

struct MMCResult {
    ThetaTable theta;
    SampleBatch samples; // final iteration's trajectory
    std::vector<MMCIterationRecord> records;
};

// K adaptive iterations of the flat-histogram update over the active bins
// theta0.lo..m; each iteration draws ~n samples through the multi-chain
// kernel and re-weights. K == 0 runs a single sampling pass with no update.
// Seeds come from `initial` when given, otherwise from prior rejection
// sampling (only viable when the active domain has non-negligible mass).
MMCResult mmc_iterate(const ProblemDefinition& problem, const BinGrid& grid,
                      const ThetaTable& theta0, long long n, int K,
                      const MMCOptions& options, RngStream& rng, EvalCounter& counter,
                      const SampleBatch* initial = nullptr);

// self-unnormalized importance-sampling estimate of P_i: (1/N) sum I_{bin} w
double is_estimate(std::span<const int> bins, std::span<const double> weights, int bin);

} // namespace smmc
