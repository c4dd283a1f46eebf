#include "smmc/mmc.hpp"

#include <cmath>

#include "smmc/errors.hpp"

namespace smmc {

namespace {

std::vector<long long> active_counts(const SampleBatch& batch, int lo, int m) {
    std::vector<long long> counts(m - lo + 1, 0);
    for (long long i = 0; i < batch.size(); ++i) {
        const int b = batch.bins[i];
        if (b >= lo && b <= m) ++counts[b - lo];
    }
    return counts;
}

SampleBatch find_initial_pool(const ProblemDefinition& problem, const TargetSpec& target,
                              const MMCOptions& options, RngStream& rng,
                              EvalCounter& counter) {
    SampleBatch pool(problem.dim);
    std::vector<double> x(problem.dim);
    for (long long attempt = 0;
         attempt < options.max_init_attempts && pool.size() < options.seed_pool;
         ++attempt) {
        for (int i = 0; i < problem.dim; ++i)
            x[i] = problem.marginals[i].sample(rng);
        const double y = evaluate(problem, x, counter);
        int bin = 0;
        if (target.in_domain(y, bin))
            pool.append(x, y, bin);
    }
    if (pool.size() == 0)
        throw Error("mmc_iterate: found no in-domain starting point by prior sampling");
    return pool;
}

} // namespace

MMCResult mmc_iterate(const ProblemDefinition& problem, const BinGrid& grid,
                      const ThetaTable& theta0, long long n, int K,
                      const MMCOptions& options, RngStream& rng, EvalCounter& counter,
                      const SampleBatch* initial) {
    problem.validate();
    if (n < 1)
        throw Error("mmc_iterate: n must be >= 1");
    if (K < 0)
        throw Error("mmc_iterate: K must be >= 0");
    if (theta0.m() != grid.m)
        throw Error("mmc_iterate: theta table does not span the grid");

    ThetaTable theta = theta0;
    const int lo = theta.lo;

    TargetSpec target;
    target.problem = &problem;
    target.grid = &grid;
    target.theta = &theta;
    target.min_bin = lo;

    SampleBatch current(problem.dim);
    if (initial && initial->size() > 0)
        current = *initial;
    else
        current = find_initial_pool(problem, target, options, rng, counter);

    MMCResult result{theta, SampleBatch(problem.dim), {}};
    const int passes = std::max(K, 1);
    for (int k = 0; k < passes; ++k) {
        auto seeds = select_seeds(current, rng);
        const int steps =
            options.steps_per_chain > 0
                ? options.steps_per_chain
                : static_cast<int>((n + static_cast<long long>(seeds.size()) - 1) /
                                   static_cast<long long>(seeds.size()));
        auto chains =
            multi_chain_sample(seeds, steps, target, options.proposal, rng, counter,
                               options.parallel, options.burn_in);
        current = std::move(chains.samples);

        MMCIterationRecord rec;
        rec.iteration = k;
        rec.counts = active_counts(current, lo, grid.m);
        rec.samples = current.size();
        result.records.push_back(std::move(rec));

        if (K > 0) {
            theta = update_theta(theta, result.records.back().counts, current.size());
            // target.theta already points at `theta`
        }
    }
    result.theta = theta;
    result.samples = std::move(current);
    return result;
}

double is_estimate(std::span<const int> bins, std::span<const double> weights, int bin) {
    if (bins.size() != weights.size())
        throw Error("is_estimate: bins and weights must have equal length");
    if (bins.empty())
        throw Error("is_estimate: no samples");
    double sum = 0.0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw Error("is_estimate: weights must be positive and finite");
        if (bins[i] == bin) sum += weights[i];
    }
    return sum / static_cast<double>(bins.size());
}

} // namespace smmc
