#include "smmc/subset_simulation.hpp"

#include <cmath>
#include <limits>

#include "smmc/grid.hpp"

namespace smmc {

SSResult run_ss(const ProblemDefinition& problem, const SSConfig& config,
                RngStream& rng, EvalCounter& counter) {
    problem.validate();
    if (!(config.gamma > 0.0 && config.gamma < 1.0))
        throw ConfigError("run_ss: gamma must lie in (0,1)");
    if (config.n_per_level * config.gamma < 1.0)
        throw ConfigError("run_ss: n_per_level * gamma must be >= 1");
    const long long evals_before = counter.count();
    const double y_star = problem.threshold;

    // level 0: direct prior sampling
    SampleBatch level(problem.dim);
    level.reserve(config.n_per_level);
    {
        std::vector<double> x(problem.dim);
        for (int k = 0; k < config.n_per_level; ++k) {
            for (int i = 0; i < problem.dim; ++i)
                x[i] = problem.marginals[i].sample(rng);
            level.append(x, evaluate(problem, x, counter), 0);
        }
    }

    SSResult result;
    result.p_f = 1.0;
    double y_prev = -std::numeric_limits<double>::infinity();
    const int steps_per_chain = static_cast<int>(std::ceil(1.0 / config.gamma));

    while (true) {
        const long long n = level.size();
        double y_next = quantile(level.ys, 1.0 - config.gamma);
        if (y_next >= y_star) {
            // final level: estimate P(F | F_k) by the indicator average
            long long hits = 0;
            for (double y : level.ys)
                if (y > y_star) ++hits;
            const double p = static_cast<double>(hits) / static_cast<double>(n);
            result.thresholds.push_back(y_star);
            result.cond_probs.push_back(p);
            result.p_f *= p;
            break;
        }
        if (y_next <= y_prev)
            throw DegenerateLevelError(
                "run_ss: level threshold failed to increase; budget too small or "
                "performance values degenerate");

        long long above = 0;
        for (double y : level.ys)
            if (y > y_next) ++above;
        if (above == 0)
            throw DegenerateLevelError("run_ss: no sample above the proposed threshold");

        const double p = static_cast<double>(above) / static_cast<double>(n);
        result.thresholds.push_back(y_next);
        result.cond_probs.push_back(p);
        result.p_f *= p;

        if (result.levels() >= config.max_levels)
            throw SSNonConvergenceError("run_ss: max_levels reached before y*", result);

        // seeds: this level's samples already inside the next event
        std::vector<ChainState> seeds;
        seeds.reserve(above);
        for (long long i = 0; i < level.size(); ++i) {
            if (level.ys[i] > y_next) {
                ChainState s;
                const auto x = level.x(i);
                s.x.assign(x.begin(), x.end());
                s.y = level.ys[i];
                s.bin = 0;
                seeds.push_back(std::move(s));
            }
        }

        TargetSpec target;
        target.problem = &problem;
        target.y_min = y_next;
        auto chains = multi_chain_sample(seeds, steps_per_chain, target, config.proposal,
                                         rng, counter, config.parallel);
        level = std::move(chains.samples);
        y_prev = y_next;
    }

    result.total_evals = counter.count() - evals_before;
    return result;
}

} // namespace smmc
