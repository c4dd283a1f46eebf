#include "smmc/smmc.hpp"

#include <algorithm>

namespace smmc {

int select_next_cutoff(std::span<const double> final_ys, double alpha,
                       const BinGrid& grid, int m_j, int m_star) {
    const double y_alpha = quantile(final_ys, 1.0 - alpha);
    const auto bin = grid.bin_index(y_alpha);
    if (!bin)
        throw DomainError("select_next_cutoff: quantile fell outside the grid");
    int m_next = std::min(*bin, m_star);
    if (m_next <= m_j)
        m_next = m_j + 1; // forced progress; caller guarantees m_j < m_star
    return m_next;
}

SMMCResult run_smmc(const ProblemDefinition& problem, const BinGrid& grid, int m_star,
                    const SMMCConfig& config, RngStream& rng, EvalCounter& counter) {
    problem.validate();
    if (m_star < 1 || m_star > grid.m)
        throw Error("run_smmc: m_star out of range");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw ConfigError("run_smmc: alpha must lie in (0,1)");
    if (static_cast<double>(config.n_per_iter) * config.alpha < 10.0)
        throw ConfigError("run_smmc: n_per_iter * alpha must be >= 10");

    const long long evals_before = counter.count();

    MMCOptions mmc_options;
    mmc_options.proposal = config.proposal;
    mmc_options.parallel = config.parallel;
    mmc_options.seed_pool = config.seed_pool;

    int lo = 1;
    double rho = 1.0;
    ThetaTable theta = ThetaTable::uniform(1, grid.m);
    std::vector<double> stitched(grid.m, 0.0);
    std::vector<SubsetState> trace;
    SampleBatch inherited(problem.dim);
    bool have_seeds = false;
    int j = 0;

    while (lo < m_star) {
        if (j >= config.max_subsets)
            throw SMMCNonConvergenceError("run_smmc: max_subsets reached before y*",
                                          std::move(trace));
        const long long evals_at_entry = counter.count();
        auto mmc = mmc_iterate(problem, grid, theta, config.n_per_iter, config.k_iters,
                               mmc_options, rng, counter,
                               have_seeds ? &inherited : nullptr);
        theta = mmc.theta;

        // P_i = (Theta_i / sum Theta) * rho_j for i >= m_j; table sums to one
        std::vector<double> probs = bin_probs_from_theta(theta, rho);

        const int m_next =
            select_next_cutoff(mmc.samples.ys, config.alpha, grid, lo, m_star);
        double rho_next = 0.0;
        for (int i = grid.m; i >= m_next; --i) rho_next += probs[i - lo];

        // bins m_j..m_next-1 leave the active set; freeze their estimates
        for (int i = lo; i < m_next; ++i) stitched[i - 1] = probs[i - lo];

        SubsetState state;
        state.j = j;
        state.m_j = lo;
        state.rho_j = rho;
        state.theta = theta.values;
        state.probs = probs;
        state.evals = counter.count() - evals_at_entry;
        trace.push_back(std::move(state));

        theta = remap_theta(theta, m_next);

        // seed handoff: final samples already inside the new domain
        SampleBatch next_seeds(problem.dim);
        for (long long i = 0; i < mmc.samples.size(); ++i)
            if (mmc.samples.bins[i] >= m_next)
                next_seeds.append(mmc.samples.x(i), mmc.samples.ys[i],
                                  mmc.samples.bins[i]);
        if (next_seeds.size() == 0)
            throw SMMCNonConvergenceError(
                "run_smmc: no final-iteration sample lies in the next subset",
                std::move(trace));
        inherited = std::move(next_seeds);
        have_seeds = true;

        lo = m_next;
        rho = rho_next;
        ++j;
    }

    // tail bins m_J..m carry the last subset's estimates (remap preserved ratios)
    const auto tail = bin_probs_from_theta(theta, rho);
    for (int i = lo; i <= grid.m; ++i) stitched[i - 1] = tail[i - lo];

    SMMCResult result{DistributionEstimate(grid, std::move(stitched)), rho,
                      std::move(trace), counter.count() - evals_before};
    return result;
}

MsePhi mse_optimal_phi(long long N, int m, int m_star) {
    if (N <= 0)
        throw Error("mse_optimal_phi: N must be positive");
    if (m <= m_star)
        throw Error("mse_optimal_phi: requires m > m_star");
    const double excess = static_cast<double>(m - m_star - 1);
    const double n = static_cast<double>(N);
    return {n / (n + excess), excess / (excess + n)};
}

} // namespace smmc
