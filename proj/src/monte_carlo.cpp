#include "smmc/monte_carlo.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smmc/errors.hpp"

namespace smmc {

MCResult run_mc(const ProblemDefinition& problem, long long n, RngStream& rng,
                EvalCounter& counter, const BinGrid* grid, bool parallel) {
    if (n < 1)
        throw Error("run_mc: need at least one sample");
    problem.validate();

    constexpr long long kBlock = 8192;
    const long long blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> block_seeds(blocks);
    for (auto& s : block_seeds) s = rng.next_u64();

    const int m = grid ? grid->m : 0;
    std::vector<long long> hits(blocks, 0);
    std::vector<long long> counts; // per block, m bins each
    if (grid) counts.assign(blocks * m, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long bidx = 0; bidx < blocks; ++bidx) {
        RngStream block_rng(block_seeds[bidx]);
        const long long lo = bidx * kBlock;
        const long long hi = std::min(n, lo + kBlock);
        std::vector<double> x(problem.dim);
        long long block_hits = 0;
        long long* block_counts = grid ? counts.data() + bidx * m : nullptr;
        for (long long k = lo; k < hi; ++k) {
            for (int i = 0; i < problem.dim; ++i)
                x[i] = problem.marginals[i].sample(block_rng);
            const double y = problem.perform(x);
            if (y > problem.threshold) ++block_hits;
            if (grid) {
                if (auto bin = grid->bin_index(y))
                    ++block_counts[*bin - 1];
            }
        }
        hits[bidx] = block_hits;
    }

    MCResult result;
    result.n = n;
    for (long long bidx = 0; bidx < blocks; ++bidx) result.hits += hits[bidx];
    result.p_f = static_cast<double>(result.hits) / static_cast<double>(n);
    counter.add(n);
    if (grid) {
        std::vector<double> probs(m, 0.0);
        for (long long bidx = 0; bidx < blocks; ++bidx)
            for (int i = 0; i < m; ++i)
                probs[i] += static_cast<double>(counts[bidx * m + i]);
        for (double& p : probs) p /= static_cast<double>(n);
        result.estimate = DistributionEstimate(*grid, std::move(probs));
    }
    return result;
}

} // namespace smmc
