#include "smmc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smmc/errors.hpp"

namespace smmc {

bool TargetSpec::in_domain(double y, int& bin) const {
    if (grid) {
        const auto i = grid->bin_index(y);
        if (!i || *i < min_bin) return false;
        bin = *i;
        return true;
    }
    bin = 0;
    return y > y_min;
}

double TargetSpec::theta_of_bin(int bin) const {
    return theta ? theta->value(bin) : 1.0;
}

ChainState make_chain_state(const TargetSpec& target, std::vector<double> x,
                            EvalCounter& counter) {
    ChainState s;
    s.y = evaluate(*target.problem, x, counter);
    if (!target.in_domain(s.y, s.bin))
        throw DomainError("make_chain_state: point lies outside the target domain");
    s.x = std::move(x);
    return s;
}

namespace {

// step core operating on raw buffers; candidate holds scratch of length dim
void step_inplace(std::vector<double>& x, double& y, int& bin,
                  std::vector<double>& candidate, const TargetSpec& target,
                  const ProposalSpec& prop, RngStream& rng, EvalCounter& counter,
                  KernelStats& stats) {
    const ProblemDefinition& problem = *target.problem;
    const int d = problem.dim;
    ++stats.steps;

    bool moved = false;
    for (int i = 0; i < d; ++i) {
        const double xi = x[i] + rng.uniform(-prop.half_width, prop.half_width);
        const double log_ratio =
            problem.marginals[i].log_density(xi) - problem.marginals[i].log_density(x[i]);
        if (rng.uniform01() < std::exp(std::min(0.0, log_ratio))) {
            candidate[i] = xi;
            moved = true;
        } else {
            candidate[i] = x[i];
        }
    }
    if (!moved)
        return; // candidate equals current state, f value already known

    const double cy = evaluate(problem, candidate, counter);
    ++stats.candidate_evals;
    int cbin = 0;
    if (!target.in_domain(cy, cbin))
        return;
    const double r = target.theta_of_bin(bin) / target.theta_of_bin(cbin);
    if (r >= 1.0 || rng.uniform01() < r) {
        x.swap(candidate);
        y = cy;
        bin = cbin;
        ++stats.accepted;
    }
}

} // namespace

ChainState mm_step(const ChainState& state, const TargetSpec& target,
                   const ProposalSpec& prop, RngStream& rng, EvalCounter& counter,
                   KernelStats* stats) {
    int bin_check = 0;
    if (!target.in_domain(state.y, bin_check))
        throw DomainError("mm_step: chain state lies outside the target domain");
    KernelStats local;
    ChainState next = state;
    std::vector<double> candidate(state.x.size());
    step_inplace(next.x, next.y, next.bin, candidate, target, prop, rng, counter, local);
    if (stats) *stats += local;
    return next;
}

void SampleBatch::reserve(long long n) {
    xs.reserve(n * dim);
    ys.reserve(n);
    bins.reserve(n);
}

void SampleBatch::append(std::span<const double> x, double y, int bin) {
    xs.insert(xs.end(), x.begin(), x.end());
    ys.push_back(y);
    bins.push_back(bin);
}

std::vector<ChainState> select_seeds(const SampleBatch& samples, RngStream& rng) {
    if (samples.size() == 0)
        throw Error("select_seeds: no samples");
    std::map<int, std::vector<long long>> members;
    for (long long i = 0; i < samples.size(); ++i)
        members[samples.bins[i]].push_back(i);
    std::vector<ChainState> seeds;
    seeds.reserve(members.size());
    for (const auto& [bin, idx] : members) {
        const long long pick = idx[rng.uniform_index(idx.size())];
        ChainState s;
        const auto x = samples.x(pick);
        s.x.assign(x.begin(), x.end());
        s.y = samples.ys[pick];
        s.bin = bin;
        seeds.push_back(std::move(s));
    }
    return seeds;
}

MultiChainResult multi_chain_sample(std::span<const ChainState> seeds,
                                    int steps_per_chain, const TargetSpec& target,
                                    const ProposalSpec& prop, RngStream& rng,
                                    EvalCounter& counter, bool parallel, int burn_in) {
    if (seeds.empty())
        throw Error("multi_chain_sample: no seeds");
    if (steps_per_chain < 1)
        throw Error("multi_chain_sample: steps_per_chain must be >= 1");
    if (burn_in < 0)
        throw Error("multi_chain_sample: burn_in must be >= 0");
    for (const auto& s : seeds) {
        int bin = 0;
        if (!target.in_domain(s.y, bin))
            throw DomainError("multi_chain_sample: seed outside the target domain");
    }

    const int m_prime = static_cast<int>(seeds.size());
    const int d = target.problem->dim;
    std::vector<std::uint64_t> chain_seeds(m_prime);
    for (auto& s : chain_seeds) s = rng.next_u64();

    SampleBatch batch(d);
    const long long total = static_cast<long long>(m_prime) * steps_per_chain;
    batch.xs.assign(total * d, 0.0);
    batch.ys.assign(total, 0.0);
    batch.bins.assign(total, 0);

    std::vector<KernelStats> stats(m_prime);
    std::vector<long long> evals(m_prime, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int c = 0; c < m_prime; ++c) {
        RngStream chain_rng(chain_seeds[c]);
        EvalCounter chain_counter;
        std::vector<double> x(seeds[c].x);
        std::vector<double> candidate(d);
        double y = seeds[c].y;
        int bin = seeds[c].bin;
        double* xs_out = batch.xs.data() + static_cast<long long>(c) * steps_per_chain * d;
        double* ys_out = batch.ys.data() + static_cast<long long>(c) * steps_per_chain;
        int* bins_out = batch.bins.data() + static_cast<long long>(c) * steps_per_chain;
        for (int t = 0; t < burn_in; ++t)
            step_inplace(x, y, bin, candidate, target, prop, chain_rng, chain_counter,
                         stats[c]);
        for (int t = 0; t < steps_per_chain; ++t) {
            step_inplace(x, y, bin, candidate, target, prop, chain_rng, chain_counter,
                         stats[c]);
            std::copy(x.begin(), x.end(), xs_out + static_cast<long long>(t) * d);
            ys_out[t] = y;
            bins_out[t] = bin;
        }
        evals[c] = chain_counter.count();
    }

    MultiChainResult result{std::move(batch), {}};
    for (int c = 0; c < m_prime; ++c) {
        result.stats += stats[c];
        counter.add(evals[c]);
    }
    const double rate = result.stats.acceptance_rate();
    if (rate < 0.05 || rate > 0.95)
        std::cerr << "[smmc] warning: chain acceptance rate " << rate
                  << " outside the 0.05-0.95 sanity band\n";
    return result;
}

} // namespace smmc
