#pragma once

#include <limits>
#include <span>
#include <vector>

#include "smmc/grid.hpp"
#include "smmc/problem.hpp"
#include "smmc/rng.hpp"
#include "smmc/theta.hpp"

namespace smmc {

// per-dimension symmetric uniform window [x_i - half_width, x_i + half_width]
struct ProposalSpec {
    double half_width = 1.0;
};

// target density ~ pi(x)/Theta(f(x)) restricted to a domain on y.
// grid mode: domain = bins min_bin..m of `grid`, weights from `theta`
// threshold mode (grid == nullptr): domain = { y > y_min }, Theta == 1
struct TargetSpec {
    const ProblemDefinition* problem = nullptr;
    const BinGrid* grid = nullptr;
    const ThetaTable* theta = nullptr; // may stay null for Theta == 1
    int min_bin = 1;
    double y_min = -std::numeric_limits<double>::infinity();

    // returns true and fills bin (0 in threshold mode) when y lies in D
    bool in_domain(double y, int& bin) const;
    double theta_of_bin(int bin) const; // 1.0 when theta is null
};

struct ChainState {
    std::vector<double> x;
    double y = 0.0; // cached f(x)
    int bin = 0;    // cached bin index, 0 in threshold mode
};

// evaluates f(x) and validates membership in D; throws DomainError otherwise
ChainState make_chain_state(const TargetSpec& target, std::vector<double> x,
                            EvalCounter& counter);

struct KernelStats {
    long long steps = 0;
    long long candidate_evals = 0;
    long long accepted = 0;

    double acceptance_rate() const {
        return steps > 0 ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0;
    }
    KernelStats& operator+=(const KernelStats& o) {
        steps += o.steps;
        candidate_evals += o.candidate_evals;
        accepted += o.accepted;
        return *this;
    }
};

// one modified-Metropolis step: coordinate-wise prior-ratio acceptance,
// then a domain/weight acceptance on the candidate; at most one f evaluation
ChainState mm_step(const ChainState& state, const TargetSpec& target,
                   const ProposalSpec& prop, RngStream& rng, EvalCounter& counter,
                   KernelStats* stats = nullptr);

// flat sample storage shared by the chain drivers
struct SampleBatch {
    int dim = 0;
    std::vector<double> xs;   // row-major, size() * dim
    std::vector<double> ys;
    std::vector<int> bins;

    explicit SampleBatch(int d = 0) : dim(d) {}
    long long size() const { return static_cast<long long>(ys.size()); }
    std::span<const double> x(long long i) const {
        return {xs.data() + i * dim, static_cast<std::size_t>(dim)};
    }
    void reserve(long long n);
    void append(std::span<const double> x, double y, int bin);
};

// one uniformly chosen sample per occupied bin, ascending bin order
std::vector<ChainState> select_seeds(const SampleBatch& samples, RngStream& rng);

struct MultiChainResult {
    SampleBatch samples;
    KernelStats stats;
};

// runs one chain per seed for steps_per_chain recorded steps (plus burn_in
// discarded ones) and concatenates the trajectories in seed order. Chains own
// deterministic substreams derived from `rng`, so the parallel and serial
// schedules are bit-identical.
MultiChainResult multi_chain_sample(std::span<const ChainState> seeds,
                                    int steps_per_chain, const TargetSpec& target,
                                    const ProposalSpec& prop, RngStream& rng,
                                    EvalCounter& counter, bool parallel = true,
                                    int burn_in = 0);

} // namespace smmc
