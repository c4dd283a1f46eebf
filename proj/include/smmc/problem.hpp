#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smmc/rng.hpp"

namespace smmc {

// one univariate prior component: log density + direct sampler
struct Marginal {
    std::function<double(double)> log_density;
    std::function<double(RngStream&)> sample;
};

Marginal standard_normal_marginal();

// counts performance-function evaluations; thread-confined, merged at
// synchronization points by the parallel drivers
class EvalCounter {
public:
    void add(long long k = 1) { n_ += k; }
    long long count() const { return n_; }

private:
    long long n_ = 0;
};

// y = f(x) with independent prior marginals; immutable after construction
struct ProblemDefinition {
    int dim = 0;
    std::function<double(std::span<const double>)> perform;
    std::vector<Marginal> marginals;
    double threshold = 0.0; // y*

    void validate() const; // throws ConfigError on malformed definitions
};

ProblemDefinition make_iid_problem(int dim, const Marginal& marginal,
                                   std::function<double(std::span<const double>)> perform,
                                   double threshold);

double evaluate(const ProblemDefinition& problem, std::span<const double> x,
                EvalCounter& counter);

// sum of marginal log densities; -inf where any marginal vanishes
double prior_log_density(const ProblemDefinition& problem, std::span<const double> x);

std::vector<std::vector<double>> sample_prior(const ProblemDefinition& problem,
                                              int n, RngStream& rng);

} // namespace smmc
