#include "smmc/problem.hpp"

#include <cmath>
#include <limits>

#include "smmc/errors.hpp"

namespace smmc {

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178; // log(sqrt(2*pi))
}

Marginal standard_normal_marginal() {
    Marginal m;
    m.log_density = [](double x) { return -0.5 * x * x - kLogSqrt2Pi; };
    m.sample = [](RngStream& rng) { return rng.normal(); };
    return m;
}

void ProblemDefinition::validate() const {
    if (dim < 1)
        throw ConfigError("problem dimension must be >= 1");
    if (static_cast<int>(marginals.size()) != dim)
        throw ConfigError("problem needs exactly dim marginals");
    if (!perform)
        throw ConfigError("problem has no performance function");
}

ProblemDefinition make_iid_problem(int dim, const Marginal& marginal,
                                   std::function<double(std::span<const double>)> perform,
                                   double threshold) {
    ProblemDefinition p;
    p.dim = dim;
    p.perform = std::move(perform);
    p.marginals.assign(dim, marginal);
    p.threshold = threshold;
    p.validate();
    return p;
}

double evaluate(const ProblemDefinition& problem, std::span<const double> x,
                EvalCounter& counter) {
    if (static_cast<int>(x.size()) != problem.dim)
        throw DomainError("evaluate: input has wrong dimension");
    counter.add();
    return problem.perform(x);
}

double prior_log_density(const ProblemDefinition& problem, std::span<const double> x) {
    if (static_cast<int>(x.size()) != problem.dim)
        throw DomainError("prior_log_density: input has wrong dimension");
    double sum = 0.0;
    for (int i = 0; i < problem.dim; ++i) {
        const double li = problem.marginals[i].log_density(x[i]);
        if (!(li > -std::numeric_limits<double>::infinity()))
            return -std::numeric_limits<double>::infinity();
        sum += li;
    }
    return sum;
}

std::vector<std::vector<double>> sample_prior(const ProblemDefinition& problem,
                                              int n, RngStream& rng) {
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        std::vector<double> x(problem.dim);
        for (int i = 0; i < problem.dim; ++i)
            x[i] = problem.marginals[i].sample(rng);
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace smmc
