// timing comparison of the serial reference path against the OpenMP path
// for the multi-chain kernel and plain Monte Carlo

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smmc/kernel.hpp"
#include "smmc/monte_carlo.hpp"
#include "smmc/problems.hpp"

using namespace smmc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct BenchResult {
    double serial_s = 0.0;
    double parallel_s = 0.0;
    bool identical = false;
};

BenchResult bench_chains(const ProblemDefinition& problem, const BinGrid& grid,
                         int n_chains, int steps) {
    ThetaTable theta = ThetaTable::uniform(1, grid.m);
    TargetSpec target;
    target.problem = &problem;
    target.grid = &grid;
    target.theta = &theta;

    // seeds from prior rejection
    RngStream seed_rng(99);
    EvalCounter seed_counter;
    std::vector<ChainState> seeds;
    std::vector<double> x(problem.dim);
    while (static_cast<int>(seeds.size()) < n_chains) {
        for (int i = 0; i < problem.dim; ++i)
            x[i] = problem.marginals[i].sample(seed_rng);
        const double y = evaluate(problem, x, seed_counter);
        int bin = 0;
        if (target.in_domain(y, bin))
            seeds.push_back({x, y, bin});
    }

    ProposalSpec prop;
    BenchResult r;

    RngStream rng_serial(7);
    EvalCounter c_serial;
    auto t0 = std::chrono::steady_clock::now();
    auto serial = multi_chain_sample(seeds, steps, target, prop, rng_serial, c_serial,
                                     /*parallel=*/false);
    r.serial_s = seconds_since(t0);

    RngStream rng_parallel(7);
    EvalCounter c_parallel;
    t0 = std::chrono::steady_clock::now();
    auto parallel = multi_chain_sample(seeds, steps, target, prop, rng_parallel,
                                       c_parallel, /*parallel=*/true);
    r.parallel_s = seconds_since(t0);

    r.identical = serial.samples.ys == parallel.samples.ys &&
                  serial.samples.xs == parallel.samples.xs &&
                  c_serial.count() == c_parallel.count();
    return r;
}

BenchResult bench_mc(const ProblemDefinition& problem, long long n) {
    BenchResult r;
    RngStream rng_serial(11);
    EvalCounter c1;
    auto t0 = std::chrono::steady_clock::now();
    auto serial = run_mc(problem, n, rng_serial, c1, nullptr, /*parallel=*/false);
    r.serial_s = seconds_since(t0);

    RngStream rng_parallel(11);
    EvalCounter c2;
    t0 = std::chrono::steady_clock::now();
    auto parallel = run_mc(problem, n, rng_parallel, c2, nullptr, /*parallel=*/true);
    r.parallel_s = seconds_since(t0);

    r.identical = serial.hits == parallel.hits;
    return r;
}

void report(const char* name, const BenchResult& r) {
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name,
                r.serial_s, r.parallel_s,
                r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0,
                r.identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both paths run serially\n");
#endif

    {
        auto spec = benchmark_by_name("norm10");
        report("norm10 chains (64 x 5000)",
               bench_chains(spec.problem, spec.grid, 64, 5000));
        report("norm10 plain MC (2e6)", bench_mc(spec.problem, 2000000));
    }
    {
        auto spec = benchmark_by_name("quarter-car");
        report("quarter-car chains (16 x 500)",
               bench_chains(spec.problem, spec.grid, 16, 500));
        report("quarter-car plain MC (1e5)", bench_mc(spec.problem, 100000));
    }
    return 0;
}
