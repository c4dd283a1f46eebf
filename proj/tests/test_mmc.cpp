#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "smmc/errors.hpp"
#include "smmc/mmc.hpp"
#include "smmc/problems.hpp"

using namespace smmc;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

ProblemDefinition gaussian_toy() {
    return make_iid_problem(
        1, standard_normal_marginal(),
        [](std::span<const double> x) { return x[0]; }, 4.0);
}

} // namespace

TEST_CASE("mmc_iterate with K=0 samples q_0 without touching theta") {
    auto problem = gaussian_toy();
    BinGrid grid(-5.0, 5.0, 50);
    auto theta0 = ThetaTable::uniform(1, grid.m);
    RngStream rng(20);
    EvalCounter counter;
    auto res = mmc_iterate(problem, grid, theta0, 2000, 0, {}, rng, counter);
    CHECK(res.samples.size() >= 2000);
    for (int i = 1; i <= grid.m; ++i)
        CHECK(res.theta.value(i) == theta0.value(i));
    REQUIRE(res.records.size() == 1);
    long long counted = 0;
    for (long long c : res.records[0].counts) counted += c;
    CHECK(counted == res.samples.size()); // every sample lies in an active bin
}

TEST_CASE("mmc flattens the 1d Gaussian histogram") {
    auto problem = gaussian_toy();
    BinGrid grid(-5.0, 5.0, 50);
    RngStream rng(501);
    EvalCounter counter;
    auto res = mmc_iterate(problem, grid, ThetaTable::uniform(1, grid.m), 10000, 8,
                           {}, rng, counter);
    const auto& counts = res.records.back().counts;
    long long cmin = std::numeric_limits<long long>::max(), cmax = 0;
    for (long long c : counts) {
        if (c == 0) continue;
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    CHECK(cmax > 0);
    CHECK(static_cast<double>(cmax) / static_cast<double>(cmin) <= 10.0);
}

TEST_CASE("mmc bin probabilities approach the analytic Gaussian masses") {
    auto problem = gaussian_toy();
    BinGrid grid(-5.0, 5.0, 50);
    std::vector<double> truth(grid.m);
    for (int i = 1; i <= grid.m; ++i)
        truth[i - 1] = normal_cdf(grid.right_edge(i)) - normal_cdf(grid.left_edge(i));

    auto median_bulk_error = [&](long long n, std::uint64_t seed) {
        std::vector<double> errs;
        for (int rep = 0; rep < 10; ++rep) {
            RngStream rng = RngStream::substream(seed, rep);
            EvalCounter counter;
            auto res = mmc_iterate(problem, grid, ThetaTable::uniform(1, grid.m), n, 6,
                                   {}, rng, counter);
            auto probs = bin_probs_from_theta(res.theta, 1.0);
            double worst = 0.0;
            for (int i = 0; i < grid.m; ++i)
                if (truth[i] >= 1e-4)
                    worst = std::max(worst, std::abs(probs[i] - truth[i]) / truth[i]);
            errs.push_back(worst);
        }
        std::sort(errs.begin(), errs.end());
        return 0.5 * (errs[4] + errs[5]);
    };

    const double e3 = median_bulk_error(1000, 61);
    const double e4 = median_bulk_error(10000, 62);
    const double e5 = median_bulk_error(100000, 63);
    CHECK(e4 < e3);
    CHECK(e5 < e4);
    CHECK(e5 < 0.30);
}

TEST_CASE("mmc_iterate needs a reachable starting domain") {
    auto problem = gaussian_toy();
    BinGrid grid(50.0, 60.0, 10); // no prior mass lands here
    MMCOptions opt;
    opt.max_init_attempts = 2000;
    RngStream rng(4);
    EvalCounter counter;
    CHECK_THROWS_AS(
        mmc_iterate(problem, grid, ThetaTable::uniform(1, grid.m), 100, 2, opt, rng,
                    counter),
        Error);
}

TEST_CASE("is_estimate reduces to the counting estimator at unit weights") {
    const std::vector<int> bins{1, 2, 2, 3, 2, 1};
    const std::vector<double> unit(6, 1.0);
    CHECK(is_estimate(bins, unit, 2) == doctest::Approx(3.0 / 6.0));
    CHECK(is_estimate(bins, unit, 1) == doctest::Approx(2.0 / 6.0));
    CHECK(is_estimate(bins, unit, 9) == 0.0); // empty bin
    CHECK_THROWS_AS(is_estimate(std::vector<int>{}, std::vector<double>{}, 1), Error);
}

TEST_CASE("is_estimate is unbiased under a perfectly flat sampler") {
    // five bins with known masses; flat sampler picks bins uniformly and
    // weights by m * P_bin (rho = 1)
    const std::vector<double> truth{0.4, 0.3, 0.15, 0.1, 0.05};
    const int m = 5, n = 200;
    RngStream rng(88);
    double mean = 0.0;
    const int trials = 1000;
    std::vector<int> bins(n);
    std::vector<double> weights(n);
    for (int t = 0; t < trials; ++t) {
        for (int i = 0; i < n; ++i) {
            bins[i] = 1 + static_cast<int>(rng.uniform_index(m));
            weights[i] = m * truth[bins[i] - 1];
        }
        mean += is_estimate(bins, weights, 1);
    }
    mean /= trials;
    // var of one estimate = (m*P1)^2 * (1/m)(1-1/m)/n
    const double sd_mean =
        truth[0] * std::sqrt((m - 1.0) / n) / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(mean - truth[0]) < 3.0 * sd_mean);
}

TEST_CASE("iteration records track the adaptive path") {
    auto problem = gaussian_toy();
    BinGrid grid(-5.0, 5.0, 50);
    RngStream rng(73);
    EvalCounter counter;
    auto res = mmc_iterate(problem, grid, ThetaTable::uniform(1, grid.m), 3000, 4, {},
                           rng, counter);
    REQUIRE(res.records.size() == 4);
    for (const auto& rec : res.records) {
        long long total = 0;
        for (long long c : rec.counts) total += c;
        CHECK(total == rec.samples);
        CHECK(rec.samples >= 3000);
    }
    CHECK(counter.count() <= 4 * (3000 + 64) + 64);
}
