#pragma once

#include <span>
#include <vector>

#include "smmc/grid.hpp"

namespace smmc {

// per-bin positive weights defining the biasing distribution
// q(x) ~ pi(x)/Theta(f(x)) on the active bins lo..m; entries sum to one
struct ThetaTable {
    int lo = 1;                 // first active bin (1-based)
    std::vector<double> values; // one entry per active bin

    ThetaTable(int lo_, std::vector<double> raw); // normalizes, checks positivity
    static ThetaTable uniform(int lo, int m);

    int m() const { return lo + static_cast<int>(values.size()) - 1; }
    int active_bins() const { return static_cast<int>(values.size()); }
    double value(int bin) const { return values[bin - lo]; }
    bool covers(int bin) const { return bin >= lo && bin <= m(); }
};

// log Theta_i for the bin containing y; throws DomainError outside active bins
double biasing_log_weight(const ThetaTable& theta, const BinGrid& grid, double y);

// adaptive flat-histogram update: Theta'_i ~ Theta_i * max(N_i,1)/n, renormalized;
// counts are per active bin, count floor keeps never-visited bins reachable
ThetaTable update_theta(const ThetaTable& theta, std::span<const long long> counts,
                        long long n);

// restrict to bins new_lo..m and renormalize; surviving ratios preserved
ThetaTable remap_theta(const ThetaTable& theta, int new_lo);

// P_i = Theta_i * rho over the active bins (table already sums to one)
std::vector<double> bin_probs_from_theta(const ThetaTable& theta, double rho);

} // namespace smmc
