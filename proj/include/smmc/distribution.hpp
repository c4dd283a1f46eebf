#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "smmc/grid.hpp"

namespace smmc {

// per-bin probability estimate over a grid; rho is the total mass of [a,b]
// and is always the backward-order sum of probs so that the CCDF head
// reproduces it exactly
struct DistributionEstimate {
    BinGrid grid;
    std::vector<double> probs; // size m, P_i >= 0
    double rho = 0.0;

    DistributionEstimate(BinGrid g, std::vector<double> p);
};

// (bin center, P_i / delta)
std::vector<std::pair<double, double>> pdf_from_probs(const DistributionEstimate& est);

// (bin left edge, sum_{j>=i} P_j); nonincreasing, first value == rho
std::vector<std::pair<double, double>> ccdf_from_probs(const DistributionEstimate& est);

// sum of P_i over bins >= m_star
double failure_prob(const DistributionEstimate& est, int m_star);

// step-function inverse of the CCDF: left edge of the first bin whose CCDF
// drops to 1-p or below; throws ResolutionError when 1-p is unresolvable
double extreme_quantile(const DistributionEstimate& est, double p);

// CSV with header bin_center,bin_left,prob,pdf,ccdf; 17 significant digits
// so numeric fields round-trip bit-exactly
void write_csv(const DistributionEstimate& est, std::ostream& os);
void write_csv_file(const DistributionEstimate& est, const std::string& path);
DistributionEstimate read_csv(std::istream& is);
DistributionEstimate read_csv_file(const std::string& path);

} // namespace smmc
