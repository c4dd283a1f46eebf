#pragma once

#include <optional>
#include <span>
#include <vector>

namespace smmc {

// equal-width partition of [a,b] into m bins; bins are 1-based and
// left-closed right-open, the last one closed at b
struct BinGrid {
    double a = 0.0;
    double b = 1.0;
    int m = 2;
    double delta = 0.5;

    BinGrid(double a_, double b_, int m_);

    double center(int i) const { return a + (i - 0.5) * delta; }
    double left_edge(int i) const { return a + (i - 1) * delta; }
    double right_edge(int i) const { return a + i * delta; }

    // bin containing y, or nullopt outside [a,b]; y == b maps to bin m
    std::optional<int> bin_index(double y) const;
};

// index m* with left_edge(m*) == y*; throws AlignmentError when y* is not
// on a bin edge (within 1e-9 relative) or y* >= b
int align_threshold(const BinGrid& grid, double y_star);

struct HistogramCounts {
    std::vector<long long> counts; // size m, 0-based storage for bins 1..m
    long long out_of_range = 0;
};

HistogramCounts histogram(const BinGrid& grid, std::span<const double> ys);

// order statistic at ceil(p*N) of the ascending sort; no interpolation
double quantile(std::span<const double> values, double p);

} // namespace smmc
