#include "smmc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smmc/errors.hpp"

namespace smmc {

BinGrid::BinGrid(double a_, double b_, int m_) : a(a_), b(b_), m(m_) {
    if (!(a < b))
        throw ConfigError("BinGrid: requires a < b");
    if (m < 2)
        throw ConfigError("BinGrid: requires m >= 2");
    delta = (b - a) / m;
}

std::optional<int> BinGrid::bin_index(double y) const {
    if (y < a || y > b)
        return std::nullopt;
    if (y == b)
        return m;
    int i = static_cast<int>(std::floor((y - a) / delta)) + 1;
    // guard against edge rounding
    if (i < 1) i = 1;
    if (i > m) i = m;
    if (y < left_edge(i)) --i;
    else if (i < m && y >= right_edge(i)) ++i;
    return i;
}

int align_threshold(const BinGrid& grid, double y_star) {
    if (!(y_star < grid.b))
        throw AlignmentError("align_threshold: threshold must lie below the upper edge b");
    const double offset = (y_star - grid.a) / grid.delta;
    const double nearest = std::round(offset);
    const double scale = std::max({std::abs(offset), std::abs(nearest), 1.0});
    if (std::abs(offset - nearest) > 1e-9 * scale)
        throw AlignmentError(
            "align_threshold: threshold " + std::to_string(y_star) +
            " is not on a bin edge; adjust a, b, or m so that (y*-a)/delta is integral");
    if (nearest < 0)
        throw AlignmentError("align_threshold: threshold lies below the lower edge a");
    if (nearest >= grid.m)
        throw AlignmentError("align_threshold: threshold must lie below the upper edge b");
    return static_cast<int>(nearest) + 1;
}

HistogramCounts histogram(const BinGrid& grid, std::span<const double> ys) {
    HistogramCounts h;
    h.counts.assign(grid.m, 0);
    for (double y : ys) {
        if (auto i = grid.bin_index(y))
            ++h.counts[*i - 1];
        else
            ++h.out_of_range;
    }
    return h;
}

double quantile(std::span<const double> values, double p) {
    if (values.empty())
        throw Error("quantile: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<long long>(sorted.size());
    long long k = static_cast<long long>(std::ceil(p * static_cast<double>(n)));
    if (k < 1) k = 1;
    if (k > n) k = n;
    return sorted[k - 1];
}

} // namespace smmc
