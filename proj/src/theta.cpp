#include "smmc/theta.hpp"

#include <algorithm>
#include <cmath>

#include "smmc/errors.hpp"

namespace smmc {

namespace {

void normalize(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw Error("ThetaTable: weights must have a positive finite sum");
    for (double& x : v) x /= sum;
}

} // namespace

ThetaTable::ThetaTable(int lo_, std::vector<double> raw) : lo(lo_), values(std::move(raw)) {
    if (lo < 1)
        throw Error("ThetaTable: first active bin must be >= 1");
    if (values.empty())
        throw Error("ThetaTable: no active bins");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error("ThetaTable: entries must be strictly positive and finite");
    normalize(values);
}

ThetaTable ThetaTable::uniform(int lo, int m) {
    if (m < lo)
        throw Error("ThetaTable::uniform: m < lo");
    return ThetaTable(lo, std::vector<double>(m - lo + 1, 1.0));
}

double biasing_log_weight(const ThetaTable& theta, const BinGrid& grid, double y) {
    const auto bin = grid.bin_index(y);
    if (!bin || !theta.covers(*bin))
        throw DomainError("biasing_log_weight: y falls outside the active bins");
    return std::log(theta.value(*bin));
}

ThetaTable update_theta(const ThetaTable& theta, std::span<const long long> counts,
                        long long n) {
    if (counts.size() != theta.values.size())
        throw Error("update_theta: counts length must match active bins");
    if (n <= 0)
        throw Error("update_theta: sample count must be positive");
    bool any = false;
    for (long long c : counts) any = any || c > 0;
    if (!any)
        throw Error("update_theta: all counts are zero");
    const double dn = static_cast<double>(n);
    std::vector<double> next(theta.values.size());
    for (std::size_t i = 0; i < next.size(); ++i) {
        const double h = static_cast<double>(std::max<long long>(counts[i], 1)) / dn;
        next[i] = theta.values[i] * h;
    }
    return ThetaTable(theta.lo, std::move(next));
}

ThetaTable remap_theta(const ThetaTable& theta, int new_lo) {
    if (new_lo < theta.lo || new_lo > theta.m())
        throw Error("remap_theta: new first bin outside the current table");
    std::vector<double> kept(theta.values.begin() + (new_lo - theta.lo), theta.values.end());
    return ThetaTable(new_lo, std::move(kept));
}

std::vector<double> bin_probs_from_theta(const ThetaTable& theta, double rho) {
    std::vector<double> probs(theta.values.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        probs[i] = theta.values[i] * rho;
    return probs;
}

} // namespace smmc
