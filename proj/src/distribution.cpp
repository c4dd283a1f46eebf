#include "smmc/distribution.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smmc/errors.hpp"

namespace smmc {

namespace {

double backward_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) s += *it;
    return s;
}

void append_field(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    line += buf;
}

} // namespace

DistributionEstimate::DistributionEstimate(BinGrid g, std::vector<double> p)
    : grid(g), probs(std::move(p)) {
    if (static_cast<int>(probs.size()) != grid.m)
        throw Error("DistributionEstimate: probs size must equal bin count");
    for (double v : probs)
        if (!(v >= 0.0))
            throw Error("DistributionEstimate: negative or NaN bin probability");
    rho = backward_sum(probs);
}

std::vector<std::pair<double, double>> pdf_from_probs(const DistributionEstimate& est) {
    std::vector<std::pair<double, double>> out(est.probs.size());
    for (int i = 1; i <= est.grid.m; ++i)
        out[i - 1] = {est.grid.center(i), est.probs[i - 1] / est.grid.delta};
    return out;
}

std::vector<std::pair<double, double>> ccdf_from_probs(const DistributionEstimate& est) {
    std::vector<std::pair<double, double>> out(est.probs.size());
    double tail = 0.0;
    for (int i = est.grid.m; i >= 1; --i) {
        tail += est.probs[i - 1];
        out[i - 1] = {est.grid.left_edge(i), tail};
    }
    return out;
}

double failure_prob(const DistributionEstimate& est, int m_star) {
    if (m_star < 1 || m_star > est.grid.m)
        throw DomainError("failure_prob: m_star out of range");
    double tail = 0.0;
    for (int i = est.grid.m; i >= m_star; --i) tail += est.probs[i - 1];
    return tail;
}

double extreme_quantile(const DistributionEstimate& est, double p) {
    const double target = 1.0 - p;
    const auto ccdf = ccdf_from_probs(est);
    // tiny relative slack so analytically equal values compare equal
    const double slack = 1e-12 * std::abs(target);
    for (const auto& [edge, value] : ccdf)
        if (value <= target + slack)
            return edge;
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "extreme_quantile: requested p leaves 1-p = %.3e below the smallest "
                  "resolvable CCDF value %.3e",
                  target, ccdf.back().second);
    throw ResolutionError(msg, ccdf.back().second);
}

void write_csv(const DistributionEstimate& est, std::ostream& os) {
    os << "bin_center,bin_left,prob,pdf,ccdf\n";
    const auto ccdf = ccdf_from_probs(est);
    for (int i = 1; i <= est.grid.m; ++i) {
        std::string line;
        append_field(line, est.grid.center(i));
        line += ',';
        append_field(line, est.grid.left_edge(i));
        line += ',';
        append_field(line, est.probs[i - 1]);
        line += ',';
        append_field(line, est.probs[i - 1] / est.grid.delta);
        line += ',';
        append_field(line, ccdf[i - 1].second);
        line += '\n';
        os << line;
    }
}

void write_csv_file(const DistributionEstimate& est, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw Error("write_csv_file: cannot open " + path);
    write_csv(est, os);
    if (!os)
        throw Error("write_csv_file: write failed for " + path);
}

DistributionEstimate read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("bin_center", 0) != 0)
        throw Error("read_csv: missing bin_center,... header");
    std::vector<double> centers, lefts, probs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double vals[5];
        char comma;
        for (int k = 0; k < 5; ++k) {
            if (!(ls >> vals[k]))
                throw Error("read_csv: malformed row: " + line);
            if (k < 4 && !(ls >> comma))
                throw Error("read_csv: malformed row: " + line);
        }
        centers.push_back(vals[0]);
        lefts.push_back(vals[1]);
        probs.push_back(vals[2]);
    }
    if (centers.size() < 2)
        throw Error("read_csv: need at least two bins");
    const int m = static_cast<int>(centers.size());
    const double delta = 2.0 * (centers[0] - lefts[0]);
    const double a = lefts[0];
    BinGrid grid(a, a + delta * m, m);
    return DistributionEstimate(grid, std::move(probs));
}

DistributionEstimate read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw Error("read_csv_file: cannot open " + path);
    return read_csv(is);
}

} // namespace smmc
