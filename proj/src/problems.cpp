#include "smmc/problems.hpp"

#include <cmath>

#include "smmc/errors.hpp"

namespace smmc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// --- adaptive Gauss-Kronrod (G7,K15) ----------------------------------------

constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {0.129484966168870, 0.279705391489277,
                               0.381830050505119, 0.417959183673469};

template <typename F>
void gk15(const F& f, double lo, double hi, double& value, double& error) {
    const double h = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    double k15 = kKronrodW[7] * f(mid);
    double g7 = kGaussW[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kKronrodX[i];
        const double pair = f(mid - dx) + f(mid + dx);
        k15 += kKronrodW[i] * pair;
        if (i % 2 == 1) g7 += kGaussW[i / 2] * pair;
    }
    value = k15 * h;
    error = std::abs((k15 - g7) * h);
}

template <typename F>
double integrate_adaptive(const F& f, double lo, double hi, double abs_tol,
                          int depth = 0) {
    double value = 0.0, error = 0.0;
    gk15(f, lo, hi, value, error);
    if (error <= abs_tol || depth >= 40)
        return value;
    const double mid = 0.5 * (lo + hi);
    return integrate_adaptive(f, lo, mid, 0.5 * abs_tol, depth + 1) +
           integrate_adaptive(f, mid, hi, 0.5 * abs_tol, depth + 1);
}

// angular average of the bivariate normal density on the circle of radius r
// around (cx, cy); periodic trapezoid, doubled until converged
double angular_mean_density(double cx, double cy, double r) {
    auto density = [&](double th) {
        const double px = cx + r * std::cos(th);
        const double py = cy + r * std::sin(th);
        return std::exp(-0.5 * (px * px + py * py)) / kTwoPi;
    };
    int n = 32;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) prev += density(kTwoPi * i / n);
    prev /= n;
    for (int round = 0; round < 12; ++round) {
        const int n2 = n * 2;
        double sum = 0.0;
        for (int i = 1; i < n2; i += 2) sum += density(kTwoPi * i / n2);
        const double next = 0.5 * prev + sum / n2;
        if (std::abs(next - prev) <= 1e-14 * std::abs(next) + 1e-300) {
            return next;
        }
        prev = next;
        n = n2;
    }
    return prev;
}

// --- regularized incomplete gamma -------------------------------------------

double gamma_q_series(double a, double x) {
    // P(a,x) by series, then Q = 1 - P
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
}

double gamma_q_contfrac(double a, double x) {
    // modified Lentz for the continued fraction of Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

// --- two-circle ---------------------------------------------------------------

double two_circle_perform(std::span<const double> x) {
    const double drx = x[0] - 8.0, dry = x[1] - 2.0;
    const double dlx = x[0] + 8.0, dly = x[1] - 2.0;
    const double dr = std::sqrt(drx * drx + dry * dry);
    const double dl = std::sqrt(dlx * dlx + dly * dly);
    return -std::min(dr, dl);
}

double disk_normal_prob(double cx, double cy, double radius, double abs_tol) {
    if (radius <= 0.0)
        return 0.0;
    auto radial = [&](double r) { return kTwoPi * r * angular_mean_density(cx, cy, r); };
    return integrate_adaptive(radial, 0.0, radius, abs_tol);
}

double two_circle_exact_pf() {
    // the two unit disks are disjoint, so the masses add
    return disk_normal_prob(8.0, 2.0, 1.0) + disk_normal_prob(-8.0, 2.0, 1.0);
}

// --- squared norm ---------------------------------------------------------------

double norm_squared_perform(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double chi2_tail(int d, double t) {
    if (d < 1)
        throw Error("chi2_tail: degrees of freedom must be >= 1");
    if (t < 0.0)
        throw Error("chi2_tail: threshold must be >= 0");
    if (t == 0.0)
        return 1.0;
    const double a = 0.5 * d;
    const double x = 0.5 * t;
    return x < a + 1.0 ? gamma_q_series(a, x) : gamma_q_contfrac(a, x);
}

// --- quarter car ---------------------------------------------------------------

namespace {

struct QCDeriv {
    double dx1, dv1, dx2, dv2;
};

QCDeriv qc_rhs(const QuarterCarState& s, double z, const QuarterCarParams& p) {
    const double spring = p.k_s * (s.x1 - s.x2) * (s.x1 - s.x2) * (s.x1 - s.x2);
    const double damper = p.c * (s.v1 - s.v2);
    return {s.v1, (-spring - damper) / p.m_s, s.v2,
            (spring + damper + p.k_u * (z - s.x2)) / p.m_u};
}

QuarterCarState qc_advance(const QuarterCarState& s, const QCDeriv& d, double h) {
    return {s.x1 + h * d.dx1, s.v1 + h * d.dv1, s.x2 + h * d.dx2, s.v2 + h * d.dv2};
}

} // namespace

QuarterCarState quarter_car_rk4_step(const QuarterCarState& s, double z, double dt,
                                     const QuarterCarParams& p) {
    const QCDeriv k1 = qc_rhs(s, z, p);
    const QCDeriv k2 = qc_rhs(qc_advance(s, k1, 0.5 * dt), z, p);
    const QCDeriv k3 = qc_rhs(qc_advance(s, k2, 0.5 * dt), z, p);
    const QCDeriv k4 = qc_rhs(qc_advance(s, k3, dt), z, p);
    QuarterCarState out;
    out.x1 = s.x1 + dt / 6.0 * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1);
    out.v1 = s.v1 + dt / 6.0 * (k1.dv1 + 2.0 * k2.dv1 + 2.0 * k3.dv1 + k4.dv1);
    out.x2 = s.x2 + dt / 6.0 * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2);
    out.v2 = s.v2 + dt / 6.0 * (k1.dv2 + 2.0 * k2.dv2 + 2.0 * k3.dv2 + k4.dv2);
    return out;
}

double quarter_car_perform(std::span<const double> z_path, const QuarterCarParams& p) {
    if (static_cast<int>(z_path.size()) != p.steps)
        throw DomainError("quarter_car_perform: road path length must equal step count");
    const double dt = p.horizon / p.steps;
    QuarterCarState s; // rest
    double peak = 0.0;
    for (int j = 0; j < p.steps; ++j) {
        s = quarter_car_rk4_step(s, p.sigma * z_path[j], dt, p);
        if (!std::isfinite(s.x1) || !std::isfinite(s.x2))
            throw Error("quarter_car_perform: integration diverged");
        peak = std::max(peak, std::abs(s.x1 - s.x2));
    }
    return peak;
}

// --- registry --------------------------------------------------------------------

ProblemDefinition two_circle_problem() {
    return make_iid_problem(2, standard_normal_marginal(), two_circle_perform, -1.0);
}

ProblemDefinition norm_problem(int dim, double y_star) {
    return make_iid_problem(dim, standard_normal_marginal(), norm_squared_perform,
                            y_star);
}

ProblemDefinition quarter_car_problem() {
    const QuarterCarParams params;
    auto perform = [params](std::span<const double> z) {
        return quarter_car_perform(z, params);
    };
    return make_iid_problem(params.steps, standard_normal_marginal(), perform, 0.0198);
}

BenchmarkSpec benchmark_by_name(const std::string& name) {
    if (name == "two-circle")
        return {name, two_circle_problem(), BinGrid(-12.0, 0.0, 120),
                two_circle_exact_pf()};
    if (name == "norm10")
        return {name, norm_problem(10, 75.0), BinGrid(0.0, 100.0, 100),
                chi2_tail(10, 75.0)};
    if (name == "quarter-car")
        return {name, quarter_car_problem(), BinGrid(0.0, 0.03, 150), std::nullopt};
    throw ConfigError("unknown problem '" + name +
                      "'; available: two-circle, norm10, quarter-car");
}

std::vector<std::string> benchmark_names() {
    return {"two-circle", "norm10", "quarter-car"};
}

} // namespace smmc
