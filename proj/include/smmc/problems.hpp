#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smmc/grid.hpp"
#include "smmc/problem.hpp"

namespace smmc {

// --- two-dimensional two-circle problem -------------------------------------
// failure set: min distance to either disk center below one; performance is
// the negated minimum distance so that failure reads f(x) > y* with y* = -1

double two_circle_perform(std::span<const double> x);

// standard bivariate normal mass of a disk, polar-coordinate quadrature
double disk_normal_prob(double cx, double cy, double radius, double abs_tol = 1e-17);

double two_circle_exact_pf();

// --- d-dimensional squared-norm problem -------------------------------------

double norm_squared_perform(std::span<const double> x);

// P(chi^2_d > t) via the regularized upper incomplete gamma function
double chi2_tail(int d, double t);

// --- quarter-car suspension model -------------------------------------------

struct QuarterCarParams {
    double m_s = 20.0;   // sprung mass
    double m_u = 40.0;   // unsprung mass
    double k_s = 400.0;  // cubic spring stiffness
    double k_u = 2000.0; // tire stiffness
    double c = 600.0;    // damper coefficient
    double sigma = 0.05; // road-noise standard deviation
    double horizon = 1.0;
    int steps = 100;
};

struct QuarterCarState {
    double x1 = 0.0, v1 = 0.0, x2 = 0.0, v2 = 0.0;
};

// one classical Runge-Kutta step with wheel displacement held at z
QuarterCarState quarter_car_rk4_step(const QuarterCarState& s, double z, double dt,
                                     const QuarterCarParams& p);

// max |x1 - x2| over the integration grid from rest, z piecewise constant
// per step with z_j = sigma * z_path[j]
double quarter_car_perform(std::span<const double> z_path,
                           const QuarterCarParams& p = {});

// --- registered problems ----------------------------------------------------

ProblemDefinition two_circle_problem();                 // y* = -1
ProblemDefinition norm_problem(int dim, double y_star); // norm10: dim=10, y*=75
ProblemDefinition quarter_car_problem();                // 100-dim white-noise input

struct BenchmarkSpec {
    std::string name;
    ProblemDefinition problem;
    BinGrid grid;
    std::optional<double> ref_pf; // analytic/oracle failure probability
};

// names: two-circle, norm10, quarter-car; throws ConfigError otherwise
BenchmarkSpec benchmark_by_name(const std::string& name);
std::vector<std::string> benchmark_names();

} // namespace smmc
