#include "smmc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "smmc/errors.hpp"
#include "smmc/mmc.hpp"
#include "smmc/monte_carlo.hpp"

namespace smmc {

namespace {

bool known_method(const std::string& m) {
    return m == "mc" || m == "ss" || m == "mmc" || m == "smmc";
}

struct ResolvedRun {
    ProblemDefinition problem;
    BinGrid grid;
    std::optional<double> ref_pf;
    int m_star = 1;
};

ResolvedRun resolve(const RunConfig& rc) {
    BenchmarkSpec spec = benchmark_by_name(rc.problem);
    ResolvedRun r{std::move(spec.problem), rc.grid.value_or(spec.grid), spec.ref_pf, 1};
    if (rc.y_star)
        r.problem.threshold = *rc.y_star;
    if (rc.ref_pf) {
        r.ref_pf = *rc.ref_pf;
    } else if (rc.y_star) {
        // the oracle follows a moved threshold where it stays analytic
        if (rc.problem == "norm10")
            r.ref_pf = chi2_tail(10, *rc.y_star);
        else if (rc.problem == "two-circle" && *rc.y_star < 0.0)
            r.ref_pf = 2.0 * disk_normal_prob(8.0, 2.0, -*rc.y_star);
        else
            r.ref_pf = std::nullopt;
    }
    if (rc.method == "mmc" || rc.method == "smmc")
        r.m_star = align_threshold(r.grid, r.problem.threshold);
    return r;
}

// one repetition; returns the failure-probability estimate
double run_once(const RunConfig& rc, const ResolvedRun& r, RngStream& rng,
                EvalCounter& counter) {
    if (rc.method == "mc") {
        return run_mc(r.problem, rc.mc_n, rng, counter, nullptr, rc.parallel).p_f;
    }
    if (rc.method == "ss") {
        SSConfig cfg;
        cfg.gamma = rc.ss_gamma;
        cfg.n_per_level = rc.ss_n_per_level;
        cfg.max_levels = rc.ss_max_levels;
        cfg.proposal.half_width = rc.w_prop;
        cfg.parallel = rc.parallel;
        return run_ss(r.problem, cfg, rng, counter).p_f;
    }
    if (rc.method == "mmc") {
        MMCOptions opt;
        opt.proposal.half_width = rc.w_prop;
        opt.parallel = rc.parallel;
        opt.burn_in = rc.burn_in;
        opt.steps_per_chain = rc.steps_per_chain;
        auto res = mmc_iterate(r.problem, r.grid, ThetaTable::uniform(1, r.grid.m),
                               rc.mmc_n_per_iter, rc.mmc_k_iters, opt, rng, counter);
        // sufficiently large interval: rho taken as 1
        DistributionEstimate est(r.grid, bin_probs_from_theta(res.theta, 1.0));
        return failure_prob(est, r.m_star);
    }
    if (rc.method == "smmc") {
        SMMCConfig cfg;
        cfg.alpha = rc.smmc_alpha;
        cfg.k_iters = rc.smmc_k_iters;
        cfg.n_per_iter = rc.smmc_n_per_iter;
        cfg.max_subsets = rc.smmc_max_subsets;
        cfg.proposal.half_width = rc.w_prop;
        cfg.parallel = rc.parallel;
        return run_smmc(r.problem, r.grid, r.m_star, cfg, rng, counter).p_f;
    }
    throw ConfigError("unknown method '" + rc.method + "'");
}

} // namespace

RunConfig run_config_from(const Config& cfg) {
    RunConfig rc;
    rc.problem = cfg.get_string("problem");
    rc.method = cfg.get_string("method");
    if (!known_method(rc.method))
        throw ConfigError("unknown method '" + rc.method +
                          "'; available: mc, ss, mmc, smmc");
    rc.seed = cfg.get_u64("seed"); // reproducibility is mandatory, no default
    rc.reps = static_cast<int>(cfg.get_int("reps", 20));
    if (rc.reps < 1)
        throw ConfigError("reps must be >= 1");
    rc.out_dir = cfg.get_string("out_dir", "");
    rc.parallel = cfg.get_bool("parallel", true);

    if (cfg.has("y_star")) rc.y_star = cfg.get_double("y_star");
    if (cfg.has("ref_pf")) rc.ref_pf = cfg.get_double("ref_pf");
    if (cfg.has("mmc.grid.a") || cfg.has("mmc.grid.b") || cfg.has("mmc.grid.m")) {
        const BinGrid fallback = benchmark_by_name(rc.problem).grid;
        rc.grid = BinGrid(cfg.get_double("mmc.grid.a", fallback.a),
                          cfg.get_double("mmc.grid.b", fallback.b),
                          static_cast<int>(cfg.get_int("mmc.grid.m", fallback.m)));
    }

    rc.ss_gamma = cfg.get_double("ss.gamma", rc.ss_gamma);
    rc.ss_n_per_level = static_cast<int>(cfg.get_int("ss.n_per_level", rc.ss_n_per_level));
    rc.ss_max_levels = static_cast<int>(cfg.get_int("ss.max_levels", rc.ss_max_levels));
    rc.ss_levels_hint = static_cast<int>(cfg.get_int("ss.levels_hint", rc.ss_levels_hint));

    rc.mmc_k_iters = static_cast<int>(cfg.get_int("mmc.k_iters", rc.mmc_k_iters));
    rc.mmc_n_per_iter = cfg.get_int("mmc.n_per_iter", rc.mmc_n_per_iter);

    rc.smmc_alpha = cfg.get_double("smmc.alpha", rc.smmc_alpha);
    rc.smmc_k_iters = static_cast<int>(cfg.get_int("smmc.k_iters", rc.smmc_k_iters));
    rc.smmc_n_per_iter = cfg.get_int("smmc.n_per_iter", rc.smmc_n_per_iter);
    rc.smmc_max_subsets =
        static_cast<int>(cfg.get_int("smmc.max_subsets", rc.smmc_max_subsets));
    rc.smmc_subsets_hint =
        static_cast<int>(cfg.get_int("smmc.subsets_hint", rc.smmc_subsets_hint));

    rc.mc_n = cfg.get_int("mc.n", rc.mc_n);
    rc.w_prop = cfg.get_double("kernel.w_prop", rc.w_prop);
    rc.burn_in = static_cast<int>(cfg.get_int("kernel.burn_in", rc.burn_in));
    rc.steps_per_chain =
        static_cast<int>(cfg.get_int("kernel.steps_per_chain", rc.steps_per_chain));
    return rc;
}

void apply_budget(RunConfig& rc, long long budget) {
    if (budget < 1)
        throw ConfigError("budget must be positive");
    if (rc.method == "mc") {
        rc.mc_n = budget;
    } else if (rc.method == "ss") {
        rc.ss_n_per_level = static_cast<int>(
            std::max<long long>(1, budget / std::max(1, rc.ss_levels_hint)));
    } else if (rc.method == "mmc") {
        rc.mmc_n_per_iter = std::max<long long>(1, budget / std::max(1, rc.mmc_k_iters));
    } else if (rc.method == "smmc") {
        rc.smmc_n_per_iter = std::max<long long>(
            1, budget / (static_cast<long long>(std::max(1, rc.smmc_k_iters)) *
                         std::max(1, rc.smmc_subsets_hint)));
    }
}

ExperimentReport run_experiment(const RunConfig& rc) {
    if (!known_method(rc.method))
        throw ConfigError("unknown method '" + rc.method + "'");
    const auto resolved = resolve(rc);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> estimates(rc.reps, 0.0);
    std::vector<long long> evals(rc.reps, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (rc.parallel && rc.reps > 1)
#endif
    for (int l = 0; l < rc.reps; ++l) {
        RngStream rep_rng = RngStream::substream(rc.seed, static_cast<std::uint64_t>(l));
        EvalCounter rep_counter;
        RunConfig rep_rc = rc;
        rep_rc.parallel = rc.parallel && rc.reps == 1; // avoid nested teams
        estimates[l] = run_once(rep_rc, resolved, rep_rng, rep_counter);
        evals[l] = rep_counter.count();
    }

    ExperimentReport report;
    report.method = rc.method;
    report.problem = rc.problem;
    report.L = rc.reps;
    report.estimates = std::move(estimates);
    report.evals = std::move(evals);
    double total = 0.0;
    for (long long e : report.evals) total += static_cast<double>(e);
    report.mean_evals = total / rc.reps;
    report.ref_pf = resolved.ref_pf;
    if (report.ref_pf)
        report.rmse = relative_rmse(report.estimates, *report.ref_pf);
    else
        std::fprintf(stderr,
                     "[smmc] warning: no reference P_F for problem '%s'; RMSE omitted\n",
                     rc.problem.c_str());
    report.seed = rc.seed;
    report.wallclock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!rc.out_dir.empty()) {
        std::filesystem::create_directories(rc.out_dir);
        write_report_json(report, rc.out_dir + "/report.json");
        write_runs_csv(report, rc.out_dir + "/runs.csv");
    }
    return report;
}

double relative_rmse(const std::vector<double>& estimates, double ref) {
    if (estimates.empty())
        throw Error("relative_rmse: no estimates");
    if (ref == 0.0)
        throw Error("relative_rmse: reference probability is zero");
    double sum = 0.0;
    for (double e : estimates) {
        const double d = e - ref;
        sum += d * d;
    }
    return sum / (static_cast<double>(estimates.size()) * ref * ref);
}

std::string report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["method"] = report.method;
    j["problem"] = report.problem;
    j["L"] = report.L;
    j["mean_evals"] = report.mean_evals;
    j["estimates"] = report.estimates;
    j["rmse"] = report.rmse ? nlohmann::json(*report.rmse) : nlohmann::json();
    j["ref_pf"] = report.ref_pf ? nlohmann::json(*report.ref_pf) : nlohmann::json();
    j["seed"] = report.seed;
    j["wallclock_s"] = report.wallclock_s;
    return j.dump(2) + "\n";
}

void write_report_json(const ExperimentReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw Error("write_report_json: cannot open " + path);
    os << report_to_json(report);
    if (!os)
        throw Error("write_report_json: write failed for " + path);
}

void write_runs_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw Error("write_runs_csv: cannot open " + path);
    os << "rep,estimate,evals\n";
    for (int l = 0; l < report.L; ++l) {
        char line[96];
        std::snprintf(line, sizeof(line), "%d,%.16e,%lld\n", l, report.estimates[l],
                      report.evals[l]);
        os << line;
    }
    if (!os)
        throw Error("write_runs_csv: write failed for " + path);
}

DistributionEstimate estimate_distribution(const RunConfig& rc,
                                           std::vector<SubsetState>* trace_out) {
    const auto resolved = resolve(rc);
    RngStream rng = RngStream::substream(rc.seed, 0);
    EvalCounter counter;
    if (rc.method == "mc") {
        auto res = run_mc(resolved.problem, rc.mc_n, rng, counter, &resolved.grid,
                          rc.parallel);
        return *res.estimate;
    }
    if (rc.method == "mmc") {
        MMCOptions opt;
        opt.proposal.half_width = rc.w_prop;
        opt.parallel = rc.parallel;
        opt.burn_in = rc.burn_in;
        opt.steps_per_chain = rc.steps_per_chain;
        auto res =
            mmc_iterate(resolved.problem, resolved.grid, ThetaTable::uniform(1, resolved.grid.m),
                        rc.mmc_n_per_iter, rc.mmc_k_iters, opt, rng, counter);
        return DistributionEstimate(resolved.grid, bin_probs_from_theta(res.theta, 1.0));
    }
    if (rc.method == "smmc") {
        SMMCConfig cfg;
        cfg.alpha = rc.smmc_alpha;
        cfg.k_iters = rc.smmc_k_iters;
        cfg.n_per_iter = rc.smmc_n_per_iter;
        cfg.max_subsets = rc.smmc_max_subsets;
        cfg.proposal.half_width = rc.w_prop;
        cfg.parallel = rc.parallel;
        // full-range reconstruction: run the subsets down to the last bin
        auto res = run_smmc(resolved.problem, resolved.grid, resolved.grid.m, cfg, rng,
                            counter);
        if (trace_out) *trace_out = std::move(res.trace);
        return res.estimate;
    }
    throw ConfigError("estimate_distribution supports methods mc, mmc and smmc");
}

std::string trace_to_json(const std::vector<SubsetState>& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : trace) {
        nlohmann::json row;
        row["j"] = s.j;
        row["m_j"] = s.m_j;
        row["rho_j"] = s.rho_j;
        row["theta"] = s.theta;
        row["bin_probs"] = s.probs;
        row["evals"] = s.evals;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

} // namespace smmc
