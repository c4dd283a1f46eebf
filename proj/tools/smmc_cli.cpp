// command-line driver: run / sweep / ccdf / oracle

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smmc/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string method;
    std::string problem;
    std::string seed;
    std::string out_dir;
    long long reps = -1;
    double ref_pf = std::numeric_limits<double>::quiet_NaN();
    bool sequential = false;
};

smmc::RunConfig load_run_config(const CommonArgs& args) {
    smmc::Config cfg = args.config_path.empty()
                           ? smmc::Config()
                           : smmc::Config::from_file(args.config_path);
    if (!args.method.empty()) cfg.set("method", args.method);
    if (!args.problem.empty()) cfg.set("problem", args.problem);
    if (!args.seed.empty()) cfg.set("seed", args.seed);
    if (!args.out_dir.empty()) cfg.set("out_dir", args.out_dir);
    if (args.reps >= 0) cfg.set("reps", std::to_string(args.reps));
    if (args.ref_pf == args.ref_pf) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.16e", args.ref_pf);
        cfg.set("ref_pf", buf);
    }
    if (args.sequential) cfg.set("parallel", "false");
    return smmc::run_config_from(cfg);
}

void print_summary(const smmc::ExperimentReport& r) {
    double mean = 0.0;
    for (double e : r.estimates) mean += e;
    mean /= r.L;
    std::printf("method=%s problem=%s L=%d mean_evals=%.4g mean_estimate=%.6e",
                r.method.c_str(), r.problem.c_str(), r.L, r.mean_evals, mean);
    if (r.ref_pf) std::printf(" ref_pf=%.6e", *r.ref_pf);
    if (r.rmse) std::printf(" rel_rmse=%.4g", *r.rmse);
    std::printf(" wallclock_s=%.2f\n", r.wallclock_s);
}

std::vector<long long> parse_budgets(const std::string& list) {
    std::vector<long long> budgets;
    std::string item;
    std::istringstream is(list);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0' || v < 1)
            throw smmc::ConfigError("bad budget entry '" + item + "'");
        budgets.push_back(static_cast<long long>(v));
    }
    if (budgets.empty())
        throw smmc::ConfigError("--budgets is empty");
    return budgets;
}

int cmd_run(const CommonArgs& args) {
    auto rc = load_run_config(args);
    const auto report = smmc::run_experiment(rc);
    print_summary(report);
    if (!rc.out_dir.empty())
        std::printf("report written to %s/report.json\n", rc.out_dir.c_str());
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& budgets_arg,
              const std::string& methods_arg) {
    smmc::Config cfg = args.config_path.empty()
                           ? smmc::Config()
                           : smmc::Config::from_file(args.config_path);
    if (!args.problem.empty()) cfg.set("problem", args.problem);
    if (!args.seed.empty()) cfg.set("seed", args.seed);
    if (args.reps >= 0) cfg.set("reps", std::to_string(args.reps));
    if (args.sequential) cfg.set("parallel", "false");

    std::string methods_list = methods_arg;
    if (methods_list.empty())
        methods_list = cfg.has("sweep.methods") ? cfg.get_string("sweep.methods")
                                                : "ss,mmc,smmc";
    std::vector<std::string> methods;
    {
        std::istringstream is(methods_list);
        std::string m;
        while (std::getline(is, m, ','))
            if (!m.empty()) methods.push_back(m);
    }
    const auto budgets = parse_budgets(budgets_arg);

    nlohmann::json cells = nlohmann::json::array();
    std::printf("%-10s %-6s %-12s %-14s %-12s\n", "budget", "method", "mean_evals",
                "mean_estimate", "rel_rmse");
    for (long long budget : budgets) {
        for (const auto& method : methods) {
            cfg.set("method", method);
            auto rc = smmc::run_config_from(cfg);
            rc.out_dir.clear();
            smmc::apply_budget(rc, budget);
            const auto report = smmc::run_experiment(rc);
            double mean = 0.0;
            for (double e : report.estimates) mean += e;
            mean /= report.L;
            std::printf("%-10lld %-6s %-12.4g %-14.6e %-12s\n", budget, method.c_str(),
                        report.mean_evals, mean,
                        report.rmse ? std::to_string(*report.rmse).c_str() : "n/a");
            nlohmann::json cell = nlohmann::json::parse(smmc::report_to_json(report));
            cell["budget"] = budget;
            cells.push_back(cell);
        }
    }
    const std::string out_dir =
        !args.out_dir.empty() ? args.out_dir : cfg.get_string("out_dir", "");
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream os(out_dir + "/sweep_report.json");
        os << cells.dump(2) << "\n";
        std::printf("sweep report written to %s/sweep_report.json\n", out_dir.c_str());
    }
    return 0;
}

int cmd_ccdf(const CommonArgs& args, const std::string& out_csv) {
    auto rc = load_run_config(args);
    if (rc.method == "ss")
        throw smmc::ConfigError(
            "ccdf: subset simulation estimates a single probability, not a "
            "distribution; use method mc, mmc or smmc");
    const auto est = smmc::estimate_distribution(rc);
    smmc::write_csv_file(est, out_csv);
    std::printf("ccdf written to %s (%d bins, rho=%.6g)\n", out_csv.c_str(), est.grid.m,
                est.rho);
    return 0;
}

int cmd_oracle(const std::string& problem) {
    const auto spec = smmc::benchmark_by_name(problem);
    if (!spec.ref_pf) {
        std::fprintf(stderr, "no analytic oracle for problem '%s'\n", problem.c_str());
        return 2;
    }
    std::printf("%.6e\n", *spec.ref_pf);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rare-event failure probability estimation (MC / SS / MMC / SMMC)"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string budgets_arg, methods_arg, out_csv, oracle_problem;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("--config", args.config_path, "config file");
        if (need_config) opt->required();
        sub->add_option("--method", args.method, "override method (mc|ss|mmc|smmc)");
        sub->add_option("--problem", args.problem, "override problem");
        sub->add_option("--seed", args.seed, "override master seed");
        sub->add_option("--reps,-L", args.reps, "override repetition count");
        sub->add_option("--ref-pf", args.ref_pf, "reference failure probability");
        sub->add_option("--out-dir", args.out_dir, "output directory");
        sub->add_flag("--sequential", args.sequential, "disable parallel execution");
    };

    auto* run = app.add_subcommand("run", "run one experiment (L repetitions)");
    add_common(run, true);

    auto* sweep = app.add_subcommand("sweep", "budget sweep over methods");
    add_common(sweep, true);
    sweep->add_option("--budgets", budgets_arg, "comma list, e.g. 2e4,1e5,3e5")
        ->required();
    sweep->add_option("--methods", methods_arg, "comma list of methods");

    auto* ccdf = app.add_subcommand("ccdf", "reconstruct and export the CCDF");
    add_common(ccdf, true);
    ccdf->add_option("--out", out_csv, "output CSV path")->required();

    auto* oracle = app.add_subcommand("oracle", "print the analytic failure probability");
    oracle->add_option("--problem", oracle_problem, "problem name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(args);
        if (sweep->parsed()) return cmd_sweep(args, budgets_arg, methods_arg);
        if (ccdf->parsed()) return cmd_ccdf(args, out_csv);
        if (oracle->parsed()) return cmd_oracle(oracle_problem);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
