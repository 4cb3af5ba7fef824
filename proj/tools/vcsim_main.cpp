#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vcsim/faultsweep.hpp"
#include "vcsim/io.hpp"
#include "vcsim/montecarlo.hpp"
#include "vcsim/resource.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoThreshold = 3;

struct SweepArgs {
    std::string config_file;
    std::string scenario;
    std::string grid;
    long long trials = -1;
    long long seed = -1;
    std::string metric;
    std::string noise_interpretation;
    int threads = -1;
    int attempt_cap = -1;
    std::string out_dir;
};

vcsim::ExperimentConfig resolve_config(const SweepArgs& a) {
    vcsim::ExperimentConfig cfg;
    if (!a.config_file.empty()) cfg = vcsim::ExperimentConfig::from_json_file(a.config_file);
    if (!a.scenario.empty()) cfg.scenario = a.scenario;
    if (!a.grid.empty()) cfg.pe_grid = vcsim::parse_grid(a.grid);
    if (a.trials >= 0) cfg.trials = static_cast<uint64_t>(a.trials);
    if (a.seed >= 0) cfg.seed = static_cast<uint64_t>(a.seed);
    if (!a.metric.empty()) cfg.metric = a.metric;
    if (!a.noise_interpretation.empty()) cfg.noise_interpretation = a.noise_interpretation;
    if (a.threads >= 0) cfg.threads = a.threads;
    if (a.attempt_cap >= 0) cfg.attempt_cap = a.attempt_cap;
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    cfg.validate();
    return cfg;
}

void add_sweep_options(CLI::App* cmd, SweepArgs& a, bool needs_grid) {
    cmd->add_option("--config", a.config_file, "JSON config file; flags override it");
    cmd->add_option("--scenario", a.scenario, "scenario: i, ii or iii");
    cmd->add_option(needs_grid ? "--pe" : "--pe-grid", a.grid, "p_e grid lo:hi:N[log|lin]");
    cmd->add_option("--trials", a.trials, "trials per grid point");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--metric", a.metric, "raw-weight | decoder-failure");
    cmd->add_option("--noise-1q", a.noise_interpretation, "total-4pe5 | per-pauli-4pe5");
    cmd->add_option("--threads", a.threads, "worker threads (0 = auto)");
    cmd->add_option("--attempt-cap", a.attempt_cap, "preparation attempt cap");
    cmd->add_option("--out", a.out_dir, "output directory");
}

int run_sweep_like(const SweepArgs& args, bool extract_threshold) {
    vcsim::ExperimentConfig cfg;
    try {
        cfg = resolve_config(args);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    auto spec = cfg.scenario_spec();
    auto noise = cfg.noise_base();
    auto points = vcsim::sweep(spec, noise, cfg.pe_grid, cfg.trials, cfg.seed, cfg.threads,
                               cfg.attempt_cap, cfg.topup_max_factor);
    auto threshold = vcsim::find_threshold(points);

    std::string csv = vcsim::csv_header();
    for (const auto& pt : points) csv += vcsim::csv_row(pt);
    std::cout << csv;
    if (threshold)
        std::cout << "# threshold p_th=" << threshold->p_th << " bracket ["
                  << threshold->bracket_low << ", " << threshold->bracket_high << "]\n";

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        vcsim::write_text_file(cfg.out_dir + "/sweep.csv", csv);
        vcsim::write_text_file(cfg.out_dir + "/summary.json",
                               vcsim::summary_json(cfg, points, threshold));
    }
    if (extract_threshold && !threshold) {
        std::cerr << "no p_L = p_e crossing inside the grid\n";
        return kExitNoThreshold;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator for post-selected cluster-state computation on the "
                 "Steane code"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "estimate p_L over a p_e grid");
    add_sweep_options(cmd_sweep, sweep_args, true);

    SweepArgs point_args;
    double point_pe = 0.01;
    CLI::App* cmd_point = app.add_subcommand("point", "estimate p_L at a single p_e");
    add_sweep_options(cmd_point, point_args, false);
    cmd_point->add_option("--pe", point_pe, "physical error probability")->required();

    SweepArgs thr_args;
    CLI::App* cmd_thr = app.add_subcommand("threshold", "sweep and extract the p_L = p_e crossing");
    add_sweep_options(cmd_thr, thr_args, true);

    // pvf
    double pvf_pe = 0.01;
    int pvf_branches = 4;
    long long pvf_trials = 100000, pvf_seed = 1;
    int pvf_threads = 0;
    std::string pvf_noise = "total-4pe5";
    CLI::App* cmd_pvf = app.add_subcommand("pvf", "verification acceptance p_v and cost f per qubit");
    cmd_pvf->add_option("--pe", pvf_pe, "physical error probability")->required();
    cmd_pvf->add_option("--branches", pvf_branches, "C-Z branch count (default 4)");
    cmd_pvf->add_option("--trials", pvf_trials, "attempts");
    cmd_pvf->add_option("--seed", pvf_seed, "seed");
    cmd_pvf->add_option("--threads", pvf_threads, "worker threads (0 = auto)");
    cmd_pvf->add_option("--noise-1q", pvf_noise, "total-4pe5 | per-pauli-4pe5");

    // resource
    int rK = 100, rQ = 1000, rk = 6, rq = 4;
    double rf = 500.0, rpv = 0.7, rN = 10.0;
    bool r_optimize = false;
    CLI::App* cmd_res = app.add_subcommand("resource", "physical resource estimate N (f/p_v^{kq}) K Q");
    cmd_res->add_option("--K", rK)->required();
    cmd_res->add_option("--Q", rQ)->required();
    cmd_res->add_option("--k", rk);
    cmd_res->add_option("--q", rq);
    cmd_res->add_option("--f", rf)->required();
    cmd_res->add_option("--pv", rpv)->required();
    cmd_res->add_option("--N", rN);
    cmd_res->add_flag("--optimize", r_optimize, "search divisor pairs (k,q) for the minimum");

    CLI::App* cmd_selftest =
        app.add_subcommand("selftest", "exhaustive single-fault soundness suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_sweep->parsed()) return run_sweep_like(sweep_args, false);
        if (cmd_thr->parsed()) return run_sweep_like(thr_args, true);
        if (cmd_point->parsed()) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.10g", point_pe);
            point_args.grid = std::string(buf) + ":" + buf + ":1log";
            // single-point grid: parse_grid needs hi > lo, so special-case
            vcsim::ExperimentConfig cfg;
            try {
                SweepArgs a = point_args;
                a.grid.clear();
                cfg = resolve_config(a);
                cfg.pe_grid = {point_pe};
                cfg.validate();
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitConfig;
            }
            auto points = vcsim::sweep(cfg.scenario_spec(), cfg.noise_base(), cfg.pe_grid,
                                       cfg.trials, cfg.seed, cfg.threads, cfg.attempt_cap,
                                       cfg.topup_max_factor);
            std::cout << vcsim::csv_header() << vcsim::csv_row(points[0]);
            if (!cfg.out_dir.empty()) {
                std::filesystem::create_directories(cfg.out_dir);
                vcsim::write_text_file(cfg.out_dir + "/point.csv",
                                       vcsim::csv_header() + vcsim::csv_row(points[0]));
                vcsim::write_text_file(cfg.out_dir + "/summary.json",
                                       vcsim::summary_json(cfg, points, std::nullopt));
            }
            return 0;
        }
        if (cmd_pvf->parsed()) {
            if (pvf_trials < 1 || pvf_pe <= 0.0 || pvf_pe >= 1.0) {
                std::cerr << "config error: pvf needs trials >= 1 and p_e in (0,1)\n";
                return kExitConfig;
            }
            vcsim::NoiseParams noise;
            noise.p_e = pvf_pe;
            if (pvf_noise == "per-pauli-4pe5")
                noise.one_qubit_rate = vcsim::OneQubitRate::kPerPauli4Pe5;
            else if (pvf_noise != "total-4pe5") {
                std::cerr << "config error: bad --noise-1q\n";
                return kExitConfig;
            }
            noise.validate();
            auto r = vcsim::estimate_pv_f(noise, pvf_branches, pvf_trials, pvf_seed, pvf_threads);
            std::printf("p_e=%.6g branches=%d attempts=%llu\n", pvf_pe, pvf_branches,
                        static_cast<unsigned long long>(r.attempts));
            std::printf("p_v=%.6g ci=[%.6g, %.6g]\n", r.p_v.point, r.p_v.ci_low, r.p_v.ci_high);
            std::printf("f=%.6g stderr=%.3g (preps+gates+measurements per accepted qubit)\n", r.f,
                        r.f_stderr);
            return 0;
        }
        if (cmd_res->parsed()) {
            if (r_optimize) {
                auto best = vcsim::optimize_subcluster(rK, rQ, rf, rpv, rN);
                std::printf("k=%d q=%d resource=%.6g\n", best.k, best.q, best.resource_value);
                return 0;
            }
            vcsim::ResourceQuery rq{rK, rQ, rk, rq, rf, rpv, rN};
            double r = vcsim::resource(rq);
            auto t = vcsim::trials_needed(rk, rq, rpv, rN);
            std::printf("resource=%.6g\n", r);
            std::printf("trials_per_subcluster=%llu success_bound=%.6g\n",
                        static_cast<unsigned long long>(t.trials), t.success_bound);
            return 0;
        }
        if (cmd_selftest->parsed()) {
            auto result = vcsim::run_selftest();
            for (const auto& [name, rep] : result.reports) {
                std::printf("%-22s sites=%llu injections=%llu runs=%llu %s\n", name.c_str(),
                            static_cast<unsigned long long>(rep.sites),
                            static_cast<unsigned long long>(rep.injections),
                            static_cast<unsigned long long>(rep.runs),
                            rep.ok() ? "OK" : "COUNTEREXAMPLES");
                for (const auto& ce : rep.counterexamples)
                    std::printf("   unit %ld site %d fault %s: %s\n", ce.unit_seq, ce.site_id,
                                ce.fault.c_str(), ce.detail.c_str());
            }
            return result.ok() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
