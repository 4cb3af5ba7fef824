#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vcsim/cluster.hpp"

namespace vcsim {

/// Exhaustive single-fault soundness machinery: run a pipeline once to list
/// every fault site, then re-run it for every (site, fault, stochastic
/// branch) combination and demand rejection or <= 1 residual error.

struct SweepCounterexample {
    long unit_seq = 0;
    int site_id = 0;
    std::string fault;
    std::string detail;
};

struct SweepReport {
    uint64_t sites = 0;
    uint64_t injections = 0;
    uint64_t runs = 0;
    std::vector<SweepCounterexample> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};

struct PipelineRun {
    bool rejected = false;
    int residual_weight = 0;
    std::string detail;
};

using PipelineFn = std::function<PipelineRun(ExecContext&)>;

/// Drives the enumeration; max_residual is the allowed effective weight on
/// accepted runs.
SweepReport sweep_single_faults(const PipelineFn& pipeline, int max_residual = 1);

// Box and preparation pipelines (residuals measured against the block's
// ideal stabilizer group).
SweepReport sweep_l1_plus();
SweepReport sweep_l2_plus();
SweepReport sweep_l2_zero();
SweepReport sweep_box3x_on_zero();
SweepReport sweep_box3z_on_zero();
SweepReport sweep_box4x_on_plus();
SweepReport sweep_box4z_on_plus();
SweepReport sweep_pi8();

/// Full scenario pipelines (flip-word soundness with partner compensation).
SweepReport sweep_scenario(ScenarioCase scase);

/// Everything above; used by the selftest subcommand and the acceptance
/// suite.
struct SelftestResult {
    std::vector<std::pair<std::string, SweepReport>> reports;
    bool ok() const {
        for (const auto& [name, r] : reports)
            if (!r.ok()) return false;
        return true;
    }
};
SelftestResult run_selftest();

}  // namespace vcsim
