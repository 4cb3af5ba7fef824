#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vcsim/cluster.hpp"
#include "vcsim/noise.hpp"

namespace vcsim {

struct TrialResult {
    bool accepted = false;       // false only when a preparation hit the cap
    bool logical_error = false;  // defined only when accepted
    uint64_t consumed_qubits = 0;
    uint64_t consumed_gates = 0;
    uint64_t unit_attempts = 0;
    uint64_t unit_accepts = 0;
};

/// Point estimate with a 95% Wilson interval.
struct Estimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t n_trials = 0;
    uint64_t n_accepted = 0;
    uint64_t n_events = 0;
};

Estimate wilson_estimate(uint64_t events, uint64_t n);

/// One trial; the random stream is derived from (master_seed, trial_index)
/// only, so results are independent of scheduling.
TrialResult run_trial(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t master_seed,
                      uint64_t trial_index, int attempt_cap = 1000);

struct BatchStats {
    uint64_t trials = 0;
    uint64_t accepted = 0;
    uint64_t errors = 0;
    uint64_t consumed = 0;       // preps + gates + measurements
    uint64_t unit_attempts = 0;
    uint64_t unit_accepts = 0;

    BatchStats& operator+=(const TrialResult& r) {
        ++trials;
        if (r.accepted) {
            ++accepted;
            errors += r.logical_error ? 1 : 0;
        }
        consumed += r.consumed_qubits + r.consumed_gates;
        unit_attempts += r.unit_attempts;
        unit_accepts += r.unit_accepts;
        return *this;
    }
    BatchStats& operator+=(const BatchStats& o) {
        trials += o.trials;
        accepted += o.accepted;
        errors += o.errors;
        consumed += o.consumed;
        unit_attempts += o.unit_attempts;
        unit_accepts += o.unit_accepts;
        return *this;
    }
};

/// Serial reference runner, kept for testing the parallel one.
BatchStats run_batch_serial(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t seed,
                            uint64_t first_trial, uint64_t n_trials, int attempt_cap = 1000);

/// OpenMP runner; aggregation is a commutative fold over integer counts, so
/// the result is identical for every thread count.
BatchStats run_batch(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t seed,
                     uint64_t first_trial, uint64_t n_trials, int threads,
                     int attempt_cap = 1000);

struct PointEstimate {
    Estimate p_l;         // conditioned on accepted preparations
    double p_v_hat = 0.0; // preparation-unit acceptance fraction
    double f_hat = 0.0;   // consumed ops per accepted trial
    BatchStats stats;
};

/// p_L at one noise point; tops up n_trials (up to max_factor x) until the
/// CI half-width drops under 20% of the point estimate.
PointEstimate estimate_pL(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t n_trials,
                          uint64_t seed, int threads, int attempt_cap = 1000,
                          int topup_max_factor = 8);

struct PvfResult {
    Estimate p_v;
    double f = 0.0;
    double f_stderr = 0.0;
    uint64_t attempts = 0;
};

/// Verification acceptance and physical cost of one logical qubit with the
/// given number of C-Z branches (own-side Box 3 per branch; branch partner
/// blocks are supplied and not charged).
PvfResult estimate_pv_f(const NoiseParams& noise, int branch_count, uint64_t n_trials,
                        uint64_t seed, int threads = 0);

struct SweepPoint {
    double p_e = 0.0;
    PointEstimate est;
};

std::vector<SweepPoint> sweep(const ScenarioSpec& spec, const NoiseParams& base,
                              const std::vector<double>& pe_grid, uint64_t n_trials,
                              uint64_t seed, int threads, int attempt_cap = 1000,
                              int topup_max_factor = 8);

struct Threshold {
    double p_th = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
};

/// First crossing of p_L(p_e) = p_e, log-log interpolated; nullopt when the
/// sweep never crosses the diagonal.
std::optional<Threshold> find_threshold(const std::vector<SweepPoint>& points);

}  // namespace vcsim
