#include "vcsim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcsim {

Estimate wilson_estimate(uint64_t events, uint64_t n) {
    Estimate e;
    e.n_trials = n;
    e.n_events = events;
    if (n == 0) return e;
    const double z = 1.959963984540054;  // 95%
    double phat = static_cast<double>(events) / static_cast<double>(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    e.point = phat;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    return e;
}

TrialResult run_trial(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t master_seed,
                      uint64_t trial_index, int attempt_cap) {
    MonteCarloSource rs(mix_seed(master_seed, trial_index));
    ExecContext ctx(noise, rs);
    ctx.attempt_cap = attempt_cap;
    ScenarioOutcome out = run_scenario(spec, ctx);
    TrialResult r;
    r.accepted = !out.prep_exhausted;
    r.logical_error = r.accepted && out.logical_error;
    r.consumed_qubits = ctx.consumed.preps;
    r.consumed_gates = ctx.consumed.gates + ctx.consumed.meas;
    r.unit_attempts = ctx.unit_attempts;
    r.unit_accepts = ctx.unit_accepts;
    return r;
}

BatchStats run_batch_serial(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t seed,
                            uint64_t first_trial, uint64_t n_trials, int attempt_cap) {
    BatchStats stats;
    for (uint64_t i = 0; i < n_trials; ++i) {
        stats += run_trial(spec, noise, seed, first_trial + i, attempt_cap);
    }
    return stats;
}

BatchStats run_batch(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t seed,
                     uint64_t first_trial, uint64_t n_trials, int threads, int attempt_cap) {
    if (threads == 1) return run_batch_serial(spec, noise, seed, first_trial, n_trials, attempt_cap);
    BatchStats total;
#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
    {
        BatchStats local;
#pragma omp for schedule(dynamic, 64) nowait
        for (int64_t i = 0; i < static_cast<int64_t>(n_trials); ++i) {
            local += run_trial(spec, noise, seed, first_trial + static_cast<uint64_t>(i),
                               attempt_cap);
        }
#pragma omp critical
        total += local;
    }
#else
    total = run_batch_serial(spec, noise, seed, first_trial, n_trials, attempt_cap);
#endif
    return total;
}

namespace {

PointEstimate to_point(const BatchStats& stats) {
    PointEstimate pe;
    pe.stats = stats;
    pe.p_l = wilson_estimate(stats.errors, stats.accepted);
    pe.p_l.n_trials = stats.trials;
    pe.p_l.n_accepted = stats.accepted;
    pe.p_v_hat = stats.unit_attempts
                     ? static_cast<double>(stats.unit_accepts) / stats.unit_attempts
                     : 0.0;
    pe.f_hat = stats.accepted ? static_cast<double>(stats.consumed) / stats.accepted : 0.0;
    return pe;
}

}  // namespace

PointEstimate estimate_pL(const ScenarioSpec& spec, const NoiseParams& noise, uint64_t n_trials,
                          uint64_t seed, int threads, int attempt_cap, int topup_max_factor) {
    if (n_trials < 1) throw std::invalid_argument("estimate_pL: n_trials must be >= 1");
    BatchStats stats = run_batch(spec, noise, seed, 0, n_trials, threads, attempt_cap);
    uint64_t next = n_trials;
    uint64_t cap = n_trials * static_cast<uint64_t>(std::max(1, topup_max_factor));
    while (stats.errors > 0 && stats.trials < cap) {
        Estimate e = wilson_estimate(stats.errors, stats.accepted);
        double half = (e.ci_high - e.ci_low) / 2.0;
        if (half < 0.2 * e.point) break;
        uint64_t add = std::min(stats.trials, cap - stats.trials);
        stats += run_batch(spec, noise, seed, next, add, threads, attempt_cap);
        next += add;
    }
    return to_point(stats);
}

std::vector<SweepPoint> sweep(const ScenarioSpec& spec, const NoiseParams& base,
                              const std::vector<double>& pe_grid, uint64_t n_trials,
                              uint64_t seed, int threads, int attempt_cap,
                              int topup_max_factor) {
    if (pe_grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (size_t i = 1; i < pe_grid.size(); ++i)
        if (pe_grid[i] <= pe_grid[i - 1]) throw std::invalid_argument("sweep: grid not increasing");
    std::vector<SweepPoint> out;
    out.reserve(pe_grid.size());
    for (size_t i = 0; i < pe_grid.size(); ++i) {
        NoiseParams noise = base;
        noise.p_e = pe_grid[i];
        noise.validate();
        SweepPoint pt;
        pt.p_e = pe_grid[i];
        pt.est = estimate_pL(spec, noise, n_trials, mix_seed(seed, i), threads, attempt_cap,
                             topup_max_factor);
        out.push_back(pt);
    }
    return out;
}

std::optional<Threshold> find_threshold(const std::vector<SweepPoint>& points) {
    auto log_ratio = [](const SweepPoint& p) {
        // p_L = 0 sits below the diagonal; use a large negative stand-in.
        if (p.est.p_l.point <= 0.0) return -50.0;
        return std::log(p.est.p_l.point) - std::log(p.p_e);
    };
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        double r0 = log_ratio(points[i]);
        double r1 = log_ratio(points[i + 1]);
        if (r0 < 0.0 && r1 >= 0.0) {
            double x0 = std::log(points[i].p_e), x1 = std::log(points[i + 1].p_e);
            double t = r0 / (r0 - r1);
            Threshold th;
            th.p_th = std::exp(x0 + t * (x1 - x0));
            th.bracket_low = points[i].p_e;
            th.bracket_high = points[i + 1].p_e;
            return th;
        }
    }
    return std::nullopt;
}

PvfResult estimate_pv_f(const NoiseParams& noise, int branch_count, uint64_t n_trials,
                        uint64_t seed, int threads) {
    if (branch_count < 0) throw std::invalid_argument("estimate_pv_f: negative branch count");
    const int kBatches = 32;
    std::vector<uint64_t> acc_accepts(kBatches, 0), acc_consumed(kBatches, 0);
    uint64_t per_batch = (n_trials + kBatches - 1) / kBatches;

    auto run_attempt = [&](uint64_t attempt_index, uint64_t& consumed_out) -> bool {
        MonteCarloSource rs(mix_seed(seed, attempt_index));
        ExecContext ctx(noise, rs);
        Factory factory(ctx);
        bool accepted = true;
        try {
            // The qubit's own verification: encode, Box 1_Z, Box 2_X.
            Factory::Attempt a = factory.l2_plus_attempt();
            accepted = a.accepted;
            PauliString central = a.frame;
            for (int b = 0; accepted && b < branch_count; ++b) {
                // Branch partner: a supplied level-2 |+L>, not charged to us.
                ctx.count_into_scratch = true;
                auto partner = factory.l2_plus();
                ctx.count_into_scratch = false;
                if (!partner) {
                    accepted = false;
                    break;
                }
                PauliString partner_frame = *partner;
                PauliFrame start(2 * steane::kN);
                start.pauli.copy_range_from(central, 0, steane::kN, 0);
                start.pauli.copy_range_from(partner_frame, 0, steane::kN, steane::kN);
                static const Circuit cz = [] {
                    Circuit c(2 * steane::kN);
                    for (int j = 0; j < steane::kN; ++j) c.add_gate(GateKind::CZ, j, steane::kN + j);
                    return c;
                }();
                PauliFrame outf = run_unit(cz, &start, ctx);
                central = outf.pauli.extract_range(0, steane::kN);
                if (!factory.box3x(central)) accepted = false;
            }
        } catch (const PrepExhausted&) {
            accepted = false;
        }
        consumed_out = ctx.consumed.total();
        return accepted;
    };

#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
#endif
    for (int b = 0; b < kBatches; ++b) {
        uint64_t begin = b * per_batch;
        uint64_t end = std::min<uint64_t>(n_trials, begin + per_batch);
        for (uint64_t i = begin; i < end; ++i) {
            uint64_t consumed = 0;
            bool ok = run_attempt(i, consumed);
            acc_accepts[b] += ok ? 1 : 0;
            acc_consumed[b] += consumed;
        }
    }

    PvfResult result;
    uint64_t accepts = 0, consumed = 0;
    std::vector<double> batch_f;
    for (int b = 0; b < kBatches; ++b) {
        accepts += acc_accepts[b];
        consumed += acc_consumed[b];
        if (acc_accepts[b] > 0)
            batch_f.push_back(static_cast<double>(acc_consumed[b]) / acc_accepts[b]);
    }
    result.attempts = n_trials;
    result.p_v = wilson_estimate(accepts, n_trials);
    result.f = accepts ? static_cast<double>(consumed) / accepts : 0.0;
    if (batch_f.size() > 1) {
        double mean = 0.0;
        for (double v : batch_f) mean += v;
        mean /= batch_f.size();
        double var = 0.0;
        for (double v : batch_f) var += (v - mean) * (v - mean);
        var /= (batch_f.size() - 1);
        result.f_stderr = std::sqrt(var / batch_f.size());
    }
    return result;
}

}  // namespace vcsim
