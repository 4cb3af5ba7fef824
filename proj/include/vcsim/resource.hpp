#pragma once

#include <cstdint>
#include <utility>

namespace vcsim {

/// Inputs of the physical-resource model R = N (f / p_v^{kq}) K Q.
struct ResourceQuery {
    int K = 0, Q = 0;   // logical cluster dimensions (qubits x operations)
    int k = 0, q = 0;   // sub-cluster dimensions
    double f = 0.0;     // physical ops per verified logical qubit
    double p_v = 0.0;   // verification success probability
    double N = 0.0;     // parallel-trial safety factor

    void validate() const;
};

/// Physical qubit-and-gate count for the whole computation.
double resource(const ResourceQuery& rq);

/// ceil(N / p_v^{kq}) parallel trials per sub-cluster; the success
/// probability of at least one is >= 1 - e^{-N}.
struct TrialsNeeded {
    uint64_t trials = 0;
    double success_bound = 0.0;
};
TrialsNeeded trials_needed(int k, int q, double p_v, double N);

/// Exhaustive search over divisor pairs of (K, Q); ties break toward the
/// smallest k*q, then the smallest k.
struct SubclusterChoice {
    int k = 0, q = 0;
    double resource_value = 0.0;
};
SubclusterChoice optimize_subcluster(int K, int Q, double f, double p_v, double N);

}  // namespace vcsim
