#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vcsim/boxes.hpp"
#include "vcsim/steane.hpp"

namespace vcsim {

struct ClusterNode {
    enum class Kind : uint8_t { Plus, Pi8 };
    Kind kind = Kind::Plus;
    bool level4 = false;
};

/// Simple graph of logical qubits; verified edges get the C-Z + Box 3 pair
/// treatment, non-verified edges may only join level-4 nodes.
struct ClusterGraph {
    std::vector<ClusterNode> nodes;
    struct Edge {
        int a, b;
        bool verified = true;
    };
    std::vector<Edge> edges;

    void validate() const;
};

enum class ScenarioCase : uint8_t { I, II, III };

struct ScenarioSpec {
    ScenarioCase scase = ScenarioCase::III;
    steane::LogicalMetric metric = steane::LogicalMetric::kRawWeight;
};

/// One attempt at a verified sub-cluster: level-2 nodes, transversal C-Z per
/// edge, a Box 3_X on both endpoints after each connection.  Any rejection
/// discards the whole attempt.
struct SubclusterAttempt {
    bool accepted = false;
    std::vector<PauliString> frames;
};
SubclusterAttempt prepare_subcluster_attempt(const ClusterGraph& graph, Factory& factory);

/// Retried version (cap from the context); nullopt only in single-attempt mode.
std::optional<std::vector<PauliString>> prepare_subcluster(const ClusterGraph& graph,
                                                           Factory& factory);

/// One attempt at the pi/8 qubit: encoder (two verified logical-H readout
/// rounds), Box 3_X, transversal HS, Box 3_X.
struct Pi8Attempt {
    bool accepted = false;
    PauliString frame;
};
Pi8Attempt prepare_pi8_attempt(Factory& factory);
std::optional<PauliString> prepare_pi8_qubit(Factory& factory);

/// Transversal C-Z with gate noise and no verification.
void connect_nonverified(PauliString& left, PauliString& right, ExecContext& ctx);

enum class Rotation : uint8_t { I, H, S, SH };

/// Per-qubit rotation plus bitwise X-basis readout with measurement noise;
/// returns the flip word relative to the noiseless reference.
uint32_t transversal_measure(PauliString& frame, Rotation rot, ExecContext& ctx);

struct ScenarioOutcome {
    bool prep_exhausted = false;
    uint32_t flip_word = 0;
    int xi = 0;  // byproduct compensation from unmeasured C-Z partners
    bool logical_error = false;
    int effective_weight = 0;
};

ClusterGraph scenario_graph(ScenarioCase scase);

/// Executes one full scenario pipeline under the context's noise.
ScenarioOutcome run_scenario(const ScenarioSpec& spec, ExecContext& ctx);

/// Logical error given the measured block's flip word and the partners'
/// compensation bit (decoder-failure and reduced-raw-weight coincide here).
bool score_logical_error(uint32_t flip_word, int xi, steane::LogicalMetric metric);

/// Weight of the flip word modulo stabilizer words and the xi-compensated
/// logical class; the single-fault criterion is that this stays <= 1.
int effective_flip_weight(uint32_t flip_word, int xi);

}  // namespace vcsim
