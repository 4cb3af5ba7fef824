#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "vcsim/circuit.hpp"
#include "vcsim/frame.hpp"
#include "vcsim/noise.hpp"
#include "vcsim/pauli.hpp"
#include "vcsim/rng.hpp"
#include "vcsim/steane.hpp"

namespace vcsim {

struct Consumption {
    uint64_t preps = 0, gates = 0, meas = 0;
    uint64_t total() const { return preps + gates + meas; }
    Consumption& operator+=(const Consumption& o) {
        preps += o.preps;
        gates += o.gates;
        meas += o.meas;
        return *this;
    }
    Consumption& operator+=(const Circuit::Counts& c) {
        preps += c.preps;
        gates += c.gates;
        meas += c.meas;
        return *this;
    }
};

struct VerificationOutcome {
    bool accepted = false;
    uint64_t consumed_qubits = 0;  // physical preparations
    uint64_t consumed_gates = 0;   // gates + measurements
};

/// Thrown when a preparation exceeds the attempt cap; the trial is recorded
/// as preparation-exhausted.
struct PrepExhausted {};

/// Per-trial execution state: noise, the trial's random stream, consumption
/// tallies, and the fault-sweep hooks (site collection / single injection).
struct ExecContext {
    NoiseParams noise;
    RandomSource& rs;
    int attempt_cap = 1000;
    bool single_attempt = false;  // fault sweeps: no retries anywhere

    Consumption consumed;
    Consumption scratch;   // sink while counting is suspended
    bool count_into_scratch = false;
    uint64_t unit_attempts = 0;  // logical-qubit preparation attempts
    uint64_t unit_accepts = 0;

    long unit_counter = 0;  // increments per unit-circuit execution
    struct Injection {
        long unit_seq;
        int site_id;
        Fault fault;
    };
    std::optional<Injection> injection;
    std::vector<std::pair<long, Location>>* site_collector = nullptr;

    ExecContext(const NoiseParams& n, RandomSource& r) : noise(n), rs(r) {}

    Consumption& sink() { return count_into_scratch ? scratch : consumed; }
};

/// Runs one unit circuit under the context's noise (plus any planned
/// injection), starting from `start` if given; tallies consumption.
PauliFrame run_unit(const Circuit& circuit, const PauliFrame* start, ExecContext& ctx);

/// Segment-wise execution of one unit circuit (one unit_seq, one fault
/// stream); consumption is tallied per executed slice, so aborting after a
/// rejection does not charge for the tail.
class UnitRun {
  public:
    UnitRun(const Circuit& circuit, const PauliFrame* start, ExecContext& ctx);
    ~UnitRun();
    UnitRun(const UnitRun&) = delete;

    /// Propagates locations [cursor, end_loc).
    void advance(size_t end_loc);
    PauliFrame& frame() { return frame_; }

  private:
    const Circuit& circuit_;
    ExecContext& ctx_;
    PauliFrame frame_;
    std::unique_ptr<FaultProvider> provider_;
    size_t cursor_ = 0;
};

enum class BoxKind : uint8_t { Box1, Box2, Box3, Box4 };
enum class AType : uint8_t { X, Z };

/// Static description of one box: the coupling fragment (data block at
/// qubits 0..6, ancilla at 7..13; Box 1 fragments include the fresh ancilla
/// encoder), which ancilla product it consumes, and its acceptance rule.
struct BoxSpec {
    BoxKind kind;
    AType a_type;
    Circuit circuit;
    bool ancilla_supplied;   // false: fragment preps its own (Box 1)
    bool check_parity;       // Box 2 also requires logical outcome +1
    const char* ancilla_product;  // "", "L1+", "L2+", "L2-"

    bool accept(uint32_t flip_word) const {
        if (!steane::syndrome(flip_word).zero()) return false;
        return !check_parity || steane::logical_parity(flip_word) == 0;
    }
};

BoxSpec build_box1(AType a);
BoxSpec build_box2(AType a);
BoxSpec build_box3(AType a);
BoxSpec build_box4(AType a);

/// Box applications and post-selected block factories.  Products retry
/// internally up to the attempt cap (throwing PrepExhausted past it); in
/// single-attempt mode any internal rejection surfaces as nullopt.
class Factory {
  public:
    explicit Factory(ExecContext& ctx) : ctx_(ctx) {}

    // Post-selected products (7-qubit residual frames).
    std::optional<PauliString> l1_plus();
    std::optional<PauliString> l2_plus();
    std::optional<PauliString> l2_zero();
    std::optional<PauliString> l4_plus();

    struct Attempt {
        bool accepted = false;
        PauliString frame;
        int logical_flip = 0;  // Box 2 by-product: flip of the logical readout
    };
    Attempt l1_plus_attempt();
    Attempt l2_plus_attempt();
    Attempt l2_zero_attempt();

    // Boxes applied to an existing block; true = accepted, data updated in place.
    bool box1z(PauliString& data);
    bool box1x(PauliString& data);
    bool box2x(PauliString& data, int* logical_flip = nullptr);
    bool box2z(PauliString& data, int* logical_flip = nullptr);
    bool box3x(PauliString& data);
    bool box3z(PauliString& data);
    bool box4x(PauliString& data);
    bool box4z(PauliString& data);

    ExecContext& ctx() { return ctx_; }

  private:
    // Runs a 14-qubit coupling fragment over (data, anc); returns the
    // ancilla flip word and writes back the data block.
    uint32_t run_coupling(const Circuit& circuit, PauliString& data, const PauliString& anc);

    ExecContext& ctx_;
};

/// Spec-shaped single attempts: encode, Box 1, Box 2 under sampled noise.
std::pair<PauliString, VerificationOutcome> prepare_level2_plus(const NoiseParams& noise,
                                                                RandomSource& rs);
std::pair<PauliString, VerificationOutcome> prepare_level2_zero(const NoiseParams& noise,
                                                                RandomSource& rs);

}  // namespace vcsim
