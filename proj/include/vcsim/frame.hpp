#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <vector>

#include "vcsim/circuit.hpp"
#include "vcsim/pauli.hpp"
#include "vcsim/rng.hpp"

namespace vcsim {

/// Accumulated Pauli error plus the measurement records it has flipped,
/// relative to the fault-free reference run of the same circuit.
struct PauliFrame {
    PauliString pauli;
    std::vector<uint8_t> flipped;  // indexed by register_id

    explicit PauliFrame(int n = 0) : pauli(n) {}

    bool flip(int reg) const { return reg < static_cast<int>(flipped.size()) && flipped[reg]; }
};

/// G P G† up to phase, in place on the full frame.  CH is rejected; callers
/// must twirl it (ch_twirl) instead.
void conjugate_inplace(const CliffordGate& gate, PauliString& p);

/// Pure version of the above.
PauliString conjugate(const CliffordGate& gate, const PauliString& p);

/// Two-qubit Pauli index: (x0 | z0<<1 | x1<<2 | z1<<3), identity = 0.
struct ChTwirlEntry {
    uint8_t out;
    double prob;
};

/// Pauli-basis expansion of CH p CH† with squared-coefficient weights,
/// from the exact 4x4 conjugation.  Index as above; qubit 0 is the control.
const std::vector<ChTwirlEntry>& ch_expansion(uint8_t pauli_index);

uint8_t pauli2_index(const PauliString& p, int q0, int q1);
void apply_pauli2_index(PauliString& p, int q0, int q1, uint8_t idx);

/// Samples a Pauli from the expansion of CH p CH†, acting on the two CH
/// qubits of the frame only.
void ch_twirl_inplace(PauliString& frame, int control, int target, RandomSource& rs);

/// A fault to inject at one location: either a Pauli on the location's
/// qubits, or a prep/measure record flip.
struct Fault {
    PauliString pauli;   // full-width; empty (n=0) if none
    bool flip = false;   // prep/measure flip
};

class FaultProvider {
  public:
    virtual ~FaultProvider() = default;
    virtual std::optional<Fault> fault_at(const Location& loc) = 0;
};

class NoFaults final : public FaultProvider {
  public:
    std::optional<Fault> fault_at(const Location&) override { return std::nullopt; }
};

/// Injects from an explicit site_id -> Fault map.
class MapFaults final : public FaultProvider {
  public:
    explicit MapFaults(std::unordered_map<int, Fault> faults) : faults_(std::move(faults)) {}
    std::optional<Fault> fault_at(const Location& loc) override {
        auto it = faults_.find(loc.site_id);
        if (it == faults_.end()) return std::nullopt;
        return it->second;
    }

  private:
    std::unordered_map<int, Fault> faults_;
};

/// Walks the circuit (or the [begin,end) slice of its locations) in time
/// order.  At each location: gates first conjugate the frame (CH via twirl),
/// then compose the injected fault; preps reset the qubit's frame before
/// injecting prep faults; measures record a flip iff the frame anticommutes
/// with the measured basis operator, XOR an injected flip.
void propagate_frame(const Circuit& circuit, PauliFrame& frame, FaultProvider& faults,
                     RandomSource& rs, size_t begin = 0, size_t end = SIZE_MAX);

/// Spec-shaped convenience overload.
PauliFrame propagate_frame(const Circuit& circuit, const PauliFrame& start,
                           const std::unordered_map<int, Fault>& injected, RandomSource& rs);

}  // namespace vcsim
