#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "vcsim/circuit.hpp"
#include "vcsim/pauli.hpp"

namespace vcsim {

/// The [[7,1,3]] code.  Both check matrices equal the Hamming(7,4) matrix
/// whose column j (1-indexed) is the binary representation of j; the logical
/// operators are the all-ones strings.  Words are 7-bit masks, bit q = qubit q.
namespace steane {

inline constexpr int kN = 7;
inline constexpr uint32_t kAllOnes = 0x7f;
// Rows as qubit masks: {4,5,6,7}, {2,3,6,7}, {1,3,5,7} one-indexed.
inline constexpr std::array<uint32_t, 3> kRows = {0x78, 0x66, 0x55};

struct ClassicalSyndrome {
    uint8_t bits = 0;  // 0..7; bit2 from kRows[0], bit0 from kRows[2]
    bool zero() const { return bits == 0; }
};

ClassicalSyndrome syndrome(uint32_t word);

/// Qubit index (0-based) of the unique single flip matching s, or nothing
/// for the zero syndrome.
std::optional<int> decode_single(ClassicalSyndrome s);

inline int logical_parity(uint32_t word) { return std::popcount(word & kAllOnes) & 1; }

/// All 16 Hamming codewords (built from the rows plus the all-ones word).
const std::vector<uint32_t>& codewords();
/// The 8 even-weight codewords (the dual code).
const std::vector<uint32_t>& even_codewords();

bool is_codeword(uint32_t word);

/// Minimum Hamming weight of word ^ c over codewords c of the given logical
/// parity class.
int min_weight_in_class(uint32_t word, int parity_class);

enum class LogicalMetric : uint8_t {
    // Weight of the residual error class ("two or more errors" counted on
    // the minimal representative, so stabilizer-equivalent flip words are
    // not errors).
    kRawWeight,
    // Decode the syndrome, apply the correction, test the logical parity of
    // the residual.  Coincides with kRawWeight on this code.
    kDecoderFailure,
};

bool is_logical_error(uint32_t flips, LogicalMetric metric);

/// Logical flip carried by an X-type residual pattern: decode its syndrome,
/// strip the correction, read the parity of the remaining codeword.
int logical_class(uint32_t pattern);

// --- encoders ---------------------------------------------------------

/// Preps + H + CNOT circuit for |0_L>; stabilized by all six generators and
/// logical Z.
Circuit encode_zero();
/// Same for |+_L> (stabilized by logical X).
Circuit encode_plus();

/// Append the encoders to an existing circuit at a qubit offset.
void append_encode_zero(Circuit& c, int base);
void append_encode_plus(Circuit& c, int base);

/// The pi/8-state encoder: an encode_zero block plus two rounds of
/// logical-Hadamard readout, each with a cat-state ancilla built by a CNOT
/// ladder, pairwise cat checks, transversal CH onto the data block, and a
/// cat disposal measurement in the X basis.
struct Pi8Layout {
    Circuit circuit;
    int data0 = 0;  // 7 data qubits at [data0, data0+7)
    struct Round {
        int cat0;                     // 7 cat qubits
        int check0;                   // 6 check qubits
        std::array<int, 6> check_regs;    // register ids of the pair checks
        std::array<int, 7> disposal_regs; // register ids of the cat X-measures
        size_t pre_ch_loc;            // location index where the CH layer starts
        size_t post_ch_loc;           // location index just past the CH layer
        size_t end_loc;               // index just past the disposal measures
    };
    std::array<Round, 2> rounds;
    size_t encode_end_loc = 0;  // index just past the data encoder
};

/// With include_data_encoder the circuit preps its own |0_L> block (the
/// standalone form checked on the oracle); without, the data block is
/// supplied by the caller and the circuit holds only the readout rounds.
Pi8Layout encode_pi8_layout(bool include_data_encoder = true);
/// Spec-shaped accessor: just the standalone circuit.
Circuit encode_pi8();

// --- state-stabilizer reductions --------------------------------------

/// Which stabilizer group a 7-qubit block ideally has at some point.
enum class BlockState : uint8_t { Zero, Plus, Pi8, CodeOnly };

/// Residual weight of e modulo the ideal state's full stabilizer group
/// (code generators, plus the logical operator the state is fixed by).
int effective_residual_weight(const PauliString& e, BlockState state);

/// Minimal-weight representative of e modulo the state's stabilizer group,
/// used before the non-Clifford CH layer so that twirling never shreds a
/// pattern that acts trivially on the actual state.
PauliString reduce_mod_state(const PauliString& e, BlockState state);

}  // namespace steane
}  // namespace vcsim
