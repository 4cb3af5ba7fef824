#include "vcsim/steane.hpp"

#include <bit>
#include <stdexcept>

namespace vcsim {
namespace steane {

ClassicalSyndrome syndrome(uint32_t word) {
    uint8_t s = 0;
    for (int r = 0; r < 3; ++r) {
        s = static_cast<uint8_t>((s << 1) | (std::popcount(word & kRows[r]) & 1));
    }
    return ClassicalSyndrome{s};
}

std::optional<int> decode_single(ClassicalSyndrome s) {
    if (s.bits == 0) return std::nullopt;
    return s.bits - 1;  // column q holds binary(q+1)
}

const std::vector<uint32_t>& codewords() {
    static const std::vector<uint32_t> words = [] {
        std::vector<uint32_t> out;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d) {
                        uint32_t w = 0;
                        if (a) w ^= kRows[0];
                        if (b) w ^= kRows[1];
                        if (c) w ^= kRows[2];
                        if (d) w ^= kAllOnes;
                        out.push_back(w);
                    }
        return out;
    }();
    return words;
}

const std::vector<uint32_t>& even_codewords() {
    static const std::vector<uint32_t> words = [] {
        std::vector<uint32_t> out;
        for (uint32_t w : codewords())
            if (!(std::popcount(w) & 1)) out.push_back(w);
        return out;
    }();
    return words;
}

bool is_codeword(uint32_t word) { return syndrome(word).zero(); }

int min_weight_in_class(uint32_t word, int parity_class) {
    int best = kN + 1;
    for (uint32_t c : codewords()) {
        if ((std::popcount(c) & 1) != parity_class) continue;
        best = std::min(best, std::popcount((word ^ c) & kAllOnes));
    }
    return best;
}

bool is_logical_error(uint32_t flips, LogicalMetric metric) {
    flips &= kAllOnes;
    if (metric == LogicalMetric::kRawWeight) {
        // Weight of the residual class: flips modulo the stabilizer-image
        // words (even codewords).
        return min_weight_in_class(flips, 0) >= 2;
    }
    auto s = syndrome(flips);
    if (auto q = decode_single(s)) flips ^= 1u << *q;
    return logical_parity(flips) == 1;
}

int logical_class(uint32_t pattern) {
    pattern &= kAllOnes;
    if (auto q = decode_single(syndrome(pattern))) pattern ^= 1u << *q;
    return logical_parity(pattern);
}

namespace {

void add_css_encoder(Circuit& c, int base, const std::vector<std::pair<int, uint32_t>>& gens) {
    for (int q = 0; q < kN; ++q) c.add_prep(base + q, Basis::Z);
    for (auto& [pivot, mask] : gens) c.add_gate(GateKind::H, base + pivot);
    for (auto& [pivot, mask] : gens) {
        for (int q = 0; q < kN; ++q) {
            if (q != pivot && (mask >> q) & 1) c.add_gate(GateKind::CNOT, base + pivot, base + q);
        }
    }
}

// 0-based pivot/support pairs; each pivot column is unique to its row.
const std::vector<std::pair<int, uint32_t>> kZeroGens = {
    {3, 0x78}, {1, 0x66}, {0, 0x55}};
const std::vector<std::pair<int, uint32_t>> kPlusGens = {
    {3, 0x78}, {1, 0x52}, {0, 0x61}, {2, 0x34}};

}  // namespace

Circuit encode_zero() {
    Circuit c(kN);
    add_css_encoder(c, 0, kZeroGens);
    return c;
}

Circuit encode_plus() {
    Circuit c(kN);
    add_css_encoder(c, 0, kPlusGens);
    return c;
}

void append_encode_zero(Circuit& c, int base) { add_css_encoder(c, base, kZeroGens); }
void append_encode_plus(Circuit& c, int base) { add_css_encoder(c, base, kPlusGens); }

Pi8Layout encode_pi8_layout(bool include_data_encoder) {
    Pi8Layout layout{Circuit(33)};
    Circuit& c = layout.circuit;
    layout.data0 = 0;
    if (include_data_encoder) add_css_encoder(c, 0, kZeroGens);
    layout.encode_end_loc = c.locations().size();

    const int cat_base[2] = {7, 20};
    const int check_base[2] = {14, 27};
    for (int r = 0; r < 2; ++r) {
        auto& round = layout.rounds[r];
        round.cat0 = cat_base[r];
        round.check0 = check_base[r];
        c.add_prep(round.cat0, Basis::X);
        for (int j = 1; j < kN; ++j) c.add_prep(round.cat0 + j, Basis::Z);
        for (int j = 1; j < kN; ++j) c.add_gate(GateKind::CNOT, round.cat0, round.cat0 + j);
        // Pairwise Z.Z checks of the cat; any uneven X pattern trips one.
        int reg_before = c.num_registers();
        for (int i = 0; i < 6; ++i) {
            int chk = round.check0 + i;
            c.add_prep(chk, Basis::Z);
            c.add_gate(GateKind::CNOT, round.cat0 + i, chk);
            c.add_gate(GateKind::CNOT, round.cat0 + i + 1, chk);
            c.add_measure(chk, Basis::Z);
            round.check_regs[i] = reg_before + i;
        }
        round.pre_ch_loc = c.locations().size();
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CH, round.cat0 + j, layout.data0 + j);
        round.post_ch_loc = c.locations().size();
        for (int j = 0; j < kN; ++j) {
            round.disposal_regs[j] = c.num_registers();
            c.add_measure(round.cat0 + j, Basis::X);
        }
        round.end_loc = c.locations().size();
    }
    return layout;
}

Circuit encode_pi8() { return encode_pi8_layout().circuit; }

namespace {

struct StabGroup {
    std::vector<uint32_t> xs, zs;
};

const StabGroup& group_for(BlockState state) {
    static const StabGroup zero{even_codewords(), codewords()};
    static const StabGroup plus{codewords(), even_codewords()};
    static const StabGroup code_only{even_codewords(), even_codewords()};
    switch (state) {
        case BlockState::Zero: return zero;
        case BlockState::Plus: return plus;
        default: return code_only;
    }
}

}  // namespace

int effective_residual_weight(const PauliString& e, BlockState state) {
    uint32_t ex = static_cast<uint32_t>(e.x_word()) & kAllOnes;
    uint32_t ez = static_cast<uint32_t>(e.z_word()) & kAllOnes;
    const StabGroup& g = group_for(state);
    int best = kN + 1;
    for (uint32_t a : g.xs)
        for (uint32_t b : g.zs) best = std::min(best, std::popcount((ex ^ a) | (ez ^ b)));
    return best;
}

PauliString reduce_mod_state(const PauliString& e, BlockState state) {
    uint32_t ex = static_cast<uint32_t>(e.x_word()) & kAllOnes;
    uint32_t ez = static_cast<uint32_t>(e.z_word()) & kAllOnes;
    const StabGroup& g = group_for(state);
    int best = kN + 1;
    uint32_t bx = ex, bz = ez;
    for (uint32_t a : g.xs)
        for (uint32_t b : g.zs) {
            int w = std::popcount((ex ^ a) | (ez ^ b));
            if (w < best) {
                best = w;
                bx = ex ^ a;
                bz = ez ^ b;
            }
        }
    PauliString out(kN);
    out.set_x_word(bx);
    out.set_z_word(bz);
    return out;
}

}  // namespace steane
}  // namespace vcsim
