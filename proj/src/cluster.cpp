#include "vcsim/cluster.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace vcsim {

namespace {
constexpr int kN = steane::kN;
constexpr uint32_t kAll = steane::kAllOnes;
}  // namespace

void ClusterGraph::validate() const {
    for (const auto& e : edges) {
        if (e.a == e.b) throw std::invalid_argument("cluster graph: self loop");
        if (e.a < 0 || e.b < 0 || e.a >= static_cast<int>(nodes.size()) ||
            e.b >= static_cast<int>(nodes.size()))
            throw std::invalid_argument("cluster graph: edge endpoint out of range");
        if (!e.verified && (!nodes[e.a].level4 || !nodes[e.b].level4))
            throw std::invalid_argument("cluster graph: non-verified edge off level-4 nodes");
        for (const auto& f : edges) {
            if (&e != &f && std::minmax(e.a, e.b) == std::minmax(f.a, f.b))
                throw std::invalid_argument("cluster graph: multi-edge");
        }
    }
}

namespace {

const Circuit& cz_edge_circuit() {
    static const Circuit c = [] {
        Circuit c(2 * kN);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CZ, j, kN + j);
        return c;
    }();
    return c;
}

void run_cz_pair(PauliString& a, PauliString& b, ExecContext& ctx) {
    PauliFrame start(2 * kN);
    start.pauli.copy_range_from(a, 0, kN, 0);
    start.pauli.copy_range_from(b, 0, kN, kN);
    PauliFrame out = run_unit(cz_edge_circuit(), &start, ctx);
    a = out.pauli.extract_range(0, kN);
    b = out.pauli.extract_range(kN, kN);
}

const Circuit& measure_circuit(Rotation rot) {
    static const Circuit kI = [] {
        Circuit c(kN);
        for (int j = 0; j < kN; ++j) c.add_measure(j, Basis::X);
        return c;
    }();
    static const Circuit kH = [] {
        Circuit c(kN);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::H, j);
        for (int j = 0; j < kN; ++j) c.add_measure(j, Basis::X);
        return c;
    }();
    static const Circuit kS = [] {
        Circuit c(kN);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::S, j);
        for (int j = 0; j < kN; ++j) c.add_measure(j, Basis::X);
        return c;
    }();
    static const Circuit kSH = [] {
        Circuit c(kN);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::S, j);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::H, j);
        for (int j = 0; j < kN; ++j) c.add_measure(j, Basis::X);
        return c;
    }();
    switch (rot) {
        case Rotation::I: return kI;
        case Rotation::H: return kH;
        case Rotation::S: return kS;
        case Rotation::SH: return kSH;
    }
    return kI;
}

// The transversal-HS rotation of the pi/8 pipeline: per-qubit Sdg then H,
// which implements the logical HS on this code.
const Circuit& hs_layer_circuit() {
    static const Circuit c = [] {
        Circuit c(kN);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::Sdg, j);
        for (int j = 0; j < kN; ++j) c.add_gate(GateKind::H, j);
        return c;
    }();
    return c;
}

// Reduce the cat block's frame modulo the cat state's stabilizers
// (X^{x7} and pairwise Z.Z): the X pattern keeps its lighter coset
// representative, the Z pattern only keeps its parity.
void canonicalize_cat(PauliString& full, int cat0) {
    uint32_t x = 0, z = 0;
    for (int j = 0; j < kN; ++j) {
        if (full.x_bit(cat0 + j)) x |= 1u << j;
        if (full.z_bit(cat0 + j)) z |= 1u << j;
    }
    uint32_t xc = x ^ kAll;
    if (std::popcount(xc) < std::popcount(x)) x = xc;
    z = (std::popcount(z) & 1) ? 1u : 0u;
    for (int j = 0; j < kN; ++j) {
        full.set_x(cat0 + j, (x >> j) & 1);
        full.set_z(cat0 + j, (z >> j) & 1);
    }
}

void write_block(PauliString& full, int base, const PauliString& block) {
    full.copy_range_from(block, 0, kN, base);
}

// Outcome-parity flip the data error induces on a logical-H readout:
// deterministic when the (state-reduced) error maps to +/- itself under
// transversal H, a coin otherwise (the readout decoheres the error).
int h_readout_flip(const PauliString& data_err, steane::BlockState state, ExecContext& ctx) {
    PauliString e = steane::reduce_mod_state(data_err, state);
    uint32_t ex = static_cast<uint32_t>(e.x_word()) & kAll;
    uint32_t ez = static_cast<uint32_t>(e.z_word()) & kAll;
    if (ex == ez) {
        // Swap-invariant pattern (every site I or Y): commutes or
        // anticommutes with transversal H by the Y-count sign.
        return std::popcount(ex) & 1;
    }
    double w[2] = {0.5, 0.5};
    return static_cast<int>(ctx.rs.choice(w));
}

}  // namespace

Pi8Attempt prepare_pi8_attempt(Factory& factory) {
    ExecContext& ctx = factory.ctx();
    // The data block is a level-2 verified |0L>; the readout rounds follow.
    static const steane::Pi8Layout layout = steane::encode_pi8_layout(false);

    Pi8Attempt result;
    auto data_in = factory.l2_zero();
    if (!data_in) return result;
    int roundflip[2] = {0, 0};
    {
        PauliFrame start(layout.circuit.num_qubits());
        start.pauli.copy_range_from(*data_in, 0, kN, layout.data0);
        UnitRun run(layout.circuit, &start, ctx);
        for (int r = 0; r < 2; ++r) {
            const auto& round = layout.rounds[r];
            steane::BlockState state = r == 0 ? steane::BlockState::Zero : steane::BlockState::Pi8;
            run.advance(round.pre_ch_loc);
            for (int reg : round.check_regs) {
                if (run.frame().flip(reg)) return result;  // cat check tripped
            }
            canonicalize_cat(run.frame().pauli, round.cat0);
            PauliString data = run.frame().pauli.extract_range(layout.data0, kN);
            write_block(run.frame().pauli, layout.data0, steane::reduce_mod_state(data, state));
            run.advance(round.post_ch_loc);  // CH layer (twirled)
            data = run.frame().pauli.extract_range(layout.data0, kN);
            int flip_b = h_readout_flip(data, state, ctx);
            run.advance(round.end_loc);  // cat disposal
            int flip_a = 0;
            for (int reg : round.disposal_regs) flip_a ^= run.frame().flip(reg) ? 1 : 0;
            roundflip[r] = flip_a ^ flip_b;
        }
        result.frame = run.frame().pauli.extract_range(layout.data0, kN);
    }
    if (roundflip[0] != roundflip[1]) return result;  // readouts disagree
    if (roundflip[0] == 1) {
        // Both readouts flipped: the tracked correction goes the wrong way,
        // leaving a transversal-Y offset in the error frame.
        result.frame.set_x_word(result.frame.x_word() ^ kAll);
        result.frame.set_z_word(result.frame.z_word() ^ kAll);
    }

    if (!factory.box3x(result.frame)) return result;
    PauliFrame hs(kN);
    hs.pauli = result.frame;
    result.frame = run_unit(hs_layer_circuit(), &hs, ctx).pauli;
    if (!factory.box3x(result.frame)) return result;
    result.accepted = true;
    return result;
}

std::optional<PauliString> prepare_pi8_qubit(Factory& factory) {
    ExecContext& ctx = factory.ctx();
    int cap = ctx.single_attempt ? 1 : ctx.attempt_cap;
    for (int i = 0; i < cap; ++i) {
        ++ctx.unit_attempts;
        Pi8Attempt a = prepare_pi8_attempt(factory);
        if (a.accepted) {
            ++ctx.unit_accepts;
            return a.frame;
        }
        if (ctx.single_attempt) return std::nullopt;
    }
    throw PrepExhausted{};
}

SubclusterAttempt prepare_subcluster_attempt(const ClusterGraph& graph, Factory& factory) {
    SubclusterAttempt result;
    result.frames.reserve(graph.nodes.size());
    for (const auto& node : graph.nodes) {
        if (node.kind == ClusterNode::Kind::Pi8) {
            Pi8Attempt a = prepare_pi8_attempt(factory);
            if (!a.accepted) return result;
            result.frames.push_back(a.frame);
        } else {
            Factory::Attempt a = factory.l2_plus_attempt();
            if (!a.accepted) return result;
            result.frames.push_back(a.frame);
        }
    }
    // Connections in fixed (a,b)-sorted order; Box 3_X pairs follow each C-Z,
    // lower node index first.
    std::vector<ClusterGraph::Edge> edges = graph.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
        return std::minmax(x.a, x.b) < std::minmax(y.a, y.b);
    });
    for (const auto& e : edges) {
        if (!e.verified) throw std::invalid_argument("prepare_subcluster: non-verified edge");
        int lo = std::min(e.a, e.b), hi = std::max(e.a, e.b);
        run_cz_pair(result.frames[lo], result.frames[hi], factory.ctx());
        if (!factory.box3x(result.frames[lo])) return result;
        if (!factory.box3x(result.frames[hi])) return result;
    }
    result.accepted = true;
    return result;
}

std::optional<std::vector<PauliString>> prepare_subcluster(const ClusterGraph& graph,
                                                           Factory& factory) {
    ExecContext& ctx = factory.ctx();
    int cap = ctx.single_attempt ? 1 : ctx.attempt_cap;
    for (int i = 0; i < cap; ++i) {
        ++ctx.unit_attempts;
        SubclusterAttempt a = prepare_subcluster_attempt(graph, factory);
        if (a.accepted) {
            ++ctx.unit_accepts;
            return a.frames;
        }
        if (ctx.single_attempt) return std::nullopt;
    }
    throw PrepExhausted{};
}

void connect_nonverified(PauliString& left, PauliString& right, ExecContext& ctx) {
    run_cz_pair(left, right, ctx);
}

uint32_t transversal_measure(PauliString& frame, Rotation rot, ExecContext& ctx) {
    PauliFrame start(kN);
    start.pauli = frame;
    PauliFrame out = run_unit(measure_circuit(rot), &start, ctx);
    frame = out.pauli;
    uint32_t word = 0;
    for (int j = 0; j < kN; ++j)
        if (out.flip(j)) word |= 1u << j;
    return word;
}

bool score_logical_error(uint32_t flip_word, int xi, steane::LogicalMetric metric) {
    return steane::is_logical_error(flip_word, metric) ^ (xi != 0);
}

int effective_flip_weight(uint32_t flip_word, int xi) {
    return steane::min_weight_in_class(flip_word, xi);
}

ClusterGraph scenario_graph(ScenarioCase scase) {
    ClusterGraph g;
    switch (scase) {
        case ScenarioCase::I:
        case ScenarioCase::II: {
            g.nodes.resize(5);
            if (scase == ScenarioCase::II) g.nodes[0].kind = ClusterNode::Kind::Pi8;
            for (int k = 1; k <= 4; ++k) g.edges.push_back({0, k, true});
            break;
        }
        case ScenarioCase::III: {
            g.nodes.resize(2);
            g.nodes[0].level4 = g.nodes[1].level4 = true;
            g.edges.push_back({0, 1, false});
            break;
        }
    }
    g.validate();
    return g;
}

ScenarioOutcome run_scenario(const ScenarioSpec& spec, ExecContext& ctx) {
    Factory factory(ctx);
    ScenarioOutcome out;
    try {
        switch (spec.scase) {
            case ScenarioCase::I:
            case ScenarioCase::II: {
                ClusterGraph g = scenario_graph(spec.scase);
                auto frames = prepare_subcluster(g, factory);
                if (!frames) {
                    out.prep_exhausted = true;
                    return out;
                }
                Rotation rot = Rotation::I;
                if (spec.scase == ScenarioCase::II) {
                    // Fig. 3 measurement: the preceding outcome selects I or S;
                    // that outcome is outside the simulated fragment, so a coin.
                    double w[2] = {0.5, 0.5};
                    rot = ctx.rs.choice(w) ? Rotation::S : Rotation::I;
                }
                out.flip_word = transversal_measure((*frames)[0], rot, ctx);
                for (int k = 1; k <= 4; ++k)
                    out.xi ^= steane::logical_class(
                        static_cast<uint32_t>((*frames)[k].x_word()) & kAll);
                break;
            }
            case ScenarioCase::III: {
                auto left = factory.l4_plus();
                auto right = factory.l4_plus();
                if (!left || !right) {
                    out.prep_exhausted = true;
                    return out;
                }
                connect_nonverified(*left, *right, ctx);
                out.flip_word = transversal_measure(*left, Rotation::I, ctx);
                out.xi = steane::logical_class(static_cast<uint32_t>(right->x_word()) & kAll);
                break;
            }
        }
    } catch (const PrepExhausted&) {
        out.prep_exhausted = true;
        return out;
    }
    out.logical_error = score_logical_error(out.flip_word, out.xi, spec.metric);
    out.effective_weight = effective_flip_weight(out.flip_word, out.xi);
    return out;
}

}  // namespace vcsim
