#include "vcsim/boxes.hpp"

namespace vcsim {

namespace {

constexpr int kN = steane::kN;

// Coupling fragments over data 0..6, ancilla 7..13.

Circuit make_box1z_circuit() {
    // Fresh |+L> target copies the data's X errors; bitwise Z readout.
    Circuit c(2 * kN);
    steane::append_encode_plus(c, kN);
    for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CNOT, j, kN + j);
    for (int j = 0; j < kN; ++j) c.add_measure(kN + j, Basis::Z);
    return c;
}

Circuit make_box1x_circuit() {
    // Fresh |0L> control picks up the data's Z errors; bitwise X readout.
    Circuit c(2 * kN);
    steane::append_encode_zero(c, kN);
    for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CNOT, kN + j, j);
    for (int j = 0; j < kN; ++j) c.add_measure(kN + j, Basis::X);
    return c;
}

Circuit make_cnot_from_anc_xmeas() {
    Circuit c(2 * kN);
    for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CNOT, kN + j, j);
    for (int j = 0; j < kN; ++j) c.add_measure(kN + j, Basis::X);
    return c;
}

Circuit make_cz_anc_xmeas() {
    Circuit c(2 * kN);
    for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CZ, kN + j, j);
    for (int j = 0; j < kN; ++j) c.add_measure(kN + j, Basis::X);
    return c;
}

Circuit make_cnot_into_anc_zmeas() {
    Circuit c(2 * kN);
    for (int j = 0; j < kN; ++j) c.add_gate(GateKind::CNOT, j, kN + j);
    for (int j = 0; j < kN; ++j) c.add_measure(kN + j, Basis::Z);
    return c;
}

const Circuit& box1z_circuit() {
    static const Circuit c = make_box1z_circuit();
    return c;
}
const Circuit& box1x_circuit() {
    static const Circuit c = make_box1x_circuit();
    return c;
}
const Circuit& cnot_from_anc_xmeas() {
    static const Circuit c = make_cnot_from_anc_xmeas();
    return c;
}
const Circuit& cz_anc_xmeas() {
    static const Circuit c = make_cz_anc_xmeas();
    return c;
}
const Circuit& cnot_into_anc_zmeas() {
    static const Circuit c = make_cnot_into_anc_zmeas();
    return c;
}

class UnitFaultProvider final : public FaultProvider {
  public:
    UnitFaultProvider(const NoiseParams& noise, RandomSource& rs,
                      const std::optional<std::pair<int, Fault>>& inject)
        : noise_(noise, rs), inject_(inject), enabled_(noise.p_e > 0.0 || noise.include_memory) {}

    std::optional<Fault> fault_at(const Location& loc) override {
        if (inject_ && inject_->first == loc.site_id) return inject_->second;
        if (!enabled_) return std::nullopt;
        return noise_.fault_at(loc);
    }

  private:
    NoiseFaults noise_;
    std::optional<std::pair<int, Fault>> inject_;
    bool enabled_;
};

}  // namespace

UnitRun::UnitRun(const Circuit& circuit, const PauliFrame* start, ExecContext& ctx)
    : circuit_(circuit), ctx_(ctx), frame_(circuit.num_qubits()) {
    long seq = ctx.unit_counter++;
    if (ctx.site_collector) {
        for (const Location& loc : circuit.locations()) ctx.site_collector->emplace_back(seq, loc);
    }
    std::optional<std::pair<int, Fault>> inject;
    if (ctx.injection && ctx.injection->unit_seq == seq)
        inject = std::make_pair(ctx.injection->site_id, ctx.injection->fault);
    provider_ = std::make_unique<UnitFaultProvider>(ctx.noise, ctx.rs, inject);
    if (start) frame_ = *start;
}

UnitRun::~UnitRun() = default;

void UnitRun::advance(size_t end_loc) {
    end_loc = std::min(end_loc, circuit_.locations().size());
    if (end_loc <= cursor_) return;
    propagate_frame(circuit_, frame_, *provider_, ctx_.rs, cursor_, end_loc);
    ctx_.sink() += circuit_.counts(cursor_, end_loc);
    cursor_ = end_loc;
}

PauliFrame run_unit(const Circuit& circuit, const PauliFrame* start, ExecContext& ctx) {
    UnitRun run(circuit, start, ctx);
    run.advance(circuit.locations().size());
    return run.frame();
}

BoxSpec build_box1(AType a) {
    if (a == AType::Z) return {BoxKind::Box1, a, box1z_circuit(), false, false, ""};
    return {BoxKind::Box1, a, box1x_circuit(), false, false, ""};
}

BoxSpec build_box2(AType a) {
    if (a == AType::X) return {BoxKind::Box2, a, cnot_from_anc_xmeas(), true, true, "L1+"};
    return {BoxKind::Box2, a, cz_anc_xmeas(), true, true, "L1+"};
}

BoxSpec build_box3(AType a) {
    if (a == AType::X) return {BoxKind::Box3, a, cnot_from_anc_xmeas(), true, false, "L2-"};
    return {BoxKind::Box3, a, cz_anc_xmeas(), true, false, "L2+"};
}

BoxSpec build_box4(AType a) {
    // Outer coupling only; the inner complementary Box 3 guards the ancilla.
    if (a == AType::X) return {BoxKind::Box4, a, cnot_from_anc_xmeas(), true, false, "L2-"};
    return {BoxKind::Box4, a, cnot_into_anc_zmeas(), true, false, "L2+"};
}

uint32_t Factory::run_coupling(const Circuit& circuit, PauliString& data,
                               const PauliString& anc) {
    PauliFrame start(circuit.num_qubits());
    start.pauli.copy_range_from(data, 0, kN, 0);
    start.pauli.copy_range_from(anc, 0, kN, kN);
    PauliFrame out = run_unit(circuit, &start, ctx_);
    uint32_t word = 0;
    for (int j = 0; j < kN; ++j)
        if (out.flip(j)) word |= 1u << j;
    data = out.pauli.extract_range(0, kN);
    return word;
}

Factory::Attempt Factory::l1_plus_attempt() {
    PauliFrame out = run_unit(box1z_circuit(), nullptr, ctx_);
    Attempt a;
    uint32_t word = 0;
    for (int j = 0; j < kN; ++j)
        if (out.flip(j)) word |= 1u << j;
    a.accepted = steane::syndrome(word).zero();
    a.frame = out.pauli.extract_range(0, kN);
    return a;
}

std::optional<PauliString> Factory::l1_plus() {
    int cap = ctx_.single_attempt ? 1 : ctx_.attempt_cap;
    for (int i = 0; i < cap; ++i) {
        Attempt a = l1_plus_attempt();
        if (a.accepted) return a.frame;
    }
    if (ctx_.single_attempt) return std::nullopt;
    throw PrepExhausted{};
}

bool Factory::box1z(PauliString& data) {
    PauliFrame start(2 * kN);
    start.pauli.copy_range_from(data, 0, kN, 0);
    PauliFrame out = run_unit(box1z_circuit(), &start, ctx_);
    uint32_t word = 0;
    for (int j = 0; j < kN; ++j)
        if (out.flip(j)) word |= 1u << j;
    data = out.pauli.extract_range(0, kN);
    return steane::syndrome(word).zero();
}

bool Factory::box1x(PauliString& data) {
    PauliFrame start(2 * kN);
    start.pauli.copy_range_from(data, 0, kN, 0);
    PauliFrame out = run_unit(box1x_circuit(), &start, ctx_);
    uint32_t word = 0;
    for (int j = 0; j < kN; ++j)
        if (out.flip(j)) word |= 1u << j;
    data = out.pauli.extract_range(0, kN);
    return steane::syndrome(word).zero();
}

bool Factory::box2x(PauliString& data, int* logical_flip) {
    auto anc = l1_plus();
    if (!anc) return false;
    uint32_t word = run_coupling(cnot_from_anc_xmeas(), data, *anc);
    if (logical_flip) *logical_flip = steane::logical_parity(word);
    return steane::syndrome(word).zero() && steane::logical_parity(word) == 0;
}

bool Factory::box2z(PauliString& data, int* logical_flip) {
    auto anc = l1_plus();
    if (!anc) return false;
    uint32_t word = run_coupling(cz_anc_xmeas(), data, *anc);
    if (logical_flip) *logical_flip = steane::logical_parity(word);
    return steane::syndrome(word).zero() && steane::logical_parity(word) == 0;
}

bool Factory::box3x(PauliString& data) {
    auto anc = l2_zero();
    if (!anc) return false;
    uint32_t word = run_coupling(cnot_from_anc_xmeas(), data, *anc);
    return steane::syndrome(word).zero();
}

bool Factory::box3z(PauliString& data) {
    auto anc = l2_plus();
    if (!anc) return false;
    uint32_t word = run_coupling(cz_anc_xmeas(), data, *anc);
    return steane::syndrome(word).zero();
}

bool Factory::box4x(PauliString& data) {
    auto anc = l2_zero();
    if (!anc) return false;
    // Residual X errors in the ancilla would ride the CNOTs into the data;
    // the complementary Box 3 blocks them before the coupling.
    if (!box3z(*anc)) return false;
    uint32_t word = run_coupling(cnot_from_anc_xmeas(), data, *anc);
    return steane::syndrome(word).zero();
}

bool Factory::box4z(PauliString& data) {
    auto anc = l2_plus();
    if (!anc) return false;
    if (!box3x(*anc)) return false;
    uint32_t word = run_coupling(cnot_into_anc_zmeas(), data, *anc);
    return steane::syndrome(word).zero();
}

namespace {
const Circuit& encode_plus_circuit() {
    static const Circuit c = steane::encode_plus();
    return c;
}
const Circuit& encode_zero_circuit() {
    static const Circuit c = steane::encode_zero();
    return c;
}
}  // namespace

Factory::Attempt Factory::l2_plus_attempt() {
    Attempt a;
    a.frame = run_unit(encode_plus_circuit(), nullptr, ctx_).pauli;
    if (!box1z(a.frame)) return a;
    if (!box2x(a.frame, &a.logical_flip)) return a;
    a.accepted = true;
    return a;
}

Factory::Attempt Factory::l2_zero_attempt() {
    Attempt a;
    a.frame = run_unit(encode_zero_circuit(), nullptr, ctx_).pauli;
    if (!box1x(a.frame)) return a;
    if (!box2z(a.frame, &a.logical_flip)) return a;
    a.accepted = true;
    return a;
}

namespace {

template <typename AttemptFn>
std::optional<PauliString> retry_product(ExecContext& ctx, AttemptFn&& fn) {
    int cap = ctx.single_attempt ? 1 : ctx.attempt_cap;
    for (int i = 0; i < cap; ++i) {
        ++ctx.unit_attempts;
        auto a = fn();
        if (a.accepted) {
            ++ctx.unit_accepts;
            return a.frame;
        }
        if (ctx.single_attempt) return std::nullopt;
    }
    throw PrepExhausted{};
}

}  // namespace

std::optional<PauliString> Factory::l2_plus() {
    return retry_product(ctx_, [&] { return l2_plus_attempt(); });
}

std::optional<PauliString> Factory::l2_zero() {
    return retry_product(ctx_, [&] { return l2_zero_attempt(); });
}

std::optional<PauliString> Factory::l4_plus() {
    return retry_product(ctx_, [&]() -> Attempt {
        Attempt a;
        auto base = l2_plus();
        if (!base) return a;
        a.frame = *base;
        if (!box4z(a.frame)) return a;
        if (!box4x(a.frame)) return a;
        a.accepted = true;
        return a;
    });
}

namespace {

std::pair<PauliString, VerificationOutcome> prepare_level2(const NoiseParams& noise,
                                                           RandomSource& rs, bool plus) {
    ExecContext ctx(noise, rs);
    ctx.single_attempt = true;
    Factory f(ctx);
    Factory::Attempt a = plus ? f.l2_plus_attempt() : f.l2_zero_attempt();
    VerificationOutcome v;
    v.accepted = a.accepted;
    v.consumed_qubits = ctx.consumed.preps;
    v.consumed_gates = ctx.consumed.gates + ctx.consumed.meas;
    if (a.frame.num_qubits() == 0) a.frame = PauliString(kN);
    return {a.frame, v};
}

}  // namespace

std::pair<PauliString, VerificationOutcome> prepare_level2_plus(const NoiseParams& noise,
                                                                RandomSource& rs) {
    return prepare_level2(noise, rs, true);
}

std::pair<PauliString, VerificationOutcome> prepare_level2_zero(const NoiseParams& noise,
                                                                RandomSource& rs) {
    return prepare_level2(noise, rs, false);
}

}  // namespace vcsim
