#include "vcsim/frame.hpp"

#include <cmath>
#include <complex>
#include <mutex>

namespace vcsim {

namespace {

// One-qubit symplectic rules, phaseless: (x,z) -> (x',z').
inline void conj1(GateKind k, bool& x, bool& z) {
    switch (k) {
        case GateKind::H: std::swap(x, z); break;
        case GateKind::S:
        case GateKind::Sdg: z = z ^ x; break;
        case GateKind::X:
        case GateKind::Z: break;  // phase only
        default: break;
    }
}

}  // namespace

void conjugate_inplace(const CliffordGate& gate, PauliString& p) {
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::X:
        case GateKind::Z: {
            bool x = p.x_bit(gate.q0), z = p.z_bit(gate.q0);
            conj1(gate.kind, x, z);
            p.set_x(gate.q0, x);
            p.set_z(gate.q0, z);
            break;
        }
        case GateKind::CZ: {
            // X_a -> X_a Z_b and symmetrically.
            if (p.x_bit(gate.q0)) p.flip_z(gate.q1);
            if (p.x_bit(gate.q1)) p.flip_z(gate.q0);
            break;
        }
        case GateKind::CNOT: {
            // X_c -> X_c X_t, Z_t -> Z_c Z_t.
            if (p.x_bit(gate.q0)) p.flip_x(gate.q1);
            if (p.z_bit(gate.q1)) p.flip_z(gate.q0);
            break;
        }
        case GateKind::CH:
            throw std::invalid_argument("conjugate: CH is not Clifford, use ch_twirl");
    }
}

PauliString conjugate(const CliffordGate& gate, const PauliString& p) {
    PauliString out = p;
    conjugate_inplace(gate, out);
    return out;
}

uint8_t pauli2_index(const PauliString& p, int q0, int q1) {
    return static_cast<uint8_t>(p.x_bit(q0) | (p.z_bit(q0) << 1) | (p.x_bit(q1) << 2) |
                                (p.z_bit(q1) << 3));
}

void apply_pauli2_index(PauliString& p, int q0, int q1, uint8_t idx) {
    p.set_x(q0, idx & 1);
    p.set_z(q0, (idx >> 1) & 1);
    p.set_x(q1, (idx >> 2) & 1);
    p.set_z(q1, (idx >> 3) & 1);
}

namespace {

using C = std::complex<double>;
using Mat4 = std::array<C, 16>;

Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            C aik = a[i * 4 + k];
            if (aik == C{}) continue;
            for (int j = 0; j < 4; ++j) r[i * 4 + j] += aik * b[k * 4 + j];
        }
    return r;
}

Mat4 dagger(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i * 4 + j] = std::conj(a[j * 4 + i]);
    return r;
}

// Tensor of one-qubit Paulis for index (x0|z0<<1|x1<<2|z1<<3); qubit 0 is
// the high tensor factor slot here so that basis state |q0 q1> = |q0>|q1>.
Mat4 pauli2_matrix(uint8_t idx) {
    auto one = [](bool x, bool z) -> std::array<C, 4> {
        // X^x Z^z up to a phase that squares away in |coeff|^2.
        if (!x && !z) return {1, 0, 0, 1};
        if (x && !z) return {0, 1, 1, 0};
        if (!x && z) return {1, 0, 0, -1};
        return {0, C(0, -1), C(0, 1), 0};  // Y
    };
    auto a = one(idx & 1, (idx >> 1) & 1);
    auto b = one((idx >> 2) & 1, (idx >> 3) & 1);
    Mat4 r{};
    for (int i0 = 0; i0 < 2; ++i0)
        for (int j0 = 0; j0 < 2; ++j0)
            for (int i1 = 0; i1 < 2; ++i1)
                for (int j1 = 0; j1 < 2; ++j1)
                    r[(i0 * 2 + i1) * 4 + (j0 * 2 + j1)] = a[i0 * 2 + j0] * b[i1 * 2 + j1];
    return r;
}

Mat4 ch_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4 m{};
    m[0 * 4 + 0] = 1;
    m[1 * 4 + 1] = 1;
    m[2 * 4 + 2] = s;
    m[2 * 4 + 3] = s;
    m[3 * 4 + 2] = s;
    m[3 * 4 + 3] = -s;
    return m;
}

std::array<std::vector<ChTwirlEntry>, 16> build_ch_table() {
    std::array<std::vector<ChTwirlEntry>, 16> table;
    Mat4 ch = ch_matrix();
    Mat4 chd = dagger(ch);
    for (uint8_t in = 0; in < 16; ++in) {
        Mat4 conj = mul(mul(ch, pauli2_matrix(in)), chd);
        for (uint8_t out = 0; out < 16; ++out) {
            // Hilbert-Schmidt coefficient <P_out, conj>/4.
            Mat4 pd = dagger(pauli2_matrix(out));
            C tr{};
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) tr += pd[i * 4 + k] * conj[k * 4 + i];
            double p = std::norm(tr / 4.0);
            if (p > 1e-12) table[in].push_back({out, p});
        }
    }
    return table;
}

}  // namespace

const std::vector<ChTwirlEntry>& ch_expansion(uint8_t pauli_index) {
    static const auto table = build_ch_table();
    return table[pauli_index & 15];
}

void ch_twirl_inplace(PauliString& frame, int control, int target, RandomSource& rs) {
    uint8_t in = pauli2_index(frame, control, target);
    if (in == 0) return;
    const auto& exp = ch_expansion(in);
    if (exp.size() == 1) {
        apply_pauli2_index(frame, control, target, exp[0].out);
        return;
    }
    std::vector<double> w(exp.size());
    for (size_t i = 0; i < exp.size(); ++i) w[i] = exp[i].prob;
    apply_pauli2_index(frame, control, target, exp[rs.choice(w)].out);
}

void propagate_frame(const Circuit& circuit, PauliFrame& frame, FaultProvider& faults,
                     RandomSource& rs, size_t begin, size_t end) {
    if (frame.pauli.num_qubits() != circuit.num_qubits())
        throw std::invalid_argument("propagate_frame: frame dimension mismatch");
    const auto& locs = circuit.locations();
    if (frame.flipped.size() < static_cast<size_t>(circuit.num_registers()))
        frame.flipped.resize(circuit.num_registers(), 0);
    end = std::min(end, locs.size());
    for (size_t i = begin; i < end; ++i) {
        const Location& loc = locs[i];
        switch (loc.op) {
            case Location::Op::Gate:
                if (loc.gate.kind == GateKind::CH)
                    ch_twirl_inplace(frame.pauli, loc.gate.q0, loc.gate.q1, rs);
                else
                    conjugate_inplace(loc.gate, frame.pauli);
                break;
            case Location::Op::Prep:
                frame.pauli.set_x(loc.qubit, false);
                frame.pauli.set_z(loc.qubit, false);
                break;
            case Location::Op::Measure: {
                bool anti = loc.basis == Basis::Z ? frame.pauli.x_bit(loc.qubit)
                                                  : frame.pauli.z_bit(loc.qubit);
                frame.flipped[loc.register_id] = anti;
                break;
            }
            case Location::Op::Wait:
                break;
        }
        if (auto f = faults.fault_at(loc)) {
            if (f->pauli.num_qubits() != 0) frame.pauli.compose_inplace_padded(f->pauli);
            if (f->flip) {
                if (loc.op == Location::Op::Measure) {
                    frame.flipped[loc.register_id] ^= 1;
                } else if (loc.op == Location::Op::Prep) {
                    // Flipped preparation: an X error on a Z-basis prep, Z on X-basis.
                    if (loc.basis == Basis::Z)
                        frame.pauli.flip_x(loc.qubit);
                    else
                        frame.pauli.flip_z(loc.qubit);
                }
            }
        }
    }
}

PauliFrame propagate_frame(const Circuit& circuit, const PauliFrame& start,
                           const std::unordered_map<int, Fault>& injected, RandomSource& rs) {
    PauliFrame frame = start;
    if (frame.pauli.num_qubits() == 0) frame = PauliFrame(circuit.num_qubits());
    MapFaults provider(injected);
    propagate_frame(circuit, frame, provider, rs);
    return frame;
}

}  // namespace vcsim
