#include "vcsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace vcsim {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
}

DenseState::DenseState(int n) : n_(n), amps_(size_t{1} << n) {
    if (n < 0 || n > 16) throw std::invalid_argument("DenseState supports up to 16 qubits");
    amps_[0] = 1.0;
}

void DenseState::apply_unitary1(int q, const std::array<C, 4>& u) {
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            C a0 = amps_[i], a1 = amps_[i + stride];
            amps_[i] = u[0] * a0 + u[1] * a1;
            amps_[i + stride] = u[2] * a0 + u[3] * a1;
        }
    }
}

void DenseState::apply_gate(GateKind kind, int q0, int q1) {
    using namespace std::complex_literals;
    switch (kind) {
        case GateKind::H:
            apply_unitary1(q0, {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf});
            return;
        case GateKind::S: apply_unitary1(q0, {1.0, 0.0, 0.0, 1i}); return;
        case GateKind::Sdg: apply_unitary1(q0, {1.0, 0.0, 0.0, -1i}); return;
        case GateKind::X: apply_unitary1(q0, {0.0, 1.0, 1.0, 0.0}); return;
        case GateKind::Z: apply_unitary1(q0, {1.0, 0.0, 0.0, -1.0}); return;
        case GateKind::CZ: {
            size_t m = (size_t{1} << q0) | (size_t{1} << q1);
            for (size_t i = 0; i < amps_.size(); ++i)
                if ((i & m) == m) amps_[i] = -amps_[i];
            return;
        }
        case GateKind::CNOT: {
            size_t c = size_t{1} << q0, t = size_t{1} << q1;
            for (size_t i = 0; i < amps_.size(); ++i)
                if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
            return;
        }
        case GateKind::CH: {
            size_t c = size_t{1} << q0, t = size_t{1} << q1;
            for (size_t i = 0; i < amps_.size(); ++i) {
                if ((i & c) && !(i & t)) {
                    C a0 = amps_[i], a1 = amps_[i | t];
                    amps_[i] = kSqrtHalf * (a0 + a1);
                    amps_[i | t] = kSqrtHalf * (a0 - a1);
                }
            }
            return;
        }
    }
}

void DenseState::apply_pauli(const PauliString& p) {
    using namespace std::complex_literals;
    for (int q = 0; q < p.num_qubits(); ++q) {
        bool x = p.x_bit(q), z = p.z_bit(q);
        if (x && z)
            apply_unitary1(q, {0.0, -1i, 1i, 0.0});
        else if (x)
            apply_gate(GateKind::X, q);
        else if (z)
            apply_gate(GateKind::Z, q);
    }
}

void DenseState::z_rotation(int q, double theta) {
    apply_unitary1(q, {1.0, 0.0, 0.0, std::polar(1.0, theta)});
}

double DenseState::norm2() const {
    double s = 0.0;
    for (const C& a : amps_) s += std::norm(a);
    return s;
}

void DenseState::normalize() {
    double s = std::sqrt(norm2());
    if (s < 1e-300) throw std::runtime_error("normalizing a zero state");
    for (C& a : amps_) a /= s;
}

double DenseState::prob(int q, Basis basis, int outcome) const {
    DenseState tmp = *this;
    if (basis == Basis::X) tmp.apply_gate(GateKind::H, q);
    const size_t bit = size_t{1} << q;
    double p = 0.0;
    for (size_t i = 0; i < tmp.amps_.size(); ++i) {
        if ((((i & bit) != 0) ? 1 : 0) == outcome) p += std::norm(tmp.amps_[i]);
    }
    return p;
}

void DenseState::project(int q, Basis basis, int outcome) {
    if (basis == Basis::X) apply_gate(GateKind::H, q);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); ++i) {
        if ((((i & bit) != 0) ? 1 : 0) != outcome) amps_[i] = 0.0;
    }
    if (basis == Basis::X) apply_gate(GateKind::H, q);
    normalize();
}

int DenseState::measure(int q, Basis basis, RandomSource& rs) {
    double p1 = prob(q, basis, 1);
    int outcome = rs.bernoulli(p1) ? 1 : 0;
    project(q, basis, outcome);
    return outcome;
}

double DenseState::expectation(const PauliString& p) const {
    DenseState tmp = *this;
    tmp.apply_pauli(p);
    return inner(tmp).real();
}

DenseState::C DenseState::inner(const DenseState& other) const {
    if (other.n_ != n_) throw std::invalid_argument("inner: dimension mismatch");
    C s = 0.0;
    for (size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

void DenseState::apply(const Circuit& circuit, RandomSource& rs, std::vector<int>* outcomes) {
    if (circuit.num_qubits() != n_) throw std::invalid_argument("apply: dimension mismatch");
    if (outcomes) outcomes->assign(circuit.num_registers(), -1);
    for (const Location& loc : circuit.locations()) {
        switch (loc.op) {
            case Location::Op::Gate: apply_gate(loc.gate.kind, loc.gate.q0, loc.gate.q1); break;
            case Location::Op::Prep:
                // Fresh-qubit preparation: |0> already, rotate for |+>.
                if (loc.basis == Basis::X) apply_gate(GateKind::H, loc.qubit);
                break;
            case Location::Op::Measure: {
                int o = measure(loc.qubit, loc.basis, rs);
                if (outcomes) (*outcomes)[loc.register_id] = o;
                break;
            }
            case Location::Op::Wait: break;
        }
    }
}

double fidelity(const DenseState& a, const DenseState& b) { return std::norm(a.inner(b)); }

std::vector<PauliTerm> conjugate_exact(GateKind kind, const PauliString& p) {
    const int nq = is_two_qubit(kind) ? 2 : 1;
    if (p.num_qubits() != nq) throw std::invalid_argument("conjugate_exact: pauli width");
    // Build G P G† column by column on basis states.
    const size_t dim = size_t{1} << nq;
    std::vector<std::vector<std::complex<double>>> m(dim, std::vector<std::complex<double>>(dim));
    for (size_t col = 0; col < dim; ++col) {
        DenseState s(nq);
        s.amplitudes().assign(dim, 0.0);
        s.amplitudes()[col] = 1.0;
        // G† = G for H/X/Z/CZ/CNOT/CH; S† handled explicitly.
        GateKind inv = kind == GateKind::S ? GateKind::Sdg
                       : kind == GateKind::Sdg ? GateKind::S
                                               : kind;
        if (nq == 2)
            s.apply_gate(inv, 0, 1);
        else
            s.apply_gate(inv, 0);
        s.apply_pauli(p);
        if (nq == 2)
            s.apply_gate(kind, 0, 1);
        else
            s.apply_gate(kind, 0);
        for (size_t row = 0; row < dim; ++row) m[row][col] = s.amplitudes()[row];
    }
    // Hilbert-Schmidt coefficients against each Pauli.
    std::vector<PauliTerm> terms;
    const int npaulis = nq == 1 ? 4 : 16;
    for (int idx = 0; idx < npaulis; ++idx) {
        PauliString q(nq);
        q.set_x(0, idx & 1);
        q.set_z(0, (idx >> 1) & 1);
        if (nq == 2) {
            q.set_x(1, (idx >> 2) & 1);
            q.set_z(1, (idx >> 3) & 1);
        }
        // tr(Q† M)/dim
        std::complex<double> tr = 0.0;
        for (size_t col = 0; col < dim; ++col) {
            DenseState s(nq);
            s.amplitudes().assign(dim, 0.0);
            s.amplitudes()[col] = 1.0;
            s.apply_pauli(q);
            for (size_t row = 0; row < dim; ++row)
                tr += std::conj(s.amplitudes()[row]) * m[row][col];
        }
        tr /= static_cast<double>(dim);
        if (std::abs(tr) > 1e-12) terms.push_back({q, tr});
    }
    return terms;
}

}  // namespace vcsim
