#pragma once

#include <complex>
#include <vector>

#include "vcsim/circuit.hpp"
#include "vcsim/pauli.hpp"
#include "vcsim/rng.hpp"

namespace vcsim {

/// Exact dense-state simulator, test-side only (<= 16 qubits).  Basis index
/// bit q corresponds to qubit q.
class DenseState {
  public:
    using C = std::complex<double>;

    explicit DenseState(int n);

    int num_qubits() const { return n_; }
    const std::vector<C>& amplitudes() const { return amps_; }
    std::vector<C>& amplitudes() { return amps_; }

    void apply_gate(GateKind kind, int q0, int q1 = -1);
    /// Arbitrary one-qubit unitary, row-major 2x2.
    void apply_unitary1(int q, const std::array<C, 4>& u);
    void apply_pauli(const PauliString& p);
    /// diag(1, e^{i theta}) on qubit q.
    void z_rotation(int q, double theta);

    double norm2() const;
    void normalize();

    /// Probability of reading `outcome` when measuring qubit q in basis.
    double prob(int q, Basis basis, int outcome) const;
    /// Projects onto the outcome and renormalizes; throws on zero-norm branch.
    void project(int q, Basis basis, int outcome);
    int measure(int q, Basis basis, RandomSource& rs);

    /// Real part of <psi|P|psi>.
    double expectation(const PauliString& p) const;
    C inner(const DenseState& other) const;

    /// Runs every location; preps assume fresh qubits; measurement outcomes
    /// come from `rs`.
    void apply(const Circuit& circuit, RandomSource& rs, std::vector<int>* outcomes = nullptr);

  private:
    int n_;
    std::vector<C> amps_;
};

double fidelity(const DenseState& a, const DenseState& b);

struct PauliTerm {
    PauliString pauli;  // on the gate's 1 or 2 qubits
    std::complex<double> coeff;
};

/// Pauli-basis expansion of G P G† for a 1- or 2-qubit gate; squared
/// magnitudes sum to 1.  For CH this is the source feeding the twirl table.
std::vector<PauliTerm> conjugate_exact(GateKind kind, const PauliString& p);

}  // namespace vcsim
