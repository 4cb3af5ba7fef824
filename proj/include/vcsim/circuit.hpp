#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vcsim {

enum class GateKind : uint8_t { H, S, Sdg, X, Z, CZ, CNOT, CH };

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CZ || k == GateKind::CNOT || k == GateKind::CH;
}

// CH is the one non-Clifford member; frames go through it via ch_twirl.
inline bool is_clifford(GateKind k) { return k != GateKind::CH; }

struct CliffordGate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;  // -1 for one-qubit kinds

    bool two_qubit() const { return is_two_qubit(kind); }
};

enum class Basis : uint8_t { Z, X };

struct Location {
    enum class Op : uint8_t { Gate, Prep, Measure, Wait };

    Op op;
    CliffordGate gate{};       // Gate
    int qubit = -1;            // Prep/Measure/Wait
    Basis basis = Basis::Z;    // Prep/Measure
    int register_id = -1;      // Measure
    int site_id = -1;          // unique fault-injection handle
    int time_step = -1;
};

/// Time-ordered list of fault sites over n qubits.  Every add_* call appends
/// one location, assigns a fresh site_id and an ASAP time step (so a qubit
/// never has two locations in the same step).
class Circuit {
  public:
    explicit Circuit(int n) : n_(n), next_free_(n, 0) {}

    int num_qubits() const { return n_; }
    int num_registers() const { return next_register_; }
    const std::vector<Location>& locations() const { return locs_; }
    int num_time_steps() const { return max_time_; }

    int add_gate(GateKind kind, int q0, int q1 = -1) {
        if (is_two_qubit(kind)) {
            check_qubit(q1);
            if (q0 == q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
        } else if (q1 != -1) {
            throw std::invalid_argument("one-qubit gate with two qubits");
        }
        check_qubit(q0);
        Location loc;
        loc.op = Location::Op::Gate;
        loc.gate = CliffordGate{kind, q0, q1};
        return push(loc);
    }

    int add_prep(int q, Basis basis) {
        check_qubit(q);
        Location loc;
        loc.op = Location::Op::Prep;
        loc.qubit = q;
        loc.basis = basis;
        return push(loc);
    }

    int add_measure(int q, Basis basis) {
        check_qubit(q);
        Location loc;
        loc.op = Location::Op::Measure;
        loc.qubit = q;
        loc.basis = basis;
        loc.register_id = next_register_++;
        return push(loc);
    }

    int add_wait(int q) {
        check_qubit(q);
        Location loc;
        loc.op = Location::Op::Wait;
        loc.qubit = q;
        return push(loc);
    }

    struct Counts {
        uint64_t preps = 0, gates = 0, meas = 0;
        uint64_t total() const { return preps + gates + meas; }
    };

    Counts counts(size_t begin = 0, size_t end = SIZE_MAX) const {
        Counts c;
        end = std::min(end, locs_.size());
        for (size_t i = begin; i < end; ++i) {
            switch (locs_[i].op) {
                case Location::Op::Prep: ++c.preps; break;
                case Location::Op::Gate: ++c.gates; break;
                case Location::Op::Measure: ++c.meas; break;
                case Location::Op::Wait: break;
            }
        }
        return c;
    }

  private:
    void check_qubit(int q) const {
        if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
    }

    int push(Location loc) {
        loc.site_id = static_cast<int>(locs_.size());
        int t = 0;
        if (loc.op == Location::Op::Gate && loc.gate.two_qubit()) {
            t = std::max(next_free_[loc.gate.q0], next_free_[loc.gate.q1]);
            next_free_[loc.gate.q0] = next_free_[loc.gate.q1] = t + 1;
        } else {
            int q = loc.op == Location::Op::Gate ? loc.gate.q0 : loc.qubit;
            t = next_free_[q];
            next_free_[q] = t + 1;
        }
        loc.time_step = t;
        max_time_ = std::max(max_time_, t + 1);
        locs_.push_back(loc);
        return loc.site_id;
    }

    int n_;
    std::vector<Location> locs_;
    std::vector<int> next_free_;
    int next_register_ = 0;
    int max_time_ = 0;
};

}  // namespace vcsim
