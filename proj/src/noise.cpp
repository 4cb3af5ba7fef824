#include "vcsim/noise.hpp"

#include <stdexcept>

namespace vcsim {

void NoiseParams::validate() const {
    if (p_e < 0.0 || p_e >= 1.0) throw std::invalid_argument("p_e must be in [0,1)");
    if (p_m < 0.0 || p_m > p_e) throw std::invalid_argument("p_m must be in [0, p_e]");
    if (one_qubit_rate == OneQubitRate::kPerPauli4Pe5 && p_e >= 5.0 / 12.0)
        throw std::invalid_argument("literal 4p/5-per-Pauli rate needs p_e < 5/12");
}

FaultSiteClass site_class(const Location& loc) {
    switch (loc.op) {
        case Location::Op::Gate:
            return loc.gate.two_qubit() ? FaultSiteClass::TwoQubitGate
                                        : FaultSiteClass::OneQubitGate;
        case Location::Op::Prep: return FaultSiteClass::Prep;
        case Location::Op::Measure: return FaultSiteClass::Measure;
        case Location::Op::Wait: return FaultSiteClass::Wait;
    }
    throw std::logic_error("unreachable");
}

std::optional<SampledFault> sample_fault(FaultSiteClass cls, const NoiseParams& params,
                                         RandomSource& rs) {
    const double pe = params.p_e;
    switch (cls) {
        case FaultSiteClass::TwoQubitGate: {
            // p_e/15 for each of the 15 two-qubit Paulis.
            if (pe <= 0.0 || !rs.bernoulli(pe)) return std::nullopt;
            uint8_t idx = static_cast<uint8_t>(1 + rs.uniform01() * 15.0);
            if (idx > 15) idx = 15;
            return SampledFault{idx, false};
        }
        case FaultSiteClass::OneQubitGate: {
            double per_pauli = params.one_qubit_rate == OneQubitRate::kTotal4Pe5
                                   ? 4.0 * pe / 15.0
                                   : 4.0 * pe / 5.0;
            double total = 3.0 * per_pauli;
            if (total <= 0.0 || !rs.bernoulli(total)) return std::nullopt;
            double u = rs.uniform01() * 3.0;
            uint8_t idx = u < 1.0 ? 1 : (u < 2.0 ? 2 : 3);  // X, Z, Y
            return SampledFault{idx, false};
        }
        case FaultSiteClass::Prep:
        case FaultSiteClass::Measure: {
            double p = 4.0 * pe / 15.0;
            if (p <= 0.0 || !rs.bernoulli(p)) return std::nullopt;
            return SampledFault{0, true};
        }
        case FaultSiteClass::Wait: {
            if (!params.include_memory || params.p_m <= 0.0) return std::nullopt;
            if (!rs.bernoulli(params.p_m)) return std::nullopt;
            double u = rs.uniform01() * 3.0;
            uint8_t idx = u < 1.0 ? 1 : (u < 2.0 ? 2 : 3);
            return SampledFault{idx, false};
        }
    }
    return std::nullopt;
}

bool memory_budget_ok(int q, int m, const NoiseParams& params) {
    if (params.p_m <= 0.0) return true;
    double bound = params.p_e / params.p_m;
    return q < bound && m < bound;
}

Fault materialize_fault(const Location& loc, const SampledFault& sampled) {
    Fault f;
    if (sampled.flip) {
        f.flip = true;
        return f;
    }
    if (loc.op == Location::Op::Gate && loc.gate.two_qubit()) {
        PauliString fault(std::max(loc.gate.q0, loc.gate.q1) + 1);
        // Sampled index runs over the 15 nonidentity pairs in order; remap
        // past the identity slot.
        apply_pauli2_index(fault, loc.gate.q0, loc.gate.q1, sampled.pauli_index);
        f.pauli = fault;
    } else {
        int q = loc.op == Location::Op::Gate ? loc.gate.q0 : loc.qubit;
        PauliString fault(q + 1);
        fault.set_x(q, sampled.pauli_index & 1);
        fault.set_z(q, (sampled.pauli_index >> 1) & 1);
        f.pauli = fault;
    }
    return f;
}

std::optional<Fault> NoiseFaults::fault_at(const Location& loc) {
    auto sampled = sample_fault(site_class(loc), params_, rs_);
    if (!sampled) return std::nullopt;
    return materialize_fault(loc, *sampled);
}

}  // namespace vcsim
