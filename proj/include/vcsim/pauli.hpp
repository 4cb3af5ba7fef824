#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcsim {

/// Phaseless n-qubit Pauli in symplectic form: qubit q carries X iff
/// x bit q is set, Z iff z bit q is set, Y iff both.
class PauliString {
  public:
    PauliString() : n_(0) {}
    explicit PauliString(int n) : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

    int num_qubits() const { return n_; }

    bool x_bit(int q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(int q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
    void set_x(int q, bool v) { assign(x_, q, v); }
    void set_z(int q, bool v) { assign(z_, q, v); }
    void flip_x(int q) { x_[q >> 6] ^= 1ull << (q & 63); }
    void flip_z(int q) { z_[q >> 6] ^= 1ull << (q & 63); }

    bool is_identity() const {
        for (auto w : x_)
            if (w) return false;
        for (auto w : z_)
            if (w) return false;
        return true;
    }

    /// Number of qubits with any error component (Y counts once).
    int weight() const {
        int w = 0;
        for (size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
        return w;
    }

    void compose_inplace(const PauliString& other) {
        if (other.n_ != n_) throw std::invalid_argument("PauliString dimension mismatch");
        for (size_t i = 0; i < x_.size(); ++i) {
            x_[i] ^= other.x_[i];
            z_[i] ^= other.z_[i];
        }
    }

    /// Compose with a Pauli on a prefix of this register (other.n <= n).
    void compose_inplace_padded(const PauliString& other) {
        if (other.n_ > n_) throw std::invalid_argument("padded compose: operand too wide");
        for (size_t i = 0; i < other.x_.size(); ++i) {
            x_[i] ^= other.x_[i];
            z_[i] ^= other.z_[i];
        }
    }

    /// Copies `len` qubits of `src` starting at src_start into this at dst_start.
    void copy_range_from(const PauliString& src, int src_start, int len, int dst_start) {
        for (int i = 0; i < len; ++i) {
            set_x(dst_start + i, src.x_bit(src_start + i));
            set_z(dst_start + i, src.z_bit(src_start + i));
        }
    }

    PauliString extract_range(int start, int len) const {
        PauliString out(len);
        out.copy_range_from(*this, start, len, 0);
        return out;
    }

    /// Low 64 bits of the masks; enough for every block-level computation here.
    uint64_t x_word() const { return x_.empty() ? 0 : x_[0]; }
    uint64_t z_word() const { return z_.empty() ? 0 : z_[0]; }
    void set_x_word(uint64_t w) {
        if (!x_.empty()) x_[0] = w;
    }
    void set_z_word(uint64_t w) {
        if (!z_.empty()) z_[0] = w;
    }

    bool operator==(const PauliString& o) const { return n_ == o.n_ && x_ == o.x_ && z_ == o.z_; }

    std::string str() const {
        std::string s;
        s.reserve(n_);
        for (int q = 0; q < n_; ++q) {
            bool x = x_bit(q), z = z_bit(q);
            s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
        }
        return s;
    }

    static PauliString from_str(const std::string& s) {
        PauliString p(static_cast<int>(s.size()));
        for (size_t q = 0; q < s.size(); ++q) {
            switch (s[q]) {
                case 'I': break;
                case 'X': p.set_x(q, true); break;
                case 'Z': p.set_z(q, true); break;
                case 'Y': p.set_x(q, true); p.set_z(q, true); break;
                default: throw std::invalid_argument("bad Pauli char");
            }
        }
        return p;
    }

  private:
    static void assign(std::vector<uint64_t>& v, int q, bool b) {
        uint64_t mask = 1ull << (q & 63);
        if (b)
            v[q >> 6] |= mask;
        else
            v[q >> 6] &= ~mask;
    }

    int n_;
    std::vector<uint64_t> x_, z_;
};

/// XOR of symplectic masks; the global phase is discarded.
inline PauliString compose(const PauliString& a, const PauliString& b) {
    PauliString out = a;
    out.compose_inplace(b);
    return out;
}

inline int weight(const PauliString& p) { return p.weight(); }

inline bool anticommute(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("dimension mismatch");
    int acc = 0;
    for (int q = 0; q < a.num_qubits(); ++q) {
        acc ^= (a.x_bit(q) & b.z_bit(q)) ^ (a.z_bit(q) & b.x_bit(q));
    }
    return acc;
}

}  // namespace vcsim
