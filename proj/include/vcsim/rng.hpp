#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace vcsim {

// splitmix64 step; also used as the seed/stream mixer.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t s = a ^ (b * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull);
    return splitmix64(s);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

// Counter-based stream: one splitmix step per draw, so a trial's randomness
// depends only on its seed, never on thread scheduling.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}
    uint64_t next_u64() { return splitmix64(state_); }
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    uint64_t state_;
};

// Source of discrete choices for the stochastic pieces of a run (twirl
// outcomes, measurement coins).  Monte Carlo runs sample; exhaustive fault
// sweeps substitute an enumerator that walks every branch of nonzero weight.
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    // Picks an index with the given weights (need not be normalized).
    virtual size_t choice(std::span<const double> weights) = 0;
    virtual bool bernoulli(double p) = 0;
    // Uniform variate for fault sampling; enumerating sources reject it.
    virtual double uniform01() = 0;
};

class MonteCarloSource final : public RandomSource {
  public:
    explicit MonteCarloSource(uint64_t seed) : rng_(seed) {}

    size_t choice(std::span<const double> weights) override {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = rng_.uniform01() * total;
        double acc = 0.0;
        for (size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.size() - 1;
    }

    bool bernoulli(double p) override { return rng_.uniform01() < p; }
    double uniform01() override { return rng_.uniform01(); }

  private:
    Rng rng_;
};

// Depth-first enumerator over all branch combinations with nonzero weight.
// Usage: do { run(); } while (src.advance());
class EnumerationSource final : public RandomSource {
  public:
    size_t choice(std::span<const double> weights) override {
        if (depth_ < path_.size()) {
            return path_[depth_++].chosen;
        }
        Node node;
        for (size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] > 0.0) node.options.push_back(i);
        }
        if (node.options.empty()) throw std::logic_error("choice with all-zero weights");
        node.index = 0;
        node.chosen = node.options[0];
        path_.push_back(node);
        ++depth_;
        return node.chosen;
    }

    bool bernoulli(double p) override {
        double w[2] = {1.0 - p, p};
        return choice(w) == 1;
    }

    double uniform01() override {
        throw std::logic_error("EnumerationSource cannot produce uniform variates");
    }

    // Moves to the next unexplored branch combination; false when exhausted.
    bool advance() {
        while (!path_.empty()) {
            Node& last = path_.back();
            if (last.index + 1 < last.options.size()) {
                ++last.index;
                last.chosen = last.options[last.index];
                depth_ = 0;
                return true;
            }
            path_.pop_back();
        }
        depth_ = 0;
        return false;
    }

    void reset() {
        path_.clear();
        depth_ = 0;
    }

  private:
    struct Node {
        std::vector<size_t> options;
        size_t index = 0;
        size_t chosen = 0;
    };
    std::vector<Node> path_;
    size_t depth_ = 0;
};

}  // namespace vcsim
