#include "vcsim/resource.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vcsim {

void ResourceQuery::validate() const {
    if (K < 1 || Q < 1) throw std::invalid_argument("resource: K, Q must be >= 1");
    if (k < 1 || k > K || q < 1 || q > Q)
        throw std::invalid_argument("resource: need 1 <= k <= K and 1 <= q <= Q");
    if (p_v <= 0.0) throw std::invalid_argument("resource: p_v = 0 gives infinite resource");
    if (p_v > 1.0) throw std::invalid_argument("resource: p_v must be <= 1");
    if (N < 1.0) throw std::invalid_argument("resource: N must be >= 1");
    if (f <= 0.0) throw std::invalid_argument("resource: f must be positive");
}

double resource(const ResourceQuery& rq) {
    rq.validate();
    double kq = static_cast<double>(rq.k) * rq.q;
    return rq.N * (rq.f / std::pow(rq.p_v, kq)) * rq.K * rq.Q;
}

TrialsNeeded trials_needed(int k, int q, double p_v, double N) {
    if (p_v <= 0.0 || p_v > 1.0) throw std::invalid_argument("trials_needed: p_v in (0,1]");
    TrialsNeeded t;
    double raw = N / std::pow(p_v, static_cast<double>(k) * q);
    t.trials = static_cast<uint64_t>(std::ceil(raw - 1e-12));
    t.success_bound = 1.0 - std::exp(-N);
    return t;
}

namespace {
std::vector<int> divisors(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}
}  // namespace

SubclusterChoice optimize_subcluster(int K, int Q, double f, double p_v, double N) {
    SubclusterChoice best;
    for (int k : divisors(K)) {
        for (int q : divisors(Q)) {
            ResourceQuery rq{K, Q, k, q, f, p_v, N};
            double r = resource(rq);
            bool better = best.k == 0 || r < best.resource_value;
            if (!better && r == best.resource_value) {
                int kq = k * q, bkq = best.k * best.q;
                better = kq < bkq || (kq == bkq && k < best.k);
            }
            if (better) best = {k, q, r};
        }
    }
    return best;
}

}  // namespace vcsim
