// Throughput comparison of the serial reference runner against the OpenMP
// runner, and a check that they aggregate to identical counts.

#include <chrono>
#include <cstdio>

#include "vcsim/montecarlo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    double pe = argc > 2 ? std::strtod(argv[2], nullptr) : 0.01;

    vcsim::ScenarioSpec spec;
    spec.scase = vcsim::ScenarioCase::III;
    vcsim::NoiseParams noise;
    noise.p_e = pe;

    std::printf("scenario (iii), p_e=%g, %llu trials\n", pe,
                static_cast<unsigned long long>(trials));

    auto t0 = Clock::now();
    auto serial = vcsim::run_batch_serial(spec, noise, 7, 0, trials);
    auto t1 = Clock::now();
    double serial_s = std::chrono::duration<double>(t1 - t0).count();
    std::printf("serial   : %8.3f s  (%.0f trials/s)  errors=%llu\n", serial_s,
                trials / serial_s, static_cast<unsigned long long>(serial.errors));

#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    for (int threads : {2, 4, max_threads}) {
        if (threads <= 1) continue;
        auto t2 = Clock::now();
        auto par = vcsim::run_batch(spec, noise, 7, 0, trials, threads);
        auto t3 = Clock::now();
        double par_s = std::chrono::duration<double>(t3 - t2).count();
        bool same = par.trials == serial.trials && par.accepted == serial.accepted &&
                    par.errors == serial.errors && par.consumed == serial.consumed;
        std::printf("%2d threads: %8.3f s  (%.0f trials/s)  speedup %.2fx  %s\n", threads, par_s,
                    trials / par_s, serial_s / par_s, same ? "matches serial" : "MISMATCH");
        if (!same) return 1;
        if (threads == max_threads) break;
    }
    return 0;
}
