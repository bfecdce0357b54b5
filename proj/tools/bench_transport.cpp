// Timing comparison of the parallel transport walk against the serial
// reference, asserting along the way that the two are bit-identical (the
// blocked reduction makes the result independent of scheduling).
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tempus/dispersion.hpp"

using namespace tempus;

namespace {

double time_run(bool serial, double L, double ell, double tau1, double tau2,
                std::uint64_t photons, std::uint64_t seed, TransportResult* out)
{
    const auto t0 = std::chrono::steady_clock::now();
    *out = transport_walk(L, ell, tau1, tau2, 1.0, photons, seed, serial);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main(int argc, char** argv)
{
    std::uint64_t photons = 1000000;
    if (argc > 1)
        photons = std::strtoull(argv[1], nullptr, 10);

    const double L = 100.0, ell = 2.0, tau1 = 1.0, tau2 = 0.3;
    const std::uint64_t seed = 20260822;

#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both runs are serial\n");
#endif
    std::printf("row: L=%g ell=%g tau1=%g tau2=%g photons=%llu\n", L, ell,
                tau1, tau2, static_cast<unsigned long long>(photons));

    TransportResult serial_r, parallel_r;
    // Warm-up pass so page faults and thread spin-up are off the clock.
    time_run(false, L, ell, tau1, tau2, photons / 10 + 1, seed, &parallel_r);

    const double t_serial =
        time_run(true, L, ell, tau1, tau2, photons, seed, &serial_r);
    const double t_parallel =
        time_run(false, L, ell, tau1, tau2, photons, seed, &parallel_r);

    std::printf("serial:   %8.3f s   mean=%.17g stderr=%.17g events=%.17g\n",
                t_serial, serial_r.mean_transit, serial_r.stderr_transit,
                serial_r.n_events_mean);
    std::printf("parallel: %8.3f s   mean=%.17g stderr=%.17g events=%.17g\n",
                t_parallel, parallel_r.mean_transit, parallel_r.stderr_transit,
                parallel_r.n_events_mean);

    const bool identical = serial_r.mean_transit == parallel_r.mean_transit &&
                           serial_r.stderr_transit == parallel_r.stderr_transit &&
                           serial_r.n_events_mean == parallel_r.n_events_mean &&
                           serial_r.samples == parallel_r.samples;
    if (!identical) {
        std::printf("MISMATCH: serial and parallel results differ\n");
        return 1;
    }
    std::printf("results bit-identical; speedup x%.2f\n",
                t_serial / t_parallel);
    return 0;
}
