// Compares the OpenMP kernels against their serial reference paths: the
// Monte Carlo ensemble engine and the correlation-grid driver.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "lattice/correlations.hpp"
#include "lattice/dynamics.hpp"

using namespace lattice;

namespace {

template <typename F>
double timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    const ChainModel nn = preset_nn();
    const int threads = omp_get_max_threads();
    std::printf("max worker threads: %d\n\n", threads);

    {
        EnsembleSpec spec;
        spec.replicas = 2000;
        spec.seed = 7;
        spec.n = 257;
        spec.beta = 1.0;
        spec.dt = 0.02;
        for (long long j = -32; j <= 32; ++j) spec.observables.push_back({1, 1, j, 8.0});
        NonlinearModel model{nn, 0.05, 0.01};
        CorrelationDataset serial, parallel;
        const double ts = timed([&] { serial = mc_correlations_reference(spec, model); });
        const double tp = timed([&] { parallel = mc_correlations(spec, model); });
        double max_diff = 0.0;
        for (size_t i = 0; i < serial.entries.size(); ++i)
            max_diff = std::max(max_diff, std::abs(serial.entries[i].value -
                                                   parallel.entries[i].value));
        std::printf("mc_correlations  (2000 replicas, N=257, t=8, nonlinear)\n");
        std::printf("  serial reference: %8.3f s\n", ts);
        std::printf("  OpenMP engine:    %8.3f s  (speedup %.2fx, max |diff| = %g)\n\n",
                    tp, ts / tp, max_diff);
    }

    {
        const std::vector<double> t_list{40.0, 80.0};
        CorrelationDataset serial, parallel;
        const double ts = timed([&] {
            serial = correlation_field_reference(1, 1, 0, 120, t_list, nn, 1.0,
                                                 CorrelationMethod::exact);
        });
        const double tp = timed([&] {
            parallel = correlation_field(1, 1, 0, 120, t_list, nn, 1.0,
                                         CorrelationMethod::exact);
        });
        double max_diff = 0.0;
        for (size_t i = 0; i < serial.entries.size(); ++i)
            max_diff = std::max(max_diff, std::abs(serial.entries[i].value -
                                                   parallel.entries[i].value));
        std::printf("correlation_field (S11, j=0..120, t={40,80}, quadrature)\n");
        std::printf("  serial reference: %8.3f s\n", ts);
        std::printf("  OpenMP engine:    %8.3f s  (speedup %.2fx, max |diff| = %g)\n",
                    tp, ts / tp, max_diff);
    }
    return 0;
}
