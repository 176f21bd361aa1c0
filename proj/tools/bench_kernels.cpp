// Timings for the OpenMP kernels against their serial references.
//
// Usage: bench_kernels [n_repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "fracgs/analysis.hpp"
#include "fracgs/random_fields.hpp"
#include "fracgs/spectral.hpp"

using namespace fracgs;

namespace {

template <typename Fn>
double time_ms(Fn&& fn, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %8s %12s %12s %9s\n", "kernel", "n", "serial_ms", "omp_ms", "speedup");

    for (int n : {1024, 2048, 4096}) {
        const GridPtr g = make_grid(16.0, n);
        std::mt19937_64 rng(42);
        const Field f = random_smooth_field(g, rng, 8.0);

        volatile double sink = 0.0;
        const double t_serial =
            time_ms([&] { sink = gagliardo_seminorm_sq_serial(f); }, repeats);
        const double t_omp = time_ms([&] { sink = gagliardo_seminorm_sq(f); }, repeats);
        std::printf("%-34s %8d %12.3f %12.3f %8.2fx\n", "gagliardo_seminorm_sq", n, t_serial,
                    t_omp, t_serial / t_omp);

        const StatePair s{f, f};
        const double tv_serial =
            time_ms([&] { sink = vanishing_diagnostic_serial(s, 1.0); }, repeats);
        const double tv_omp = time_ms([&] { sink = vanishing_diagnostic(s, 1.0); }, repeats);
        std::printf("%-34s %8d %12.3f %12.3f %8.2fx\n", "vanishing_diagnostic", n, tv_serial,
                    tv_omp, tv_serial / tv_omp);

        Field out;
        const double td_direct =
            time_ms([&] { out = frac_laplacian_direct(f, 0.5); }, repeats);
        const double td_fft = time_ms([&] { out = frac_laplacian(f, 0.5); }, repeats);
        std::printf("%-34s %8d %12.3f %12.3f %8.2fx\n", "frac_laplacian (direct vs fft)", n,
                    td_direct, td_fft, td_direct / td_fft);
        (void)sink;
    }
    return 0;
}
