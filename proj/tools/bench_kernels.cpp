// Compares the OpenMP transform kernels against the serial reference on a
// few grid sizes and reports wall times plus the worst relative deviation.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "besselab/fft.hpp"

using namespace besselab;

namespace {

Field random_field(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field u;
    u.grid = grid;
    u.domain = Domain::Physical;
    u.values.resize(grid.size());
    for (Complex& v : u.values) v = Complex(gauss(rng), gauss(rng));
    return u;
}

template <class F>
double time_best_of(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best,
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void bench_case(int n, std::size_t N, int reps) {
    const GridSpec grid = make_grid(n, 8.0, N);
    const Field u = random_field(grid, 42);
    Field vp, vs;
    const double t_par = time_best_of(reps, [&] { vp = dft(u); });
    const double t_ser = time_best_of(reps, [&] { vs = serial::dft(u); });
    double max_rel = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < vp.values.size(); ++k)
        scale = std::max(scale, std::abs(vp.values[k]));
    for (std::size_t k = 0; k < vp.values.size(); ++k)
        max_rel = std::max(max_rel, std::abs(vp.values[k] - vs.values[k]) / scale);
    std::printf("dft  n=%d N=%-6zu  parallel %8.3f ms  serial %8.3f ms  speedup %5.2fx  "
                "max rel dev %.2e\n",
                n, N, 1e3 * t_par, 1e3 * t_ser, t_ser / t_par, max_rel);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    bench_case(1, 4096, 5);
    bench_case(1, 65536, 3);
    bench_case(2, 256, 3);
    bench_case(2, 512, 3);
    bench_case(3, 32, 3);
    bench_case(3, 64, 3);
    return 0;
}
