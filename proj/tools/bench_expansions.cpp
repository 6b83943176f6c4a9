// Timing comparison of the serial reference kernels against the OpenMP
// batch kernels: expansion summation over a z grid and characteristic-root
// sweeps across parameter sets.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heun/batch.hpp"
#include "heun/verify.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int grid_points = argc > 1 ? std::atoi(argv[1]) : 256;
    int sweep_sets = argc > 2 ? std::atoi(argv[2]) : 64;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled (serial build)\n");
#endif

    // two-term fixture, infinite expansion: the heavy per-point path
    heun::HeunParams p = heun::make_params(0.5, 0.475, 0.5, 1.5, 1.2, 1.0);
    heun::Expansion e = heun::two_term_coefficients(p, 4096);
    std::vector<double> zs(grid_points);
    for (int i = 0; i < grid_points; ++i) zs[i] = 0.9 * (i + 0.5) / grid_points;

    double t_serial = time_best_of(3, [&] {
        auto v = heun::batch::sum_expansion_grid_serial(p, e, zs, 1e-10);
        (void)v;
    });
    double t_omp = time_best_of(3, [&] {
        auto v = heun::batch::sum_expansion_grid(p, e, zs, 1e-10);
        (void)v;
    });
    std::printf("sum_expansion_grid  %4d points   serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                grid_points, 1e3 * t_serial, 1e3 * t_omp, t_serial / t_omp);

    // root sweeps across independent termination instances
    heun::verify::Rng rng(2024);
    std::vector<heun::HeunParams> ps;
    std::vector<heun::TerminationCase> cases;
    while (static_cast<int>(ps.size()) < sweep_sets) {
        heun::HeunParams pp;
        heun::TerminationCase tc;
        if (heun::verify::sample_terminating_instance(rng, pp, tc)) {
            tc.N += 8;  // larger polynomials make the sweep worth timing
            ps.push_back(pp);
            cases.push_back(tc);
        }
    }
    double r_serial = time_best_of(3, [&] {
        auto v = heun::batch::q_roots_sweep_serial(ps, cases);
        (void)v;
    });
    double r_omp = time_best_of(3, [&] {
        auto v = heun::batch::q_roots_sweep(ps, cases);
        (void)v;
    });
    std::printf("q_roots_sweep       %4d sets     serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
                sweep_sets, 1e3 * r_serial, 1e3 * r_omp, r_serial / r_omp);
    return 0;
}
