// Times the OpenMP extension-search grid scan against the serial reference
// on a 3-dimensional l_inf instance and checks they return the same point.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#include <omp.h>

#include "eq/norms.hpp"
#include "eq/verify.hpp"

namespace {

template <typename F>
double time_best_of(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int resolution = argc > 1 ? std::atoi(argv[1]) : 64;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;

    eq::NormSpec norm = eq::NormSpec::weighted_linf({1.0, 1.0, 1.0});
    std::vector<eq::Vector> simplex = {
        {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};

    std::optional<eq::Vector> serial_result, parallel_result;
    double t_serial = time_best_of(reps, [&] {
        serial_result = eq::extension_search_serial(simplex, norm, 2.0, resolution, 1e-9);
    });
    double t_parallel = time_best_of(reps, [&] {
        parallel_result = eq::extension_search(simplex, norm, 2.0, resolution, 1e-9);
    });

    bool same = serial_result.has_value() == parallel_result.has_value();
    if (same && serial_result) {
        for (std::size_t k = 0; k < serial_result->size(); ++k)
            same = same && (*serial_result)[k] == (*parallel_result)[k];
    }

    std::printf("grid %d^3, %d threads\n", resolution, omp_get_max_threads());
    std::printf("serial:   %.4f s\n", t_serial);
    std::printf("parallel: %.4f s\n", t_parallel);
    std::printf("speedup:  %.2fx\n", t_serial / t_parallel);
    std::printf("results identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
