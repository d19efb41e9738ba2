// Timing comparison between the OpenMP kernels and their serial reference
// drivers. Also cross-checks that both produce identical bytes.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tailclust/reference.hpp"
#include "tailclust/transform.hpp"

using namespace tailclust;

namespace {

template <typename F>
double time_best_of(F&& body, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

bool same_matrix(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data().data(), b.data().data(),
                       a.data().size() * sizeof(double)) == 0;
}

void report(const char* kernel, double serial, double parallel, bool identical) {
    std::printf("%-24s %10.3f ms %10.3f ms %8.2fx   %s\n", kernel, serial * 1e3, parallel * 1e3,
                serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    Rng rng(derive_stream(42, "bench.model", 0));
    const MaxLinearModel model = random_model(Constellation::d10k6, rng);

    // simulate: 200k rows, d=10, k=6
    {
        ObservationMatrix serial_out = ref::simulate(model, 1, 7);
        ObservationMatrix parallel_out = serial_out;
        const double t_serial =
            time_best_of([&] { serial_out = ref::simulate(model, 200000, 7); });
        const double t_parallel = time_best_of([&] { parallel_out = simulate(model, 200000, 7); });
        report("simulate", t_serial, t_parallel, same_matrix(serial_out.data, parallel_out.data));
    }

    // rank_transform: 200k x 10
    const ObservationMatrix big = simulate(model, 200000, 7);
    RankTransformResult ranked;
    {
        RankTransformResult serial_out, parallel_out;
        const double t_serial = time_best_of([&] { serial_out = ref::rank_transform(big); });
        const double t_parallel = time_best_of([&] { parallel_out = rank_transform(big); });
        ranked = std::move(parallel_out);
        report("rank_transform", t_serial, t_parallel,
               same_matrix(serial_out.transformed, ranked.transformed));
    }

    // spherical_kmeans: 10k extremes, k=6, 32 restarts
    {
        const AngularSample sample = select_extremes(ranked.transformed, 0.05);
        KMeansConfig cfg;
        cfg.k = 6;
        cfg.restarts = 32;
        cfg.seed = 11;
        ClusterModel serial_out, parallel_out;
        const double t_serial =
            time_best_of([&] { serial_out = ref::spherical_kmeans(sample, cfg); }, 2);
        const double t_parallel =
            time_best_of([&] { parallel_out = spherical_kmeans(sample, cfg); }, 2);
        const bool identical = serial_out.objective == parallel_out.objective &&
                               serial_out.labels == parallel_out.labels &&
                               serial_out.centers == parallel_out.centers;
        report("spherical_kmeans", t_serial, t_parallel, identical);
    }
    return 0;
}
