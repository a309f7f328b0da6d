// Times the parallel kernel paths against their serial reference on a dense
// table metric, verifying along the way that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coarsekit/components.hpp"
#include "coarsekit/disjointness.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/point_set.hpp"
#include "coarsekit/space.hpp"

using namespace coarsekit;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Dense table metric: rounded l1 distances of a random planar cloud. Tables
// take the generic pair-scan kernels, which is where the backends differ.
SpacePtr cloud_table(int n, unsigned seed) {
    std::mt19937 g(seed);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = u(g);
        ys[i] = u(g);
    }
    std::vector<std::string> labels(n);
    std::vector<double> d(std::size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        labels[i] = "p" + std::to_string(i);
        for (int j = 0; j < n; ++j)
            d[std::size_t(i) * n + j] =
                std::round(std::abs(xs[i] - xs[j]) + std::abs(ys[i] - ys[j]));
    }
    return make_table(labels, d);
}

struct Row {
    const char* name;
    double serial_ms;
    double parallel_ms;
    bool match;
};

}  // namespace

int main(int argc, char** argv) {
    int n = 2000, reps = 3;
    unsigned seed = 2026;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--points") == 0) n = std::atoi(argv[i + 1]);
        if (std::strcmp(argv[i], "--reps") == 0) reps = std::atoi(argv[i + 1]);
        if (std::strcmp(argv[i], "--seed") == 0)
            seed = unsigned(std::atoi(argv[i + 1]));
    }
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not compiled in (both columns run serially)\n");
#endif
    std::printf("table space: %d points, %d reps per row\n\n", n, reps);

    SpacePtr X = cloud_table(n, seed);
    std::mt19937 g(seed);
    PointSet src(n);
    for (int i = 0; i < n; ++i)
        if (g() % 4 == 0) src.set(i);

    std::vector<Row> rows;

    {
        PointSet a(n), b(n);
        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) ball_into_generic_serial(*X, src, 12.0, a);
        double ts = ms_since(t0) / reps;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r)
            ball_into_generic_parallel(*X, src, 12.0, b);
        rows.push_back({"ball (pair scan)", ts, ms_since(t0) / reps, a == b});
    }

    {
        double ds = 0, dp = 0;
        auto t0 = Clock::now();
        for (int r = 0; r < reps; ++r) ds = set_diameter_generic_serial(*X, src);
        double ts = ms_since(t0) / reps;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r)
            dp = set_diameter_generic_parallel(*X, src);
        rows.push_back({"diameter (pair scan)", ts, ms_since(t0) / reps,
                        ds == dp});
    }

    {
        auto t0 = Clock::now();
        std::vector<std::int32_t> ls, lp;
        for (int r = 0; r < reps; ++r)
            ls = chain_levels(*X, src, 6.0, nullptr, nullptr, Exec::Serial);
        double ts = ms_since(t0) / reps;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r)
            lp = chain_levels(*X, src, 6.0, nullptr, nullptr, Exec::Parallel);
        rows.push_back({"chain levels", ts, ms_since(t0) / reps, ls == lp});
    }

    {
        auto t0 = Clock::now();
        ExtReal ns, np;
        for (int r = 0; r < reps; ++r)
            ns = components_norm(X, src, 6.0, Exec::Serial);
        double ts = ms_since(t0) / reps;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r)
            np = components_norm(X, src, 6.0, Exec::Parallel);
        rows.push_back({"components norm", ts, ms_since(t0) / reps, ns == np});
    }

    {
        SubsetArray A(X, IndexSet::numbered(6));
        for (int i = 0; i < n; ++i) A.entry(int(g() % 6)).set(i);
        auto t0 = Clock::now();
        bool s = false, p = false;
        for (int r = 0; r < reps; ++r)
            s = array_scale_disjoint(A, 3.0, Exec::Serial);
        double ts = ms_since(t0) / reps;
        t0 = Clock::now();
        for (int r = 0; r < reps; ++r)
            p = array_scale_disjoint(A, 3.0, Exec::Parallel);
        rows.push_back({"array disjointness", ts, ms_since(t0) / reps, s == p});
    }

    std::printf("%-22s %12s %12s %9s %7s\n", "kernel", "serial ms",
                "parallel ms", "speedup", "match");
    bool all_match = true;
    for (const auto& r : rows) {
        std::printf("%-22s %12.2f %12.2f %8.2fx %7s\n", r.name, r.serial_ms,
                    r.parallel_ms,
                    r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0,
                    r.match ? "yes" : "NO");
        all_match = all_match && r.match;
    }
    return all_match ? 0 : 1;
}
