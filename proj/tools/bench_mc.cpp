// Times the Monte Carlo harness serial vs OpenMP at several worker counts
// and checks that every run produces identical summaries.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ingsub/mc.hpp"
#include "ingsub/model.hpp"

using namespace ingsub;

namespace {

mc::McConfig bench_config(std::size_t replications) {
    mc::McConfig cfg;
    cfg.params = ModelParams::ting(0.6, 0.5);
    cfg.t = 1.0;
    cfg.sample_size = 400;
    cfg.replications = replications;
    cfg.estimator.type = est::Estimator::MomTInG;
    cfg.seed = 42;
    return cfg;
}

bool same_rows(const mc::McSummary& a, const mc::McSummary& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (std::memcmp(&a.rows[i].mean, &b.rows[i].mean, sizeof(double)) != 0 ||
            std::memcmp(&a.rows[i].mad, &b.rows[i].mad, sizeof(double)) != 0 ||
            std::memcmp(&a.rows[i].mse, &b.rows[i].mse, sizeof(double)) != 0)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t replications = 400;
    if (argc > 1) replications = static_cast<std::size_t>(std::atoll(argv[1]));

    const mc::McConfig cfg = bench_config(replications);
    std::printf("tempered-family MoM, %zu replications x %zu paths\n\n",
                cfg.replications, cfg.sample_size);

    const mc::McSummary serial = mc::run_mc(cfg, mc::Exec::Serial);
    std::printf("%-12s %8.3f s\n", "serial", serial.wall_seconds);

#ifdef _OPENMP
    for (int threads : {1, 2, 4, 8}) {
        omp_set_num_threads(threads);
        const mc::McSummary par = mc::run_mc(cfg, mc::Exec::OpenMP);
        const bool ok = same_rows(serial, par);
        std::printf("omp x%-2d      %8.3f s   speedup %5.2f   %s\n", threads,
                    par.wall_seconds, serial.wall_seconds / par.wall_seconds,
                    ok ? "bit-identical" : "MISMATCH");
        if (!ok) return 1;
    }
#else
    std::printf("built without OpenMP; nothing to compare\n");
#endif
    return 0;
}
