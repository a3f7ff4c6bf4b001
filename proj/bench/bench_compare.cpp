// Times the serial path against the OpenMP path on two representative
// workloads and verifies the results agree bit for bit, since the parallel
// map promises deterministic reductions.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "casimir/lifshitz.hpp"
#include "casimir/parallel.hpp"
#include "casimir/thermal.hpp"

using namespace casimir;

namespace {

double time_once(double& result, int threads, const std::function<double()>& f) {
    par::set_max_threads(threads);
    const auto t0 = std::chrono::steady_clock::now();
    result = f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int compare(const char* name, const std::function<double()>& f) {
    double serial_value = 0.0, parallel_value = 0.0;
    const double warm = time_once(parallel_value, 0, f);
    const double parallel_ms = time_once(parallel_value, 0, f);
    const double serial_ms = time_once(serial_value, 1, f);
    std::printf("%-28s serial %8.1f ms   parallel %8.1f ms   speedup %4.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                serial_value == parallel_value ? "bitwise equal" : "MISMATCH");
    (void)warm;
    return serial_value == parallel_value ? 0 : 1;
}

} // namespace

int main() {
    const double wp = 1.37492815132e16;   // 137 nm plasma wavelength
    const Mirror gold = Bulk{Plasma{wp}};

    // Sweeps rather than single points, so each workload is long enough to
    // time and exercises many independent outer nodes.
    QuadratureSpec tight;
    tight.rel_tol = 1e-10;
    int bad = compare("force sweep, rel 1e-10", [&] {
        double acc = 0.0;
        for (int i = 0; i < 48; ++i) {
            const double spacing = 100e-9 * std::pow(100.0, i / 47.0);
            acc += casimir_force_pp({gold, gold, spacing, 1e-4, 0.0}, tight).value * spacing;
        }
        return acc;
    });

    const QuadratureSpec spec;
    bad += compare("matsubara sweep, 300 K", [&] {
        double acc = 0.0;
        for (int i = 0; i < 48; ++i) {
            const double spacing = 300e-9 * std::pow(30.0, i / 47.0);
            const CavityConfig cavity{gold, gold, spacing, 1e-4, 300.0};
            acc += matsubara_force(cavity, {300.0, M0Prescription::half_weight_limit}, spec)
                       .value * spacing;
        }
        return acc;
    });

    if (bad) std::printf("parallel and serial paths disagree\n");
    return bad;
}
