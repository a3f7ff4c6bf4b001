#include "casimir/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace casimir::par {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) {
    g_max_threads.store(n < 0 ? 0 : n);
}

int max_threads() {
    int n = g_max_threads.load();
#ifdef _OPENMP
    if (n == 0) n = omp_get_max_threads();
#else
    if (n == 0) n = 1;
#endif
    return n;
}

void map_indexed(std::size_t n, double* out, double (*f)(std::size_t, void*), void* ctx) {
#ifdef _OPENMP
    const int threads = max_threads();
    if (threads > 1 && n > 1 && !omp_in_parallel()) {
        // Static schedule plus per-index stores: the work split cannot
        // change any bit of the result, only who computes it.
        #pragma omp parallel for num_threads(threads) schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            out[i] = f(static_cast<std::size_t>(i), ctx);
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i)
        out[i] = f(i, ctx);
}

void for_indexed(std::size_t n, void (*f)(std::size_t, void*), void* ctx) {
#ifdef _OPENMP
    const int threads = max_threads();
    if (threads > 1 && n > 1 && !omp_in_parallel()) {
        #pragma omp parallel for num_threads(threads) schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            f(static_cast<std::size_t>(i), ctx);
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i)
        f(i, ctx);
}

} // namespace casimir::par
