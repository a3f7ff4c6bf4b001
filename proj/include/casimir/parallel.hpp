#pragma once

#include <cstddef>

namespace casimir::par {

// 0 = use the OpenMP default; 1 = force the serial reference path.
void set_max_threads(int n);
int max_threads();

// Evaluates f(i) for i in [0, n) into out[i].  The reduction over out[]
// stays with the caller and must run in index order: that is what makes
// results bit-identical no matter how many threads execute the map.
void map_indexed(std::size_t n, double* out, double (*f)(std::size_t, void*), void* ctx);

template <class F>
void map_indexed(std::size_t n, double* out, F&& f) {
    auto thunk = [](std::size_t i, void* ctx) -> double {
        return (*static_cast<F*>(ctx))(i);
    };
    map_indexed(n, out, +thunk, static_cast<void*>(&f));
}

// Side-effect variant: f(i) must write only to slot i of caller storage.
void for_indexed(std::size_t n, void (*f)(std::size_t, void*), void* ctx);

template <class F>
void for_indexed(std::size_t n, F&& f) {
    auto thunk = [](std::size_t i, void* ctx) {
        (*static_cast<F*>(ctx))(i);
    };
    for_indexed(n, +thunk, static_cast<void*>(&f));
}

} // namespace casimir::par
