#pragma once

#include <atomic>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

// Thread control for the data-parallel batch kernels (per-tree forest
// training, per-transaction explanation, dedup scans). Every kernel writes
// into pre-sized slots and draws from pre-derived seeds, so the serial path
// (threads() == 1) and the OpenMP path produce identical bytes. Tests compare
// the two; tools/bench times them.
namespace cfx::par {

namespace detail {
inline std::atomic<int> g_threads{0};  // 0 = library default
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// n <= 0 restores the default (all hardware threads when OpenMP is built in).
inline void set_threads(int n) { detail::g_threads.store(n > 0 ? n : 0); }

inline int threads() {
    int t = detail::g_threads.load();
    if (t > 0) return t;
    return hardware_threads();
}

/// Runs fn(i) for i in [0, n). Parallel when OpenMP is available and more
/// than one thread is requested; plain loop otherwise (the serial reference).
template <typename Fn>
void for_index(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
    const int t = threads();
    if (t > 1 && n > 1) {
        const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(t)
        for (long long i = 0; i < count; ++i) {
            fn(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) {
        fn(i);
    }
}

}  // namespace cfx::par
