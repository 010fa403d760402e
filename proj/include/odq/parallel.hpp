#pragma once

#include <cstddef>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace odq {

inline bool in_parallel_region() noexcept {
#if defined(_OPENMP)
    return omp_in_parallel() != 0;
#else
    return false;
#endif
}

inline int max_threads() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs `body(i)` for i in [0, n). With threads > 1 the iterations are
/// distributed over an OpenMP team; nested invocations fall back to the
/// serial loop. The first exception thrown by a body is rethrown after the
/// loop completes.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n < 2 || in_parallel_region()) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
#if defined(_OPENMP)
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(odq_parallel_for_error)
            {
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);
#else
    for (std::size_t i = 0; i < n; ++i)
        body(i);
#endif
}

} // namespace odq
