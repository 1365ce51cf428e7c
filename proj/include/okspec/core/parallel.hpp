#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace okspec {

// Execution policy for the compute kernels. Every kernel has a serial
// reference and an OpenMP variant that produces identical results; the
// parallel variants only distribute independent output elements, never a
// single floating-point reduction, so thread count cannot change the bits.
enum class Exec { serial, parallel };

inline int max_threads() {
    if (const char* env = std::getenv("OKSPEC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline Exec default_exec() {
#ifdef _OPENMP
    return max_threads() > 1 ? Exec::parallel : Exec::serial;
#else
    return Exec::serial;
#endif
}

}  // namespace okspec
