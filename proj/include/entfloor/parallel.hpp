// parallel.hpp — execution policy for the data-parallel kernels.
//
// Every kernel that loops over independent work items (Monte-Carlo samples,
// grid points, solver restarts) takes an Exec policy. Exec::Serial is the
// reference path; Exec::Parallel runs the same per-index computation under
// OpenMP. Results are written by index, so both paths are bit-identical.
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entfloor {

enum class Exec { Serial, Parallel };

template <typename Fn>
void parallel_for(std::ptrdiff_t n, Exec exec, Fn&& fn) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
        return;
    }
#else
    (void)exec;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

}  // namespace entfloor
