#pragma once

#include <cstddef>

namespace fpqa {

// Execution policy for the data-parallel kernels. Exec::serial is the
// reference path kept for testing and benchmarking; Exec::parallel runs the
// same per-item body under OpenMP. Kernels write into per-item slots and
// merge serially in index order, so both paths produce identical output.
enum class Exec { serial, parallel };

template <typename Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
    }
}

}  // namespace fpqa
