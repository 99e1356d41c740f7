#pragma once

// Runs body(i) for i in [0, n) on OpenMP threads (serially without OpenMP).
// The first exception thrown by any iteration is rethrown after the loop.

#include <cstddef>
#include <exception>
#include <mutex>

namespace yamabe::detail {

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr error;
    std::mutex guard;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace yamabe::detail
