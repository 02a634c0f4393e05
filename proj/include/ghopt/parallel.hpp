#ifndef GHOPT_PARALLEL_HPP
#define GHOPT_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <limits>

namespace ghopt
{

// Serial is the reference semantics; parallel variants must produce identical
// results (per-index work is independent and aggregated in index order).
enum class Execution
{
    serial,
    parallel,
};

// Calls fn(i) for i in [0, n). Under Execution::parallel the iterations are
// spread over OpenMP threads; if any call throws, the exception from the
// lowest index is rethrown, matching what the serial loop would raise.
template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn &&fn)
{
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }

    std::exception_ptr first_error;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(ghopt_for_each_index)
            {
                if (static_cast<std::size_t>(i) < first_index) {
                    first_index = static_cast<std::size_t>(i);
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace ghopt

#endif
