// Deterministic fork-join helper. Work is split into contiguous index chunks,
// one per worker; each chunk writes only to its own output slots, and callers
// combine chunk results in chunk order. Outputs therefore never depend on the
// worker count or on scheduling.
#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ggt {

/// Calls fn(begin, end, chunk_index) for a partition of [0, n) into at most
/// `workers` contiguous chunks. workers <= 1 runs inline.
template <typename Fn>
void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
    if (n == 0) return;
    std::size_t w = workers <= 1 ? 1 : static_cast<std::size_t>(workers);
    if (w > n) w = n;
    if (w == 1) {
        fn(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    threads.reserve(w);
    for (std::size_t c = 0; c < w; ++c) {
        std::size_t begin = n * c / w;
        std::size_t end = n * (c + 1) / w;
        threads.emplace_back([&, begin, end, c] {
            try {
                fn(begin, end, c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Element-wise variant: fn(i) for i in [0, n), sharded as above.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    parallel_chunks(n, workers, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i) fn(i);
    });
}

}  // namespace ggt
