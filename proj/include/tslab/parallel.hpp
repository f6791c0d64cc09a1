#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tslab {

/// Runs fn(chunk, begin, end) over fixed-size chunks of [0, count). Chunk
/// boundaries do not depend on the thread count, so per-chunk partial results
/// reduced in chunk order are bitwise reproducible.
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t chunk, Fn&& fn, unsigned threads = 0) {
    const std::size_t chunks = (count + chunk - 1) / chunk;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
    auto run = [&](unsigned t) {
        for (std::size_t c = t; c < chunks; c += threads) fn(c, c * chunk, std::min(count, (c + 1) * chunk));
    };
    if (threads <= 1) {
        run(0);
        return;
    }
    std::vector<std::exception_ptr> failures(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t)
            workers.emplace_back([&, t] {
                try {
                    run(t);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
}

inline std::size_t chunk_count(std::size_t count, std::size_t chunk) { return (count + chunk - 1) / chunk; }

}  // namespace tslab
