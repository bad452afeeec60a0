#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tetra {

/// Worker cap from TETRA_BIFURC_THREADS, else the hardware concurrency.
inline unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TETRA_BIFURC_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(std::min<long>(v, 256));
        } catch (...) {
            // ignore malformed values
        }
    }
    return hw;
}

/// Runs body(task, worker) for task in [0, n), tasks striped over workers.
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t t = 0; t < n; ++t)
            body(t, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t t = w; t < n; t += workers)
                body(t, w);
        });
    for (auto& th : pool)
        th.join();
}

} // namespace tetra
