// Deterministic fork-join helper for the exhaustive sweeps. Work items are
// indexed; each worker owns a contiguous slice and writes only its own slots,
// so results merge in index order and the output is identical for any worker
// count.
#pragma once

#include <exception>
#include <thread>
#include <vector>

namespace charsub {

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = count * w / workers;
        std::size_t end = count * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace charsub
