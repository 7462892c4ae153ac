#ifndef NEIGHBOR2VEC_PARALLEL_HPP
#define NEIGHBOR2VEC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace neighbor2vec {

/**
 * Splits [0, n) into `threads` contiguous chunks and calls
 * fn(worker, begin, end) for each, one std::thread per chunk. The first
 * exception thrown by any worker is rethrown on the calling thread.
 */
template <typename Function>
void parallel_chunks(std::size_t n, std::size_t threads, Function&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, std::max<std::size_t>(n, 1)));
    if (threads == 1) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return;
    }

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::size_t base = n / threads;
    const std::size_t extra = n % threads;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < threads; ++w) {
        const std::size_t end = begin + base + (w < extra ? 1 : 0);
        workers.emplace_back([&, w, begin, end]() {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& worker : workers) {
        worker.join();
    }
    for (auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

}

#endif
