#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace z2lat {

/// Splits [0, n) into at most `threads` contiguous chunks and runs
/// fn(begin, end, chunk_index) on each. Callers must make their merge
/// independent of the chunk boundaries (canonical sort, sum, or a total
/// order reduction), so results do not depend on the thread count.
template <class Fn>
void for_chunks(std::size_t n, int threads, Fn&& fn) {
    std::size_t want = threads < 1 ? 1 : static_cast<std::size_t>(threads);
    if (want > n) want = n ? n : 1;
    if (want <= 1) {
        fn(static_cast<std::size_t>(0), n, static_cast<std::size_t>(0));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(want);
    std::exception_ptr first_error;
    std::mutex err_mu;
    const std::size_t base = n / want, extra = n % want;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < want; ++c) {
        std::size_t len = base + (c < extra ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&, begin, end, c] {
            try {
                fn(begin, end, c);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::size_t chunk_count(std::size_t n, int threads) {
    std::size_t want = threads < 1 ? 1 : static_cast<std::size_t>(threads);
    if (want > n) want = n ? n : 1;
    return want ? want : 1;
}

} // namespace z2lat
