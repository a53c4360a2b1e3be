#pragma once

// Fixed-shape reductions. Every sum over 2^k terms is the balanced binary
// tree ((t0 + t1) + (t2 + t3)) + ..., which coincides with the preimage
// tree when terms are in lexicographic word order. Work is split across
// threads only at the top levels of that tree, so the floating-point result
// does not depend on the thread count.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qcircle::reduction {

/// ceil(log2(threads)), 0 for threads <= 1.
inline unsigned split_depth(unsigned threads) {
    unsigned d = 0;
    while ((1u << d) < threads) {
        ++d;
    }
    return d;
}

/// Calls task(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any task is rethrown on the calling thread.
template <class Task>
void run_tasks(std::size_t count, unsigned threads, Task&& task) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) {
                    task(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Sum of term(i) for i in [first, first + 2^log2_len), balanced pairwise.
template <class Term>
double pairwise_sum(std::uint64_t first, unsigned log2_len, const Term& term) {
    if (log2_len == 0) {
        return term(first);
    }
    if (log2_len == 1) {
        return term(first) + term(first + 1);
    }
    const std::uint64_t half = std::uint64_t{1} << (log2_len - 1);
    return pairwise_sum(first, log2_len - 1, term) + pairwise_sum(first + half, log2_len - 1, term);
}

/// Same value as pairwise_sum(0, log2_len, term), bit for bit, for any
/// thread count.
template <class Term>
double parallel_pairwise_sum(unsigned log2_len, unsigned threads, const Term& term) {
    const unsigned top = std::min(split_depth(threads), log2_len);
    if (top == 0) {
        return pairwise_sum(0, log2_len, term);
    }
    const std::size_t blocks = std::size_t{1} << top;
    const unsigned block_len = log2_len - top;
    std::vector<double> partial(blocks);
    run_tasks(blocks, threads, [&](std::size_t b) {
        partial[b] = pairwise_sum(static_cast<std::uint64_t>(b) << block_len, block_len, term);
    });
    return pairwise_sum(0, top, [&](std::uint64_t b) { return partial[b]; });
}

} // namespace qcircle::reduction
