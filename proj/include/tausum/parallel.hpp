#pragma once

// Deterministic reductions. Work is cut into fixed-size blocks chosen from
// the problem size alone; each block is reduced sequentially and the partials
// are combined in block order by a pairwise tree. Results are therefore
// bit-identical for every thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace tausum {

// Number of worker threads used by parallel reductions (default: all cores).
int thread_count();
void set_thread_count(int n);

namespace detail {

inline constexpr std::size_t kBlockSize = 1 << 14;
inline constexpr std::size_t kPairwiseBase = 32;

}  // namespace detail

// Pairwise (tree) sum of f(i) over [lo, hi). Fixed association order.
template <typename T, typename F>
T pairwise_sum(std::size_t lo, std::size_t hi, F&& f) {
    const std::size_t n = hi - lo;
    if (n <= detail::kPairwiseBase) {
        T s{};
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum<T>(lo, mid, f) + pairwise_sum<T>(mid, hi, f);
}

namespace detail {

template <typename T>
T pairwise_combine(const std::vector<T>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_combine(parts, lo, mid) + pairwise_combine(parts, mid, hi);
}

// Runs block_fn(b) for b in [0, blocks) on the current worker pool.
template <typename BlockFn>
void run_blocks(std::size_t blocks, BlockFn&& block_fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(thread_count()), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) block_fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks) return;
            block_fn(b);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

}  // namespace detail

// Deterministic threaded sum of f(i) over [0, n).
template <typename T, typename F>
T parallel_sum(std::size_t n, F&& f) {
    if (n == 0) return T{};
    const std::size_t blocks = (n + detail::kBlockSize - 1) / detail::kBlockSize;
    if (blocks == 1) return pairwise_sum<T>(0, n, f);
    std::vector<T> parts(blocks);
    detail::run_blocks(blocks, [&](std::size_t b) {
        const std::size_t lo = b * detail::kBlockSize;
        const std::size_t hi = std::min(n, lo + detail::kBlockSize);
        parts[b] = pairwise_sum<T>(lo, hi, f);
    });
    return detail::pairwise_combine(parts, 0, blocks);
}

// Deterministic threaded reduce with a user combine (for maxima, pairs, ...).
// block_fn(lo, hi) reduces one range; combine must be associative.
template <typename T, typename BlockFn, typename CombineFn>
T parallel_range_reduce(std::size_t n, T init, BlockFn&& block_fn, CombineFn&& combine) {
    if (n == 0) return init;
    const std::size_t blocks = (n + detail::kBlockSize - 1) / detail::kBlockSize;
    std::vector<T> parts(blocks, init);
    detail::run_blocks(blocks, [&](std::size_t b) {
        const std::size_t lo = b * detail::kBlockSize;
        const std::size_t hi = std::min(n, lo + detail::kBlockSize);
        parts[b] = block_fn(lo, hi);
    });
    T acc = init;
    for (const T& part : parts) acc = combine(acc, part);
    return acc;
}

}  // namespace tausum
