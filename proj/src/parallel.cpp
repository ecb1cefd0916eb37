#include "tausum/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace tausum {

namespace {

std::atomic<int>& thread_slot() {
    static std::atomic<int> n{0};  // 0 means "not set yet"
    return n;
}

}  // namespace

int thread_count() {
    int n = thread_slot().load(std::memory_order_relaxed);
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) {
    thread_slot().store(std::max(0, n), std::memory_order_relaxed);
}

}  // namespace tausum
