#include "lamplight/util/parallel.hpp"

#include <atomic>

namespace lamplight {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned threads) noexcept {
    g_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
}

unsigned thread_count() noexcept { return g_threads; }

}  // namespace lamplight
