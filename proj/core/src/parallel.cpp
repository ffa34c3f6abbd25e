#include "seqlimit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace seqlimit {

namespace {
std::atomic<unsigned> g_default_threads{0};
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (unsigned d = g_default_threads.load(); d > 0) return d;
    if (const char* env = std::getenv("SEQLIMIT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
            // fall through to hardware concurrency
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void set_default_threads(unsigned threads) { g_default_threads.store(threads); }

unsigned default_threads() { return resolve_threads(0); }

}  // namespace seqlimit
