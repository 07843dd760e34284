#include "rotor/parallel.hpp"

#include <atomic>

namespace rotor {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_threads(unsigned n) { g_threads.store(n == 0 ? 1 : n); }

unsigned threads() { return g_threads.load(); }

}  // namespace rotor
